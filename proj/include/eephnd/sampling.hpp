#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eephnd/distributions.hpp"
#include "eephnd/numerics.hpp"

namespace eephnd {

enum class Component : std::uint8_t { Eep, HalfNormal };

struct SeedMetadata {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
    std::string algorithm = RngStream::algorithm;
};

struct SampleBatch {
    std::vector<double> values;
    std::optional<std::vector<Component>> component_labels;
    SeedMetadata seed_metadata;
};

// Inverse-transform draw from the EEP component:
//   X = beta * (-(1/lambda) * log(1 - V^(1/alpha)))^(1/theta)
double eep_inverse_transform(double v, const EepParams& p);

SampleBatch sample_eep(std::size_t n, const EepParams& p, RngStream& stream);

// |sigma * Z| with Z standard normal.
SampleBatch sample_half_normal(std::size_t n, const HalfNormalParams& p,
                               RngStream& stream);

// Mixture draw: one selection uniform per draw (skipped entirely for the
// degenerate weights p1 = 0 and p1 = 1), then the component sampler.
SampleBatch sample_eephnd(std::size_t n, const EephndParams& p, RngStream& stream,
                          bool record_labels = false);

}  // namespace eephnd
