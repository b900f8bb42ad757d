#include "eephnd/sampling.hpp"

#include <cmath>

namespace eephnd {

namespace {

SeedMetadata meta_of(const RngStream& s) {
    return {s.seed(), s.stream_id(), RngStream::algorithm};
}

double draw_eep(const EepParams& p, RngStream& stream) {
    return eep_inverse_transform(stream.uniform01(), p);
}

double draw_half_normal(const HalfNormalParams& p, RngStream& stream) {
    return std::fabs(p.sigma * stream.standard_normal());
}

}  // namespace

double eep_inverse_transform(double v, const EepParams& p) {
    if (!(v > 0.0 && v < 1.0)) {
        throw std::domain_error("eep_inverse_transform: v must lie in (0, 1)");
    }
    // log(1 - v^(1/alpha)) computed through log1p(-exp(log(v)/alpha))
    double t = std::log1p(-std::exp(std::log(v) / p.alpha));
    return p.beta * std::pow(-t / p.lambda, 1.0 / p.theta);
}

SampleBatch sample_eep(std::size_t n, const EepParams& p, RngStream& stream) {
    if (n < 1) throw std::domain_error("sample_eep: n must be >= 1");
    p.validate();
    SampleBatch batch;
    batch.seed_metadata = meta_of(stream);
    batch.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        batch.values.push_back(draw_eep(p, stream));
    }
    return batch;
}

SampleBatch sample_half_normal(std::size_t n, const HalfNormalParams& p,
                               RngStream& stream) {
    if (n < 1) throw std::domain_error("sample_half_normal: n must be >= 1");
    p.validate();
    SampleBatch batch;
    batch.seed_metadata = meta_of(stream);
    batch.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        batch.values.push_back(draw_half_normal(p, stream));
    }
    return batch;
}

SampleBatch sample_eephnd(std::size_t n, const EephndParams& p, RngStream& stream,
                          bool record_labels) {
    if (n < 1) throw std::domain_error("sample_eephnd: n must be >= 1");
    p.validate();
    SampleBatch batch;
    batch.seed_metadata = meta_of(stream);
    batch.values.reserve(n);
    if (record_labels) batch.component_labels.emplace();
    for (std::size_t i = 0; i < n; ++i) {
        Component which;
        if (p.p1 >= 1.0) {
            which = Component::Eep;
        } else if (p.p1 <= 0.0) {
            which = Component::HalfNormal;
        } else {
            which = (stream.uniform01() < p.p1) ? Component::Eep
                                                : Component::HalfNormal;
        }
        double x = (which == Component::Eep) ? draw_eep(p.eep(), stream)
                                             : draw_half_normal(p.half_normal(), stream);
        batch.values.push_back(x);
        if (record_labels) batch.component_labels->push_back(which);
    }
    return batch;
}

}  // namespace eephnd
