#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eephnd/distributions.hpp"
#include "eephnd/sampling.hpp"

namespace eephnd {

enum class ModelTag { Eephnd, Eep, HalfNormal, LogNormal, GammaRayleigh };

std::string model_name(ModelTag tag);
ModelTag model_from_name(const std::string& name);
int model_param_count(ModelTag tag);
std::vector<std::string> model_param_names(ModelTag tag);

// Natural-scale parameter vector, layout matching model_param_names.
double log_likelihood(std::span<const double> data, ModelTag tag,
                      std::span<const double> params);

// Pointwise density/CDF dispatch used by the likelihood and the CLI.
double model_pdf(double x, ModelTag tag, std::span<const double> params);
double model_cdf(double x, ModelTag tag, std::span<const double> params);

struct FitConfig {
    int restarts = 8;
    int max_iters = 2000;
    double tol = 1e-10;
    std::uint64_t seed = 0;
    // extra starting points (natural scale), tried before the built-in grid
    std::vector<std::vector<double>> extra_starts;
};

struct FitResult {
    ModelTag model_tag = ModelTag::Eephnd;
    std::vector<double> params;
    double loglik = 0.0;
    int k = 0;
    int n = 0;
    bool converged = false;
    int iterations = 0;
    int restarts_used = 0;
};

// Maximizes the log-likelihood over an unconstrained reparameterization
// (log for positive parameters, logit for the mixture weight) with a
// Nelder-Mead simplex and multistart.  Among the restarts, any converged
// run is preferred over any unconverged one (unconverged runs may sit on
// an unbounded likelihood ridge); ties are broken by log-likelihood.
FitResult fit_mle(std::span<const double> data, ModelTag tag,
                  const FitConfig& config = {});

struct BootstrapCI {
    std::vector<double> lower;
    std::vector<double> upper;
    double level = 0.95;
    int B = 0;
    int failed = 0;
    SeedMetadata seed_metadata;
    std::vector<bool> degenerate;  // lower == upper
};

// Nonparametric percentile bootstrap; resample b draws its indices from
// stream_id = b so the plan is identical for any thread count.
BootstrapCI bootstrap_ci(std::span<const double> data, ModelTag tag, int B,
                         double level, std::uint64_t seed,
                         const FitConfig& refit_config = {.restarts = 2},
                         int threads = 1);

struct InfoCriteria {
    double aic;
    double bic;
    double caic_bozdogan;
    double aicc;
};

InfoCriteria information_criteria(const FitResult& fit);

}  // namespace eephnd
