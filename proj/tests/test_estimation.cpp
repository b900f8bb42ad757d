#include <doctest.h>

#include <cmath>
#include <vector>

#include "eephnd/estimation.hpp"
#include "eephnd/numerics.hpp"
#include "eephnd/sampling.hpp"
#include "oracles.hpp"

using namespace eephnd;

namespace {

std::vector<double> exp_sample(std::size_t n, std::uint64_t seed) {
    RngStream s(seed, 0);
    std::vector<double> out(n);
    for (auto& x : out) x = -std::log(s.uniform01());
    return out;
}

std::vector<double> hn_sample(std::size_t n, double sigma, std::uint64_t seed) {
    RngStream s(seed, 0);
    std::vector<double> out(n);
    for (auto& x : out) x = std::fabs(sigma * s.standard_normal());
    return out;
}

}  // namespace

TEST_CASE("model names, parameter counts, round trips") {
    for (ModelTag t : {ModelTag::Eephnd, ModelTag::Eep, ModelTag::HalfNormal,
                       ModelTag::LogNormal, ModelTag::GammaRayleigh}) {
        CHECK(model_from_name(model_name(t)) == t);
        CHECK(static_cast<int>(model_param_names(t).size()) == model_param_count(t));
    }
    CHECK(model_param_count(ModelTag::Eephnd) == 6);
    CHECK(model_param_count(ModelTag::Eep) == 4);
    CHECK(model_param_count(ModelTag::HalfNormal) == 1);
    CHECK(model_param_count(ModelTag::LogNormal) == 2);
    CHECK(model_param_count(ModelTag::GammaRayleigh) == 2);
    CHECK_THROWS_AS(model_from_name("weibull"), std::invalid_argument);
}

TEST_CASE("log_likelihood: literal sum of log densities") {
    std::vector<double> data{0.5, 1.2, 2.0};
    std::vector<double> params{1.5, 2.0, 2.5, 1.2};
    double expected = 0.0;
    for (double x : data) expected += eep_log_pdf(x, {1.5, 2.0, 2.5, 1.2});
    CHECK(log_likelihood(data, ModelTag::Eep, params) ==
          doctest::Approx(expected).epsilon(1e-14));

    std::vector<double> bad{0.5, -1.0};
    CHECK_THROWS_AS(log_likelihood(bad, ModelTag::Eep, params), std::domain_error);
}

TEST_CASE("fit_mle: half-normal matches its analytic MLE") {
    auto data = hn_sample(400, 1.4, 17);
    FitResult fr = fit_mle(data, ModelTag::HalfNormal);
    CHECK(fr.converged);
    CHECK(fr.k == 1);
    CHECK(fr.n == 400);
    double sumsq = 0.0;
    for (double x : data) sumsq += x * x;
    double sigma_hat = std::sqrt(sumsq / data.size());
    CHECK(fr.params[0] == doctest::Approx(sigma_hat).epsilon(1e-5));
    CHECK(log_likelihood(data, ModelTag::HalfNormal, fr.params) ==
          doctest::Approx(fr.loglik).epsilon(1e-12));
}

TEST_CASE("fit_mle: log-normal matches its analytic MLE") {
    RngStream s(5, 0);
    std::vector<double> data(300);
    for (auto& x : data) x = std::exp(0.7 + 0.5 * s.standard_normal());
    FitResult fr = fit_mle(data, ModelTag::LogNormal);
    CHECK(fr.converged);
    double lsum = 0.0, lsumsq = 0.0;
    for (double x : data) {
        double l = std::log(x);
        lsum += l;
        lsumsq += l * l;
    }
    double mu = lsum / data.size();
    double sd = std::sqrt(lsumsq / data.size() - mu * mu);
    CHECK(fr.params[0] == doctest::Approx(mu).epsilon(1e-4));
    CHECK(fr.params[1] == doctest::Approx(sd).epsilon(1e-4));
}

TEST_CASE("fit_mle: likelihood at the optimum dominates the truth") {
    auto data = exp_sample(400, 99);
    std::vector<double> truth{1.0, 1.0, 1.0, 1.0};
    FitResult fr = fit_mle(data, ModelTag::Eep);
    CHECK(fr.converged);
    CHECK(fr.loglik >= log_likelihood(data, ModelTag::Eep, truth) - 1e-6);
    CHECK(fr.restarts_used >= 1);
}

TEST_CASE("fit_mle: mixture fit beats the generating parameters' likelihood") {
    EephndParams truth{1.2, 1.9, 2.4, 1.3, 0.32, 0.9};
    RngStream stream(2025, 0);
    SampleBatch batch = sample_eephnd(600, truth, stream);
    FitResult fr = fit_mle(batch.values, ModelTag::Eephnd);
    CHECK(fr.converged);
    std::vector<double> tv{truth.alpha, truth.beta, truth.theta,
                           truth.lambda, truth.sigma, truth.p1};
    CHECK(fr.loglik >= log_likelihood(batch.values, ModelTag::Eephnd, tv) - 1e-6);
    CHECK(fr.params[5] >= 0.0);
    CHECK(fr.params[5] <= 1.0);
}

TEST_CASE("fit_mle: determinism for a fixed configuration") {
    auto data = exp_sample(200, 4);
    FitResult a = fit_mle(data, ModelTag::Eep, {.seed = 1});
    FitResult b = fit_mle(data, ModelTag::Eep, {.seed = 1});
    CHECK(a.loglik == b.loglik);
    for (int j = 0; j < a.k; ++j) CHECK(a.params[j] == b.params[j]);
}

TEST_CASE("fit_mle: input validation") {
    std::vector<double> tiny{1.0, 2.0};
    CHECK_THROWS_AS(fit_mle(tiny, ModelTag::Eep), std::invalid_argument);
    std::vector<double> flat(50, 3.0);
    CHECK_THROWS_AS(fit_mle(flat, ModelTag::HalfNormal), std::invalid_argument);
    std::vector<double> neg{1.0, 2.0, -0.5, 1.5, 0.7};
    CHECK_THROWS_AS(fit_mle(neg, ModelTag::HalfNormal), std::domain_error);
}

TEST_CASE("information_criteria: algebraic identities") {
    FitResult fr;
    fr.loglik = -100.0;
    fr.k = 4;
    fr.n = 228;
    fr.converged = true;
    InfoCriteria ic = information_criteria(fr);
    CHECK(ic.aic == doctest::Approx(2.0 * 4 + 200.0).epsilon(1e-15));
    CHECK(ic.bic - ic.aic ==
          doctest::Approx(4.0 * (std::log(228.0) - 2.0)).epsilon(1e-13));
    CHECK(ic.caic_bozdogan == doctest::Approx(ic.bic + 4.0).epsilon(1e-13));
    CHECK(ic.aicc == doctest::Approx(ic.aic + 2.0 * 4 * 5 / (228.0 - 5.0)).epsilon(1e-13));

    fr.converged = false;
    CHECK_THROWS_AS(information_criteria(fr), std::invalid_argument);
    fr.converged = true;
    fr.n = 5;
    CHECK_THROWS_AS(information_criteria(fr), std::invalid_argument);
}

TEST_CASE("bootstrap_ci: deterministic, thread-count independent, sane") {
    auto data = hn_sample(80, 1.2, 7);
    BootstrapCI one = bootstrap_ci(data, ModelTag::HalfNormal, 100, 0.95, 42,
                                   {.restarts = 2}, 1);
    BootstrapCI four = bootstrap_ci(data, ModelTag::HalfNormal, 100, 0.95, 42,
                                    {.restarts = 2}, 4);
    REQUIRE(one.lower.size() == 1);
    CHECK(one.lower[0] == four.lower[0]);
    CHECK(one.upper[0] == four.upper[0]);
    CHECK(one.failed == four.failed);

    FitResult point = fit_mle(data, ModelTag::HalfNormal);
    CHECK(one.lower[0] < point.params[0]);
    CHECK(one.upper[0] > point.params[0]);
    CHECK(one.lower[0] < one.upper[0]);
    CHECK_FALSE(one.degenerate[0]);
    CHECK(one.B == 100);
    CHECK(one.level == 0.95);
    CHECK(one.seed_metadata.seed == 42);
    CHECK(one.seed_metadata.algorithm == std::string(RngStream::algorithm));
}

TEST_CASE("bootstrap_ci: narrower interval at lower confidence") {
    auto data = hn_sample(80, 1.2, 7);
    BootstrapCI wide = bootstrap_ci(data, ModelTag::HalfNormal, 100, 0.95, 3);
    BootstrapCI narrow = bootstrap_ci(data, ModelTag::HalfNormal, 100, 0.5, 3);
    CHECK(narrow.upper[0] - narrow.lower[0] < wide.upper[0] - wide.lower[0]);
}

TEST_CASE("bootstrap_ci: argument validation") {
    auto data = hn_sample(50, 1.0, 1);
    CHECK_THROWS_AS(bootstrap_ci(data, ModelTag::HalfNormal, 50, 0.95, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(bootstrap_ci(data, ModelTag::HalfNormal, 100, 1.5, 1),
                    std::invalid_argument);
}

TEST_CASE("model_pdf / model_cdf dispatch agrees with the direct functions") {
    std::vector<double> p{1.5, 2.0, 2.5, 1.2};
    CHECK(model_pdf(0.9, ModelTag::Eep, p) == eep_pdf(0.9, {1.5, 2.0, 2.5, 1.2}));
    CHECK(model_cdf(0.9, ModelTag::Eep, p) == eep_cdf(0.9, {1.5, 2.0, 2.5, 1.2}));
    std::vector<double> ln{0.0, 1.0};
    CHECK(model_cdf(1.0, ModelTag::LogNormal, ln) == doctest::Approx(0.5).epsilon(1e-14));
}
