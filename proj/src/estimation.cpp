#include "eephnd/estimation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "eephnd/numerics.hpp"

namespace eephnd {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

enum class Transform { Log, Identity, Logit };

std::vector<Transform> model_transforms(ModelTag tag) {
    switch (tag) {
        case ModelTag::Eephnd:
            return {Transform::Log, Transform::Log, Transform::Log,
                    Transform::Log, Transform::Log, Transform::Logit};
        case ModelTag::Eep:
            return {Transform::Log, Transform::Log, Transform::Log, Transform::Log};
        case ModelTag::HalfNormal:
            return {Transform::Log};
        case ModelTag::LogNormal:
            return {Transform::Identity, Transform::Log};
        case ModelTag::GammaRayleigh:
            return {Transform::Log, Transform::Log};
    }
    throw std::logic_error("unknown model tag");
}

double to_unconstrained(double v, Transform t) {
    switch (t) {
        case Transform::Log: return std::log(v);
        case Transform::Identity: return v;
        case Transform::Logit: {
            double c = std::clamp(v, 1e-12, 1.0 - 1e-12);
            return std::log(c / (1.0 - c));
        }
    }
    return v;
}

double to_natural(double v, Transform t) {
    switch (t) {
        case Transform::Log: return std::exp(v);
        case Transform::Identity: return v;
        case Transform::Logit: return 1.0 / (1.0 + std::exp(-v));
    }
    return v;
}

std::vector<double> natural_of(const std::vector<double>& u,
                               const std::vector<Transform>& tr) {
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = to_natural(u[i], tr[i]);
    return out;
}

std::vector<double> unconstrained_of(const std::vector<double>& nat,
                                     const std::vector<Transform>& tr) {
    std::vector<double> out(nat.size());
    for (std::size_t i = 0; i < nat.size(); ++i) out[i] = to_unconstrained(nat[i], tr[i]);
    return out;
}

double model_log_pdf(double x, ModelTag tag, std::span<const double> p) {
    switch (tag) {
        case ModelTag::Eephnd:
            return eephnd_log_pdf(x, {p[0], p[1], p[2], p[3], p[4], p[5]});
        case ModelTag::Eep:
            return eep_log_pdf(x, {p[0], p[1], p[2], p[3]});
        case ModelTag::HalfNormal:
            return hn_log_pdf(x, {p[0]});
        case ModelTag::LogNormal:
            return log_normal_log_pdf(x, {p[0], p[1]});
        case ModelTag::GammaRayleigh:
            return gamma_rayleigh_log_pdf(x, {p[0], p[1]});
    }
    throw std::logic_error("unknown model tag");
}

struct NelderMeadOutcome {
    std::vector<double> x;
    double f;
    int iterations;
    bool converged;
};

// Minimizes fn; standard simplex moves (reflect 1, expand 2, contract
// 0.5, shrink 0.5).
NelderMeadOutcome nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                              std::vector<double> x0, int max_iters, double tol) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += (simplex[i + 1][i] != 0.0) ? 0.1 * std::fabs(simplex[i + 1][i]) + 0.05
                                                        : 0.1;
    }
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = fn(simplex[i]);

    int iters = 0;
    bool converged = false;
    std::vector<std::size_t> order(n + 1);
    while (iters < max_iters) {
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        double fbest = fv[order[0]], fworst = fv[order[n]];
        if (std::fabs(fworst - fbest) <=
            tol * (std::fabs(fbest) + std::fabs(fworst) + 1e-30)) {
            converged = true;
            break;
        }
        ++iters;
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[order[i]][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double coef) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j) {
                p[j] = centroid[j] + coef * (simplex[order[n]][j] - centroid[j]);
            }
            return p;
        };
        std::vector<double> xr = blend(-1.0);
        double fr = fn(xr);
        if (fr < fv[order[0]]) {
            std::vector<double> xe = blend(-2.0);
            double fe = fn(xe);
            if (fe < fr) {
                simplex[order[n]] = std::move(xe);
                fv[order[n]] = fe;
            } else {
                simplex[order[n]] = std::move(xr);
                fv[order[n]] = fr;
            }
        } else if (fr < fv[order[n - 1]]) {
            simplex[order[n]] = std::move(xr);
            fv[order[n]] = fr;
        } else {
            std::vector<double> xc = blend(fr < fv[order[n]] ? -0.5 : 0.5);
            double fc = fn(xc);
            if (fc < std::min(fr, fv[order[n]])) {
                simplex[order[n]] = std::move(xc);
                fv[order[n]] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        simplex[order[i]][j] =
                            simplex[order[0]][j] +
                            0.5 * (simplex[order[i]][j] - simplex[order[0]][j]);
                    }
                    fv[order[i]] = fn(simplex[order[i]]);
                }
            }
        }
    }
    std::size_t best = static_cast<std::size_t>(
        std::min_element(fv.begin(), fv.end()) - fv.begin());
    return {simplex[best], fv[best], iters, converged};
}

// Moment-informed starting points on the natural scale.
std::vector<std::vector<double>> default_starts(std::span<const double> data,
                                                ModelTag tag, int count) {
    double sum = 0.0, sumsq = 0.0;
    for (double x : data) {
        sum += x;
        sumsq += x * x;
    }
    double n = static_cast<double>(data.size());
    double m = sum / n;
    double sd = std::sqrt(std::max(sumsq / n - m * m, 1e-12));
    double rms = std::sqrt(sumsq / n);

    std::vector<std::vector<double>> starts;
    switch (tag) {
        case ModelTag::Eephnd: {
            static const double shape[][4] = {
                // alpha, theta, lambda, p1
                {1.0, 1.0, 1.0, 0.5}, {2.0, 2.0, 1.0, 0.9}, {0.5, 1.0, 2.0, 0.5},
                {1.0, 2.0, 1.0, 0.1}, {2.0, 0.5, 0.5, 0.5}, {0.5, 2.0, 2.0, 0.9},
                {1.0, 0.5, 1.0, 0.9}, {2.0, 1.0, 2.0, 0.1}, {0.5, 0.5, 0.5, 0.1},
                {2.0, 2.0, 2.0, 0.5}, {1.0, 1.0, 0.5, 0.9}, {0.5, 1.0, 1.0, 0.1}};
            for (auto& s : shape) {
                starts.push_back({s[0], m, s[1], s[2], rms, s[3]});
            }
            break;
        }
        case ModelTag::Eep: {
            static const double shape[][3] = {
                {1.0, 1.0, 1.0}, {2.0, 2.0, 1.0}, {0.5, 1.0, 2.0}, {1.0, 2.0, 1.0},
                {2.0, 0.5, 0.5}, {0.5, 2.0, 2.0}, {1.0, 0.5, 1.0}, {2.0, 1.0, 2.0},
                {0.5, 0.5, 0.5}, {2.0, 2.0, 2.0}, {1.0, 1.0, 0.5}, {0.5, 1.0, 1.0}};
            for (auto& s : shape) starts.push_back({s[0], m, s[1], s[2]});
            break;
        }
        case ModelTag::HalfNormal:
            starts.push_back({rms});
            starts.push_back({sd});
            starts.push_back({m});
            break;
        case ModelTag::LogNormal: {
            double lsum = 0.0, lsumsq = 0.0;
            for (double x : data) {
                double l = std::log(x);
                lsum += l;
                lsumsq += l * l;
            }
            double lm = lsum / n;
            double lsd = std::sqrt(std::max(lsumsq / n - lm * lm, 1e-6));
            starts.push_back({lm, lsd});
            starts.push_back({lm, 2.0 * lsd});
            starts.push_back({0.0, 1.0});
            break;
        }
        case ModelTag::GammaRayleigh:
            starts.push_back({1.0, rms / M_SQRT2});
            starts.push_back({2.0, rms / 2.0});
            starts.push_back({0.5, rms});
            starts.push_back({4.0, rms / 3.0});
            break;
    }
    if (count > 0 && static_cast<int>(starts.size()) > count) starts.resize(count);
    return starts;
}

}  // namespace

std::string model_name(ModelTag tag) {
    switch (tag) {
        case ModelTag::Eephnd: return "eephnd";
        case ModelTag::Eep: return "eep";
        case ModelTag::HalfNormal: return "half_normal";
        case ModelTag::LogNormal: return "log_normal";
        case ModelTag::GammaRayleigh: return "gamma_rayleigh";
    }
    throw std::logic_error("unknown model tag");
}

ModelTag model_from_name(const std::string& name) {
    if (name == "eephnd") return ModelTag::Eephnd;
    if (name == "eep") return ModelTag::Eep;
    if (name == "half_normal" || name == "hn") return ModelTag::HalfNormal;
    if (name == "log_normal" || name == "lognormal") return ModelTag::LogNormal;
    if (name == "gamma_rayleigh" || name == "gr") return ModelTag::GammaRayleigh;
    throw std::invalid_argument("unknown model name: " + name);
}

int model_param_count(ModelTag tag) {
    return static_cast<int>(model_transforms(tag).size());
}

std::vector<std::string> model_param_names(ModelTag tag) {
    switch (tag) {
        case ModelTag::Eephnd:
            return {"alpha", "beta", "theta", "lambda", "sigma", "p1"};
        case ModelTag::Eep:
            return {"alpha", "beta", "theta", "lambda"};
        case ModelTag::HalfNormal:
            return {"sigma"};
        case ModelTag::LogNormal:
            return {"mu", "s"};
        case ModelTag::GammaRayleigh:
            return {"a", "s"};
    }
    throw std::logic_error("unknown model tag");
}

double model_pdf(double x, ModelTag tag, std::span<const double> params) {
    double lp = model_log_pdf(x, tag, params);
    return std::isfinite(lp) ? std::exp(lp) : 0.0;
}

double model_cdf(double x, ModelTag tag, std::span<const double> p) {
    switch (tag) {
        case ModelTag::Eephnd:
            return eephnd_cdf(x, {p[0], p[1], p[2], p[3], p[4], p[5]});
        case ModelTag::Eep:
            return eep_cdf(x, {p[0], p[1], p[2], p[3]});
        case ModelTag::HalfNormal:
            return hn_cdf(x, {p[0]});
        case ModelTag::LogNormal:
            return log_normal_cdf(x, {p[0], p[1]});
        case ModelTag::GammaRayleigh:
            return gamma_rayleigh_cdf(x, {p[0], p[1]});
    }
    throw std::logic_error("unknown model tag");
}

double log_likelihood(std::span<const double> data, ModelTag tag,
                      std::span<const double> params) {
    for (double x : data) {
        if (!(x > 0.0)) throw std::domain_error("log_likelihood: data must be positive");
    }
    double ll = 0.0;
    for (double x : data) {
        double lp = model_log_pdf(x, tag, params);
        if (!std::isfinite(lp)) return kNegInf;
        ll += lp;
    }
    return ll;
}

FitResult fit_mle(std::span<const double> data, ModelTag tag,
                  const FitConfig& config) {
    const auto tr = model_transforms(tag);
    const int k = static_cast<int>(tr.size());
    if (static_cast<int>(data.size()) < k + 1) {
        throw std::invalid_argument("fit_mle: need at least k + 1 observations");
    }
    double first = data[0];
    bool all_same = std::all_of(data.begin(), data.end(),
                                [&](double x) { return x == first; });
    if (all_same) {
        throw std::invalid_argument("fit_mle: degenerate data, all observations equal");
    }
    for (double x : data) {
        if (!(x > 0.0)) throw std::domain_error("fit_mle: data must be positive");
    }

    auto objective = [&](const std::vector<double>& u) {
        std::vector<double> nat(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            nat[i] = to_natural(u[i], tr[i]);
            if (!std::isfinite(nat[i]) || (tr[i] == Transform::Log && nat[i] <= 0.0)) {
                return 1e300;
            }
        }
        double ll = log_likelihood(data, tag, nat);
        return std::isfinite(ll) ? -ll : 1e300;
    };

    std::vector<std::vector<double>> starts = config.extra_starts;
    auto grid = default_starts(data, tag,
                               config.restarts - static_cast<int>(starts.size()));
    starts.insert(starts.end(), grid.begin(), grid.end());
    if (config.restarts > 0 && static_cast<int>(starts.size()) > config.restarts) {
        starts.resize(config.restarts);
    }

    FitResult best;
    best.model_tag = tag;
    best.k = k;
    best.n = static_cast<int>(data.size());
    best.loglik = kNegInf;
    int used = 0;
    // A restart that converged beats any that did not, regardless of
    // likelihood: unconverged runs can report a higher value while still
    // drifting along an unbounded ridge, and that value is not a maximum.
    for (const auto& s : starts) {
        ++used;
        auto out = nelder_mead(objective, unconstrained_of(s, tr),
                               config.max_iters, config.tol);
        bool better = out.converged == best.converged ? -out.f > best.loglik
                                                      : out.converged;
        if (better) {
            best.params = natural_of(out.x, tr);
            best.loglik = -out.f;
            best.converged = out.converged;
            best.iterations = out.iterations;
        }
    }
    best.restarts_used = used;
    return best;
}

BootstrapCI bootstrap_ci(std::span<const double> data, ModelTag tag, int B,
                         double level, std::uint64_t seed,
                         const FitConfig& refit_config, int threads) {
    if (B < 100) throw std::invalid_argument("bootstrap_ci: B must be >= 100");
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("bootstrap_ci: level must lie in (0, 1)");
    }
    const std::size_t n = data.size();
    const int k = model_param_count(tag);

    // center the resample starts on the full-data fit
    FitConfig base_config = refit_config;
    base_config.seed = seed;
    FitResult point = fit_mle(data, tag, {.restarts = 8, .seed = seed});

    std::vector<std::vector<double>> estimates(B);
    std::vector<char> ok(B, 0);
    std::atomic<int> cursor{0};
    auto worker = [&]() {
        for (;;) {
            int b = cursor.fetch_add(1);
            if (b >= B) break;
            RngStream stream(seed, static_cast<std::uint64_t>(b) + 1);
            std::vector<double> resample(n);
            for (std::size_t i = 0; i < n; ++i) {
                auto idx = static_cast<std::size_t>(stream.uniform01() * n);
                if (idx >= n) idx = n - 1;
                resample[i] = data[idx];
            }
            try {
                FitConfig c = base_config;
                c.extra_starts = {point.params};
                FitResult fr = fit_mle(resample, tag, c);
                if (std::isfinite(fr.loglik)) {
                    estimates[b] = fr.params;
                    ok[b] = 1;
                }
            } catch (const std::exception&) {
                // failed resample fits are dropped and counted
            }
        }
    };
    int nthreads = std::max(1, threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    BootstrapCI ci;
    ci.level = level;
    ci.B = B;
    ci.seed_metadata = {seed, 0, RngStream::algorithm};
    int good = 0;
    for (int b = 0; b < B; ++b) good += ok[b];
    ci.failed = B - good;
    if (ci.failed > B / 5) {
        throw ConvergenceError("bootstrap_ci: more than 20% of resample fits failed");
    }

    auto percentile = [](std::vector<double>& v, double q) {
        std::sort(v.begin(), v.end());
        double pos = q * (static_cast<double>(v.size()) - 1.0);
        auto lo = static_cast<std::size_t>(pos);
        std::size_t hi = std::min(lo + 1, v.size() - 1);
        double w = pos - static_cast<double>(lo);
        return (1.0 - w) * v[lo] + w * v[hi];
    };
    double tail = (1.0 - level) / 2.0;
    for (int j = 0; j < k; ++j) {
        std::vector<double> col;
        col.reserve(good);
        for (int b = 0; b < B; ++b) {
            if (ok[b]) col.push_back(estimates[b][j]);
        }
        double lo = percentile(col, tail);
        double hi = percentile(col, 1.0 - tail);
        ci.lower.push_back(lo);
        ci.upper.push_back(hi);
        ci.degenerate.push_back(lo == hi);
    }
    return ci;
}

InfoCriteria information_criteria(const FitResult& fit) {
    if (!fit.converged) {
        throw std::invalid_argument("information_criteria: fit did not converge");
    }
    double k = fit.k, n = fit.n;
    InfoCriteria ic;
    ic.aic = 2.0 * k - 2.0 * fit.loglik;
    ic.bic = k * std::log(n) - 2.0 * fit.loglik;
    ic.caic_bozdogan = ic.bic + k;
    if (fit.n <= fit.k + 1) {
        throw std::invalid_argument("information_criteria: aicc undefined, n <= k + 1");
    }
    ic.aicc = ic.aic + 2.0 * k * (k + 1.0) / (n - k - 1.0);
    return ic;
}

}  // namespace eephnd
