#include "eephnd/survival.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eephnd/numerics.hpp"

namespace eephnd {

namespace {

constexpr double kZ95 = 1.959964;

double normal_sf(double z) { return 0.5 * erfc(z / M_SQRT2); }

}  // namespace

double KmCurve::survival_at(double t) const {
    double s = 1.0;
    for (std::size_t i = 0; i < event_times.size() && event_times[i] <= t; ++i) {
        s = survival[i];
    }
    return s;
}

std::pair<double, double> KmCurve::ci_at(double t) const {
    std::pair<double, double> band{1.0, 1.0};
    for (std::size_t i = 0; i < event_times.size() && event_times[i] <= t; ++i) {
        band = {ci_lower[i], ci_upper[i]};
    }
    return band;
}

KmCurve kaplan_meier(const std::vector<SurvivalSample>& data) {
    if (data.empty()) throw std::invalid_argument("kaplan_meier: empty data");
    for (const auto& s : data) {
        if (!(s.time > 0.0)) throw std::domain_error("kaplan_meier: time must be positive");
    }
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return data[a].time < data[b].time;
    });

    KmCurve curve;
    double s = 1.0;
    double greenwood_sum = 0.0;
    std::size_t i = 0;
    int at_risk = static_cast<int>(data.size());
    while (i < order.size()) {
        double t = data[order[i]].time;
        std::size_t j = i;
        int d = 0, removed = 0;
        while (j < order.size() && data[order[j]].time == t) {
            if (data[order[j]].event) ++d;
            ++removed;
            ++j;
        }
        if (d > 0) {
            s *= 1.0 - static_cast<double>(d) / at_risk;
            greenwood_sum += static_cast<double>(d) /
                             (static_cast<double>(at_risk) * (at_risk - d));
            curve.event_times.push_back(t);
            curve.survival.push_back(s);
            curve.greenwood_var.push_back(s * s * greenwood_sum);
            curve.n_at_risk.push_back(at_risk);
            curve.n_events.push_back(d);
            if (s > 0.0 && s < 1.0) {
                // log(-log S) scale keeps the band inside (0, 1)
                double se_ll = std::sqrt(greenwood_sum) / std::fabs(std::log(s));
                curve.ci_lower.push_back(std::pow(s, std::exp(kZ95 * se_ll)));
                curve.ci_upper.push_back(std::pow(s, std::exp(-kZ95 * se_ll)));
            } else {
                curve.ci_lower.push_back(s);
                curve.ci_upper.push_back(s);
            }
        }
        at_risk -= removed;
        i = j;
    }
    if (curve.event_times.empty()) {
        throw std::invalid_argument("kaplan_meier: all observations censored");
    }
    return curve;
}

CoxFit cox_ph_fit(const std::vector<SurvivalSample>& data,
                  const std::vector<std::string>& covariate_names,
                  const CoxConfig& config) {
    const std::size_t n = data.size();
    const std::size_t p = covariate_names.size();
    if (p == 0) throw std::invalid_argument("cox_ph_fit: no covariates");

    std::vector<std::vector<double>> X(n, std::vector<double>(p));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            auto it = data[i].covariates.find(covariate_names[j]);
            if (it == data[i].covariates.end()) {
                throw std::invalid_argument("cox_ph_fit: missing covariate " +
                                            covariate_names[j]);
            }
            X[i][j] = it->second;
        }
    }
    for (std::size_t j = 0; j < p; ++j) {
        double first = X[0][j];
        if (std::all_of(X.begin(), X.end(),
                        [&](const auto& row) { return row[j] == first; })) {
            throw std::invalid_argument("cox_ph_fit: constant covariate " +
                                        covariate_names[j]);
        }
    }
    int distinct_event_times = 0;
    {
        std::vector<double> et;
        for (const auto& s : data) {
            if (s.event) et.push_back(s.time);
        }
        std::sort(et.begin(), et.end());
        et.erase(std::unique(et.begin(), et.end()), et.end());
        distinct_event_times = static_cast<int>(et.size());
    }
    if (distinct_event_times < 2) {
        throw std::invalid_argument("cox_ph_fit: need >= 2 distinct event times");
    }

    // descending time so risk sets are prefix sums
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return data[a].time > data[b].time;
    });

    auto evaluate = [&](const std::vector<double>& beta, std::vector<double>& grad,
                        std::vector<std::vector<double>>& info) {
        double ll = 0.0;
        grad.assign(p, 0.0);
        info.assign(p, std::vector<double>(p, 0.0));
        double s0 = 0.0;
        std::vector<double> s1(p, 0.0);
        std::vector<std::vector<double>> s2(p, std::vector<double>(p, 0.0));
        std::size_t i = 0;
        while (i < n) {
            double t = data[order[i]].time;
            std::size_t j = i;
            // add the whole tie group to the risk set
            double d0 = 0.0;
            std::vector<double> d1(p, 0.0);
            std::vector<std::vector<double>> d2(p, std::vector<double>(p, 0.0));
            int m = 0;
            double eta_sum = 0.0;
            std::vector<double> x_sum(p, 0.0);
            while (j < n && data[order[j]].time == t) {
                std::size_t idx = order[j];
                double eta = 0.0;
                for (std::size_t a = 0; a < p; ++a) eta += beta[a] * X[idx][a];
                double w = std::exp(eta);
                s0 += w;
                for (std::size_t a = 0; a < p; ++a) {
                    s1[a] += w * X[idx][a];
                    for (std::size_t b = 0; b <= a; ++b) {
                        s2[a][b] += w * X[idx][a] * X[idx][b];
                    }
                }
                if (data[idx].event) {
                    ++m;
                    eta_sum += eta;
                    d0 += w;
                    for (std::size_t a = 0; a < p; ++a) {
                        x_sum[a] += X[idx][a];
                        d1[a] += w * X[idx][a];
                        for (std::size_t b = 0; b <= a; ++b) {
                            d2[a][b] += w * X[idx][a] * X[idx][b];
                        }
                    }
                }
                ++j;
            }
            if (m > 0) {
                ll += eta_sum;
                for (std::size_t a = 0; a < p; ++a) grad[a] += x_sum[a];
                for (int l = 0; l < m; ++l) {
                    double f = static_cast<double>(l) / m;
                    double e0 = s0 - f * d0;
                    ll -= std::log(e0);
                    for (std::size_t a = 0; a < p; ++a) {
                        double e1a = s1[a] - f * d1[a];
                        grad[a] -= e1a / e0;
                        for (std::size_t b = 0; b <= a; ++b) {
                            double e1b = s1[b] - f * d1[b];
                            double e2ab = s2[a][b] - f * d2[a][b];
                            info[a][b] += e2ab / e0 - e1a * e1b / (e0 * e0);
                        }
                    }
                }
            }
            i = j;
        }
        for (std::size_t a = 0; a < p; ++a) {
            for (std::size_t b = a + 1; b < p; ++b) info[a][b] = info[b][a];
        }
        return ll;
    };

    auto solve = [&](std::vector<std::vector<double>> A, std::vector<double> rhs) {
        // Gaussian elimination with partial pivoting
        const std::size_t m = rhs.size();
        for (std::size_t c = 0; c < m; ++c) {
            std::size_t piv = c;
            for (std::size_t r = c + 1; r < m; ++r) {
                if (std::fabs(A[r][c]) > std::fabs(A[piv][c])) piv = r;
            }
            std::swap(A[c], A[piv]);
            std::swap(rhs[c], rhs[piv]);
            if (A[c][c] == 0.0) throw ConvergenceError("cox_ph_fit: singular information");
            for (std::size_t r = 0; r < m; ++r) {
                if (r == c) continue;
                double f = A[r][c] / A[c][c];
                for (std::size_t cc = c; cc < m; ++cc) A[r][cc] -= f * A[c][cc];
                rhs[r] -= f * rhs[c];
            }
        }
        for (std::size_t c = 0; c < m; ++c) rhs[c] /= A[c][c];
        return rhs;
    };

    std::vector<double> beta(p, 0.0), grad;
    std::vector<std::vector<double>> info;
    double ll = evaluate(beta, grad, info);
    bool converged = false;
    int it = 0;
    for (; it < config.max_iters; ++it) {
        std::vector<double> step = solve(info, grad);
        double scale = 1.0;
        std::vector<double> cand(p);
        double new_ll = -std::numeric_limits<double>::infinity();
        std::vector<double> new_grad;
        std::vector<std::vector<double>> new_info;
        for (int half = 0; half < 30; ++half) {
            for (std::size_t a = 0; a < p; ++a) cand[a] = beta[a] + scale * step[a];
            new_ll = evaluate(cand, new_grad, new_info);
            if (new_ll >= ll - 1e-12) break;
            scale *= 0.5;
        }
        double change = new_ll - ll;
        beta = cand;
        ll = new_ll;
        grad = new_grad;
        info = new_info;
        for (double b : beta) {
            if (std::fabs(b) > 50.0) {
                throw ConvergenceError(
                    "cox_ph_fit: coefficient diverged (separation?)");
            }
        }
        if (std::fabs(change) < config.tol * (std::fabs(ll) + 1.0)) {
            converged = true;
            ++it;
            break;
        }
    }

    // variance: inverse information via solves against unit vectors
    CoxFit fit;
    fit.loglik = ll;
    fit.converged = converged;
    fit.iterations = it;
    for (std::size_t a = 0; a < p; ++a) {
        std::vector<double> unit(p, 0.0);
        unit[a] = 1.0;
        double var = solve(info, unit)[a];
        double se = std::sqrt(std::max(var, 0.0));
        CoxCoefficient c;
        c.name = covariate_names[a];
        c.coef = beta[a];
        c.se = se;
        c.hazard_ratio = std::exp(beta[a]);
        c.ci95_lower = beta[a] - kZ95 * se;
        c.ci95_upper = beta[a] + kZ95 * se;
        c.p_value = 2.0 * normal_sf(std::fabs(beta[a]) / se);
        fit.coefficients.push_back(c);
    }
    return fit;
}

double concordance_index(const std::vector<double>& scores,
                         const std::vector<SurvivalSample>& data) {
    if (scores.size() != data.size()) {
        throw std::invalid_argument("concordance_index: size mismatch");
    }
    const std::size_t n = data.size();
    long long comparable = 0;
    double concordant = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!data[i].event) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (data[j].time <= data[i].time) continue;
            ++comparable;
            if (scores[i] > scores[j]) {
                concordant += 1.0;
            } else if (scores[i] == scores[j]) {
                concordant += 0.5;
            }
        }
    }
    if (comparable == 0) {
        throw std::invalid_argument("concordance_index: no comparable pairs");
    }
    return concordant / static_cast<double>(comparable);
}

double parametric_survival_predict(const EephndParams& p, double t) {
    if (!(t > 0.0)) throw std::domain_error("parametric_survival_predict: t must be positive");
    return survival(t, p);
}

ProtocolConcordance model_concordance_protocol(const FitResult& fit,
                                               const std::vector<SurvivalSample>& data) {
    std::vector<double> scores;
    scores.reserve(data.size());
    for (const auto& s : data) {
        scores.push_back(1.0 - model_cdf(s.time, fit.model_tag, fit.params));
    }
    return {concordance_index(scores, data), kConcordanceProtocol};
}

}  // namespace eephnd
