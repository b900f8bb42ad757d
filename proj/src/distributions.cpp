#include "eephnd/distributions.hpp"

#include <cmath>
#include <limits>

#include "eephnd/numerics.hpp"

namespace eephnd {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::domain_error(std::string(name) + " must be strictly positive");
    }
}

void require_support(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("x must be strictly positive");
    }
}

// log(1 - e^{-u}) for u > 0 without cancellation.
double log1mexp_neg(double u) {
    if (u <= 0.0) return -std::numeric_limits<double>::infinity();
    if (u < 0.6931471805599453) return std::log(-std::expm1(-u));
    return std::log1p(-std::exp(-u));
}

}  // namespace

void EepParams::validate() const {
    require_positive(alpha, "alpha");
    require_positive(beta, "beta");
    require_positive(theta, "theta");
    require_positive(lambda, "lambda");
}

void HalfNormalParams::validate() const { require_positive(sigma, "sigma"); }

void EephndParams::validate() const {
    eep().validate();
    half_normal().validate();
    if (!(p1 >= 0.0 && p1 <= 1.0)) {
        throw std::domain_error("p1 must lie in [0, 1]");
    }
}

void LogNormalParams::validate() const {
    if (!std::isfinite(mu)) throw std::domain_error("mu must be finite");
    require_positive(s, "s");
}

void GammaRayleighParams::validate() const {
    require_positive(a, "a");
    require_positive(s, "s");
}

double eep_log_pdf(double x, const EepParams& p) {
    require_support(x);
    double u = p.lambda * std::pow(x / p.beta, p.theta);
    double lp = std::log(p.alpha * p.lambda * p.theta / p.beta) +
                (p.theta - 1.0) * std::log(x / p.beta) - u +
                (p.alpha - 1.0) * log1mexp_neg(u);
    return lp;
}

double eep_pdf(double x, const EepParams& p) {
    double lp = eep_log_pdf(x, p);
    return std::isfinite(lp) ? std::exp(lp)
                             : (lp > 0 ? std::numeric_limits<double>::infinity() : 0.0);
}

double eep_cdf(double x, const EepParams& p) {
    require_support(x);
    double u = p.lambda * std::pow(x / p.beta, p.theta);
    // F = (1 - e^{-u})^alpha, evaluated in log space
    return std::exp(p.alpha * log1mexp_neg(u));
}

double hn_log_pdf(double x, const HalfNormalParams& p) {
    require_support(x);
    double z = x / p.sigma;
    return 0.5 * std::log(2.0 / M_PI) - std::log(p.sigma) - 0.5 * z * z;
}

double hn_pdf(double x, const HalfNormalParams& p) {
    return std::exp(hn_log_pdf(x, p));
}

double hn_cdf(double x, const HalfNormalParams& p) {
    require_support(x);
    return erf(x / (p.sigma * M_SQRT2));
}

double eephnd_pdf(double x, const EephndParams& p) {
    require_support(x);
    p.validate();
    double v = 0.0;
    if (p.p1 > 0.0) v += p.p1 * eep_pdf(x, p.eep());
    if (p.p1 < 1.0) v += (1.0 - p.p1) * hn_pdf(x, p.half_normal());
    return v;
}

double eephnd_log_pdf(double x, const EephndParams& p) {
    require_support(x);
    if (p.p1 >= 1.0) return eep_log_pdf(x, p.eep());
    if (p.p1 <= 0.0) return hn_log_pdf(x, p.half_normal());
    double la = std::log(p.p1) + eep_log_pdf(x, p.eep());
    double lb = std::log1p(-p.p1) + hn_log_pdf(x, p.half_normal());
    double m = std::max(la, lb);
    if (!std::isfinite(m)) return m;
    return m + std::log(std::exp(la - m) + std::exp(lb - m));
}

double eephnd_cdf(double x, const EephndParams& p) {
    require_support(x);
    p.validate();
    double v = 0.0;
    if (p.p1 > 0.0) v += p.p1 * eep_cdf(x, p.eep());
    if (p.p1 < 1.0) v += (1.0 - p.p1) * hn_cdf(x, p.half_normal());
    return std::min(v, 1.0);
}

double survival(double x, const EephndParams& p) {
    return 1.0 - eephnd_cdf(x, p);
}

double hazard(double x, const EephndParams& p) {
    double s = survival(x, p);
    if (s <= 0.0) {
        throw SaturationError("hazard: survival underflowed to zero");
    }
    return eephnd_pdf(x, p) / s;
}

double odds(double x, const EephndParams& p) {
    double s = survival(x, p);
    if (s <= 0.0) {
        throw SaturationError("odds: survival underflowed to zero");
    }
    return eephnd_cdf(x, p) / s;
}

double quantile(double q, const EephndParams& p) {
    if (!(q > 0.0 && q < 1.0)) {
        throw std::domain_error("quantile: q must lie in (0, 1)");
    }
    p.validate();
    double lo = 1e-300, hi = 1.0;
    while (eephnd_cdf(hi, p) < q) {
        hi *= 2.0;
        if (hi > 1e300) throw ConvergenceError("quantile: no upper bracket");
    }
    // cdf(lo) <= q <= cdf(hi); bisection to full double resolution
    for (int it = 0; it < 400; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (eephnd_cdf(mid, p) < q) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double log_normal_log_pdf(double x, const LogNormalParams& p) {
    require_support(x);
    double z = (std::log(x) - p.mu) / p.s;
    return -std::log(x * p.s) - 0.5 * std::log(2.0 * M_PI) - 0.5 * z * z;
}

double log_normal_pdf(double x, const LogNormalParams& p) {
    return std::exp(log_normal_log_pdf(x, p));
}

double log_normal_cdf(double x, const LogNormalParams& p) {
    require_support(x);
    double z = (std::log(x) - p.mu) / (p.s * M_SQRT2);
    return 0.5 * erfc(-z);
}

double gamma_rayleigh_log_pdf(double x, const GammaRayleighParams& p) {
    require_support(x);
    double w = x * x / (2.0 * p.s * p.s);
    return -ln_gamma(p.a) + (p.a - 1.0) * std::log(w) + std::log(x / (p.s * p.s)) - w;
}

double gamma_rayleigh_pdf(double x, const GammaRayleighParams& p) {
    return std::exp(gamma_rayleigh_log_pdf(x, p));
}

double gamma_rayleigh_cdf(double x, const GammaRayleighParams& p) {
    require_support(x);
    return reg_lower_incomplete_gamma(p.a, x * x / (2.0 * p.s * p.s));
}

}  // namespace eephnd
