#include "eephnd/moments.hpp"

#include <cmath>

#include "eephnd/numerics.hpp"

namespace eephnd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Two-pass quadrature: a coarse pass fixes the scale, the second pass
// runs at 1e-9 relative.
double integrate_relative(const std::function<double(double)>& f) {
    QuadratureResult coarse = integrate(f, 0.0, kInf, 1e-4, 8000);
    double tol = std::max(std::fabs(coarse.value) * 1e-9, 1e-14);
    return integrate(f, 0.0, kInf, tol, 8000).value;
}

}  // namespace

double raw_moment_numeric(int r, const EephndParams& p) {
    if (r < 1) throw std::domain_error("raw_moment_numeric: r must be >= 1");
    p.validate();
    return integrate_relative(
        [&](double x) { return x > 0.0 ? std::pow(x, r) * eephnd_pdf(x, p) : 0.0; });
}

double raw_moment_closed_form(int r, const EephndParams& p, ClosedFormScale scale) {
    if (r < 1) throw std::domain_error("raw_moment_closed_form: r must be >= 1");
    p.validate();
    double s = (scale == ClosedFormScale::RootAlphaLambda)
                   ? p.beta / std::pow(p.alpha * p.lambda, 1.0 / p.theta)
                   : p.beta / std::sqrt(p.theta * p.alpha * p.lambda);
    double eep_term = std::pow(s, r) * std::exp(ln_gamma(r / p.theta + 1.0));
    double hn_term = std::pow(p.sigma * M_SQRT2, r) / std::sqrt(M_PI) *
                     std::exp(ln_gamma((r + 1.0) / 2.0));
    return p.p1 * eep_term + (1.0 - p.p1) * hn_term;
}

MomentReport moment_report(int r, const EephndParams& p, ClosedFormScale scale) {
    MomentReport rep;
    rep.order = r;
    rep.numeric = raw_moment_numeric(r, p);
    rep.closed_form = raw_moment_closed_form(r, p, scale);
    rep.abs_gap = std::fabs(*rep.closed_form - rep.numeric);
    return rep;
}

double mean(const EephndParams& p) { return raw_moment_numeric(1, p); }

double variance(const EephndParams& p) {
    double m1 = raw_moment_numeric(1, p);
    return raw_moment_numeric(2, p) - m1 * m1;
}

double central_moment(int k, const EephndParams& p) {
    if (k != 3 && k != 4) {
        throw std::domain_error("central_moment: only orders 3 and 4 supported");
    }
    double m1 = raw_moment_numeric(1, p);
    double m2 = raw_moment_numeric(2, p);
    double m3 = raw_moment_numeric(3, p);
    if (k == 3) {
        return m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1;
    }
    double m4 = raw_moment_numeric(4, p);
    return m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1 * m1 * m1 * m1;
}

ShapeSummary skewness_kurtosis(const EephndParams& p) {
    double mu2 = variance(p);
    double mu3 = central_moment(3, p);
    double mu4 = central_moment(4, p);
    ShapeSummary s;
    s.gamma1 = mu3 / std::pow(mu2, 1.5);
    s.beta1 = s.gamma1 * s.gamma1;
    s.gamma2 = mu4 / (mu2 * mu2);
    return s;
}

MgfResult mgf(double t, const EephndParams& p, int n_terms) {
    if (n_terms < 1) throw std::domain_error("mgf: n_terms must be >= 1");
    p.validate();
    double sum = 1.0;  // r = 0 term
    double last = 1.0;
    int growing = 0;
    double log_factorial = 0.0;
    int used = 0;
    for (int r = 1; r <= n_terms; ++r) {
        log_factorial += std::log(static_cast<double>(r));
        double term = std::pow(t, r) * std::exp(-log_factorial) * raw_moment_numeric(r, p);
        sum += term;
        used = r;
        if (std::fabs(term) > std::fabs(last) && r > 1) {
            if (++growing >= 5) {
                throw ConvergenceError(
                    "mgf: series terms grew for 5 consecutive orders; t is outside "
                    "the convergence region");
            }
        } else {
            growing = 0;
        }
        last = term;
        if (std::fabs(term) < 1e-15 * std::fabs(sum)) break;
    }
    return {sum, std::fabs(last), used};
}

}  // namespace eephnd
