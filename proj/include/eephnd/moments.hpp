#pragma once

#include <optional>

#include "eephnd/distributions.hpp"

namespace eephnd {

// One moment order: the quadrature value is authoritative, the closed
// form (when requested) is carried alongside with its gap.
struct MomentReport {
    int order = 0;
    std::optional<double> closed_form;
    double numeric = 0.0;
    double abs_gap = 0.0;
};

// Which scale the closed-form EEP moment term uses.  The two variants
// circulate in the literature for this family; neither is exact for
// alpha != 1, which is why quadrature stays the reference.
enum class ClosedFormScale {
    RootAlphaLambda,      // beta / (alpha * lambda)^(1/theta)
    SqrtThetaAlphaLambda  // beta / sqrt(theta * alpha * lambda)
};

double raw_moment_numeric(int r, const EephndParams& p);

// Closed-form E[X^r]: exact half-normal term plus the approximate EEP
// term.  Never used as ground truth.
double raw_moment_closed_form(int r, const EephndParams& p,
                              ClosedFormScale scale = ClosedFormScale::RootAlphaLambda);

MomentReport moment_report(int r, const EephndParams& p,
                           ClosedFormScale scale = ClosedFormScale::RootAlphaLambda);

double mean(const EephndParams& p);
double variance(const EephndParams& p);

// k in {3, 4}
double central_moment(int k, const EephndParams& p);

struct ShapeSummary {
    double gamma1;  // mu3 / mu2^(3/2)
    double beta1;   // gamma1 squared
    double gamma2;  // mu4 / mu2^2, mesokurtic reference 3
};
ShapeSummary skewness_kurtosis(const EephndParams& p);

struct MgfResult {
    double value;
    double tail_estimate;  // magnitude of the last term kept
    int terms_used;
};

// Partial sum of sum_r t^r E[X^r] / r! with numeric raw moments.
// Throws ConvergenceError when terms grow for 5 consecutive orders.
MgfResult mgf(double t, const EephndParams& p, int n_terms = 40);

}  // namespace eephnd
