#pragma once

#include <map>
#include <string>
#include <vector>

#include "eephnd/distributions.hpp"
#include "eephnd/estimation.hpp"

namespace eephnd {

struct SurvivalSample {
    double time = 0.0;
    bool event = false;  // false = right-censored
    std::map<std::string, double> covariates;
};

struct KmCurve {
    std::vector<double> event_times;
    std::vector<double> survival;       // product-limit estimate at each event time
    std::vector<double> greenwood_var;  // S(t)^2 * cumulative Greenwood sum
    std::vector<int> n_at_risk;
    std::vector<int> n_events;
    std::vector<double> ci_lower;  // log-minus-log 95% band
    std::vector<double> ci_upper;

    // step-function lookup, S(t) = 1 before the first event time
    double survival_at(double t) const;
    // band at the last event time <= t; {1, 1} before the first event
    std::pair<double, double> ci_at(double t) const;
};

KmCurve kaplan_meier(const std::vector<SurvivalSample>& data);

struct CoxCoefficient {
    std::string name;
    double coef;
    double se;
    double hazard_ratio;
    double ci95_lower;  // coefficient scale
    double ci95_upper;
    double p_value;
};

struct CoxFit {
    std::vector<CoxCoefficient> coefficients;
    double loglik = 0.0;
    bool converged = false;
    int iterations = 0;
};

struct CoxConfig {
    int max_iters = 50;
    double tol = 1e-10;
};

// Partial-likelihood Newton ascent with Efron tie handling; standard
// errors from the inverse observed information, Wald p-values.
CoxFit cox_ph_fit(const std::vector<SurvivalSample>& data,
                  const std::vector<std::string>& covariate_names,
                  const CoxConfig& config = {});

// Harrell's C by direct pair enumeration.  A pair (i, j) is comparable
// when i has an event and time_i < time_j; tied event times are not
// comparable; tied scores count one half.
double concordance_index(const std::vector<double>& scores,
                         const std::vector<SurvivalSample>& data);

// Survival-analysis-facing name for the parametric survival curve.
double parametric_survival_predict(const EephndParams& p, double t);

// Each subject is scored by the model survival probability at their own
// observed time: early failures sit high on the curve and score highest,
// so a strictly decreasing survival curve orders every comparable pair
// concordantly (C = 1 when no ties).
constexpr const char* kConcordanceProtocol =
    "risk score per subject = S_model(t_i) at the subject's observed time";

struct ProtocolConcordance {
    double value;
    std::string protocol;
};

// Concordance of a fitted univariate model under the documented
// risk-score protocol above.
ProtocolConcordance model_concordance_protocol(const FitResult& fit,
                                               const std::vector<SurvivalSample>& data);

}  // namespace eephnd
