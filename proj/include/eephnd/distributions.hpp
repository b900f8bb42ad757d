#pragma once

#include <stdexcept>
#include <string>

namespace eephnd {

// Parameters of the exponentiated-exponential-Pareto component.
struct EepParams {
    double alpha;   // exponent of the exponentiated CDF
    double beta;    // scale
    double theta;   // power
    double lambda;  // rate
    void validate() const;
};

struct HalfNormalParams {
    double sigma;
    void validate() const;
};

// Full mixture: weight p1 on the EEP component, 1 - p1 on half-normal.
struct EephndParams {
    double alpha;
    double beta;
    double theta;
    double lambda;
    double sigma;
    double p1;
    EepParams eep() const { return {alpha, beta, theta, lambda}; }
    HalfNormalParams half_normal() const { return {sigma}; }
    void validate() const;
};

struct LogNormalParams {
    double mu;  // location on log scale
    double s;   // spread on log scale
    void validate() const;
};

// Gamma-generated Rayleigh: gamma(a) composed with the Rayleigh
// cumulative hazard x^2 / (2 s^2).
struct GammaRayleighParams {
    double a;
    double s;
    void validate() const;
};

class SaturationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

double eep_pdf(double x, const EepParams& p);
double eep_log_pdf(double x, const EepParams& p);
double eep_cdf(double x, const EepParams& p);

double hn_pdf(double x, const HalfNormalParams& p);
double hn_log_pdf(double x, const HalfNormalParams& p);
double hn_cdf(double x, const HalfNormalParams& p);

double eephnd_pdf(double x, const EephndParams& p);
double eephnd_log_pdf(double x, const EephndParams& p);
double eephnd_cdf(double x, const EephndParams& p);

double survival(double x, const EephndParams& p);
double hazard(double x, const EephndParams& p);
double odds(double x, const EephndParams& p);

// Inverse CDF by bracketing + bisection on the monotone mixture CDF.
double quantile(double q, const EephndParams& p);

double log_normal_pdf(double x, const LogNormalParams& p);
double log_normal_log_pdf(double x, const LogNormalParams& p);
double log_normal_cdf(double x, const LogNormalParams& p);

double gamma_rayleigh_pdf(double x, const GammaRayleighParams& p);
double gamma_rayleigh_log_pdf(double x, const GammaRayleighParams& p);
double gamma_rayleigh_cdf(double x, const GammaRayleighParams& p);

}  // namespace eephnd
