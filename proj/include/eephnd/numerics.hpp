#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>

namespace eephnd {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Error function, rational Chebyshev approximation (Cody 1969).
// Absolute error below 1e-14 on the real line.
double erf(double x);
double erfc(double x);

// log Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms).
// Throws std::domain_error for x <= 0.
double ln_gamma(double x);

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
// Series expansion for x < a + 1, continued fraction otherwise.
double reg_lower_incomplete_gamma(double a, double x);

// Adaptive Gauss-Kronrod (7-15) integration of f over [lower, upper].
// upper may be +infinity; the semi-infinite range is mapped onto [0, 1)
// through x = t / (1 - t).  Throws ConvergenceError when the error
// estimate cannot be brought below tol within the subdivision budget.
QuadratureResult integrate(const std::function<double(double)>& f,
                           double lower, double upper, double tol,
                           int max_intervals = 4000);

// Seeded, stream-splittable random source (PCG32: 64-bit LCG state with
// XSH-RR output; the stream id selects the increment).  Identical
// (seed, stream_id) reproduces an identical sequence; distinct stream
// ids under one seed give independent sequences.
class RngStream {
  public:
    static constexpr const char* algorithm = "pcg32";

    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint32_t next_u32();

    // Uniform on the open interval (0, 1): boundary values are rejected
    // so that log / quantile transforms stay finite.
    double uniform01();

    // Standard normal draw via Box-Muller (two uniforms per draw, no
    // cached spare, so the stream position is a pure function of the
    // number of calls).
    double standard_normal();

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

  private:
    std::uint64_t state_;
    std::uint64_t inc_;
    std::uint64_t seed_;
    std::uint64_t stream_id_;
};

}  // namespace eephnd
