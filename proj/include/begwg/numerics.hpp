#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace begwg {

// Iterative routine failed to reach its tolerance.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Likelihood maximum lies on the boundary of the parameter space.
struct BoundaryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Single tuning point for all quadrature and root-finding tolerances.
struct QuadratureConfig {
    double quad_abs_tol = 1e-10;
    double root_tol = 1e-12;
    int max_intervals = 4000;
    int max_bracket_doublings = 1100;  // caps expansion near the 2^1024 scale
};

struct IntegrationResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
};

// Adaptive Gauss-Kronrod 7-15 on [lo, hi], bisecting the interval with the
// largest error estimate until the estimated total error is below abs_tol.
IntegrationResult integrate(const std::function<double(double)>& f, double lo,
                            double hi, double abs_tol, int max_intervals);

// Integral over (0, hi) of an integrand behaving like x^(kappa-1) near the
// origin. Substitutes x = t^p with p chosen so the transformed integrand is
// at least C^2 at zero; plain integration when kappa is already >= 3.
IntegrationResult integrate_from_zero(const std::function<double(double)>& f,
                                      double hi, double kappa,
                                      const QuadratureConfig& cfg);

// Root of a continuous f on [lo, hi] with f(lo), f(hi) of opposite sign.
double brent(const std::function<double(double)>& f, double lo, double hi,
             double tol, int max_iter = 200);

// Inverse standard normal CDF (rational approximation plus one Halley step
// against erfc, accurate to a few ulps).
double normal_quantile(double p);

// One-sample Kolmogorov-Smirnov statistic; sorts a copy of the data.
double ks_statistic(std::vector<double> xs,
                    const std::function<double(double)>& cdf);

namespace detail {

// ln(e^y - 1) without overflow for large y.
double log_expm1(double y);

}  // namespace detail

}  // namespace begwg
