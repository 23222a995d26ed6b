#pragma once

#include <array>
#include <optional>
#include <vector>

#include "begwg/begwg.hpp"
#include "begwg/numerics.hpp"

namespace begwg {

struct PairedSample {
    std::vector<double> x1;
    std::vector<double> x2;

    std::size_t size() const { return x1.size(); }
};

// Observations partitioned by the sign of x1 - x2. Ties within tie_tol land
// in group 3 (the singular component).
struct Classification {
    std::size_t n1 = 0;  // x1 < x2
    std::size_t n2 = 0;  // x1 > x2
    std::size_t n3 = 0;  // x1 == x2
    std::vector<std::size_t> group1;
    std::vector<std::size_t> group2;
    std::vector<std::size_t> group3;
};

// Baseline parameters held fixed during shape estimation.
struct BaseParams {
    double a = 0.1;
    double b = 0.2;
    double c = 0.2;
    double d = 0.5;
};

struct FitOptions {
    int max_iter = 200;
    double score_tol = 1e-8;
    double step_tol = 1e-10;
    double ci_level = 0.95;
    std::optional<std::array<double, 3>> init;
};

struct Interval {
    double lo;
    double hi;
};

struct ObservedInformation {
    // Negative Hessian of the log likelihood in (alpha1, alpha2, alpha3).
    std::array<std::array<double, 3>, 3> matrix;
};

struct InfoCriteria {
    double aic;
    double caic;
    double bic_paper;     // -L + (k/2) log n
    double bic_standard;  // -2L + k log n
};

struct FitResult {
    std::array<double, 3> alpha_hat;
    double log_likelihood;
    double aic;
    double caic;
    double bic_paper;
    double bic_standard;
    std::array<std::array<double, 3>, 3> covariance;
    std::array<Interval, 3> ci;            // clamped to [0, inf)
    std::array<Interval, 3> ci_unclamped;  // raw Wald endpoints
    bool converged;
    int iterations;
};

Classification classify(const PairedSample& s, double tie_tol = 0.0);

double log_likelihood(const std::array<double, 3>& alphas,
                      const BaseParams& fixed, const Classification& cls,
                      const PairedSample& s);

std::array<double, 3> score(const std::array<double, 3>& alphas,
                            const BaseParams& fixed, const Classification& cls,
                            const PairedSample& s);

// Root of the third score component in alpha3 for fixed (alpha1, alpha2).
// The score is strictly decreasing in alpha3; throws BoundaryError when no
// positive root exists (possible only when n3 == 0).
double profile_alpha3(double alpha1, double alpha2, const BaseParams& fixed,
                      const Classification& cls, const PairedSample& s);

// Newton iteration on (alpha1, alpha2) with alpha3 profiled out, using the
// Schur-complement Jacobian and backtracking line search.
FitResult fit_mle(const BaseParams& fixed, const PairedSample& s,
                  double tie_tol = 0.0, const FitOptions& options = {});

ObservedInformation observed_information(const std::array<double, 3>& alphas,
                                         const Classification& cls);

// Inverts the information matrix and forms Wald intervals; level is the
// two-sided coverage. Throws SingularMatrixError when the matrix is not
// positive definite.
void covariance_and_ci(const ObservedInformation& info,
                       const std::array<double, 3>& alphas, double level,
                       std::array<std::array<double, 3>, 3>& cov_out,
                       std::array<Interval, 3>& ci_out,
                       std::array<Interval, 3>& ci_unclamped_out);

InfoCriteria information_criteria(double log_lik, int k, std::size_t n);

}  // namespace begwg
