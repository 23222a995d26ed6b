#pragma once

#include "begwg/begwg.hpp"
#include "begwg/numerics.hpp"

namespace begwg {

// Failure-rate vector: rate at a common age together with the rate of each
// component given the other has already failed.
struct HazardVector {
    double h_diag;  // failure rate of min(X1, X2) at min(x1, x2)
    double h12;     // rate of component 1 at x1 given component 2 failed
    double h21;     // rate of component 2 at x2 given component 1 failed
};

struct GradientPair {
    double g1;
    double g2;
};

// P(X1 > x1, X2 > x2). Evaluated in a cancellation-free positive form and
// identical to 1 - F1(x1) - F2(x2) + F(x1, x2).
double joint_survival(const BegwgParams& p, double x1, double x2);

// Bivariate failure rate joint_pdf / joint_survival, region tag propagated.
RegionValue bvfr(const BegwgParams& p, double x1, double x2);

// Density of min(X1, X2).
double min_pdf(const BegwgParams& p, double t);

HazardVector cox_vector(const BegwgParams& p, double x1, double x2);

// Hazard gradient (-d ln R / dx1, -d ln R / dx2) in closed form. The two
// one-sided derivatives differ across the diagonal, so x1 == x2 is a domain
// error rather than a silent convention.
GradientPair hazard_gradient(const BegwgParams& p, double x1, double x2);

// Reversed hazard joint_pdf / joint_cdf, region tag propagated.
RegionValue reversed_hazard(const BegwgParams& p, double x1, double x2);

// Componentwise marginal reversed hazards, marginal_pdf / marginal_cdf with
// shapes alpha_i + alpha3; equals d/dx_i log marginal_cdf.
GradientPair reversed_hazard_gradient(const BegwgParams& p, double x1,
                                      double x2);

// Expected time since failure of component `which` given it failed by t:
// (1/F(t)) * integral of F over (0, t). Always in (0, t).
double mean_waiting_time_marginal(const BegwgParams& p, int which, double t,
                                  const QuadratureConfig& cfg = {});

// Joint version over the rectangle (0,t1) x (0,t2); the inner integral is
// split at the diagonal so each piece sees a single CDF branch.
double mean_waiting_time_joint(const BegwgParams& p, double t1, double t2,
                               const QuadratureConfig& cfg = {});

}  // namespace begwg
