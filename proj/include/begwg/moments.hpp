#pragma once

#include <cstdint>

#include "begwg/begwg.hpp"
#include "begwg/egwg.hpp"
#include "begwg/numerics.hpp"

namespace begwg {

// Controls for the quadruple-sum series evaluator.
struct SeriesControl {
    double tol = 1e-10;
    int max_terms_per_index = 200;
    int min_tail_checks = 3;
};

struct SeriesResult {
    double value = 0.0;
    std::uint64_t terms_used = 0;
    bool converged = false;
};

// E[X^r] for a univariate law by adaptive quadrature of x^r f(x) up to the
// 1 - 1e-14 quantile; the tolerance scales with the size of x^r.
double raw_moment_quadrature(const EgwgParams& p, double r,
                             const QuadratureConfig& cfg = {});

// r-th raw moment of marginal `which` (1 or 2) of the bivariate law.
double raw_moment_quadrature(const BegwgParams& p, int which, double r,
                             const QuadratureConfig& cfg = {});

// The published quadruple-sum expansion of E[X^r], transcribed exactly. As
// written it is divergent: the k = 0 terms divide by zero and for k >= 1 the
// inner terms grow geometrically, so SeriesResult::converged is the contract.
// The evaluator sums magnitude-sorted batches and aborts on detected growth;
// callers must check `converged` before trusting `value`.
SeriesResult raw_moment_series(const EgwgParams& p, int r,
                               const SeriesControl& ctl = {});

SeriesResult raw_moment_series(const BegwgParams& p, int which, int r,
                               const SeriesControl& ctl = {});

}  // namespace begwg
