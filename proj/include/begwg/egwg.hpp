#pragma once

#include <cstddef>
#include <vector>

#include "begwg/numerics.hpp"
#include "begwg/rng.hpp"

namespace begwg {

// Univariate exponentiated generalized Weibull-Gompertz distribution,
//
//   F(x) = [1 - exp(-a x^b (exp(c x^d) - 1))]^alpha,  x >= 0,
//
// with all five parameters strictly positive.
struct EgwgParams {
    double a, b, c, d, alpha;

    EgwgParams(double a_, double b_, double c_, double d_, double alpha_);
};

double cdf(const EgwgParams& p, double x);

// Density on x > 0. At x = 0 the continuous extension is returned: the
// density behaves like x^((b+d)*alpha - 1) at the origin, so the limit is
// 0 when (b+d)*alpha > 1, (a*c)^alpha when (b+d)*alpha == 1, and +infinity
// when (b+d)*alpha < 1. Never NaN.
double pdf(const EgwgParams& p, double x);

// Stable log density, assembled in log space term by term.
double log_pdf(const EgwgParams& p, double x);

double survival(const EgwgParams& p, double x);

double hazard(const EgwgParams& p, double x);

// Numeric inversion of the CDF: |cdf(quantile(u)) - u| <= 1e-12.
double quantile(const EgwgParams& p, double u, const QuadratureConfig& cfg = {});

// n inverse-CDF draws from the caller's stream.
std::vector<double> sample(const EgwgParams& p, UniformStream& rng,
                           std::size_t n, const QuadratureConfig& cfg = {});

namespace detail {

// G(x) = a x^b (exp(c x^d) - 1), the inner exponent.
double big_g(const EgwgParams& p, double x);

// ln(1 - exp(-G(x))), the log of the base (alpha = 1) CDF.
double log_base_cdf(const EgwgParams& p, double x);

// W(x) = 1 + (c d / b) x^d - exp(-c x^d), evaluated cancellation-free.
double bracket_w(const EgwgParams& p, double x);

// gamma(x) = a b x^(b-1) exp(-G(x) + c x^d) W(x); the base density and the
// common prefactor of every closed-form hazard expression.
double gamma_factor(const EgwgParams& p, double x);

// Solves G(x) = t for x > 0 (monotone; Newton on ln x with a bracket).
double x_at_big_g(const EgwgParams& p, double t, const QuadratureConfig& cfg);

}  // namespace detail

}  // namespace begwg
