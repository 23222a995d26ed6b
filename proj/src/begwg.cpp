#include "begwg/begwg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace begwg {

namespace {

void require_positive_finite(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0)
        throw std::domain_error(std::string("BegwgParams: ") + name +
                                " must be a positive finite real");
}

void require_positive_coords(double x1, double x2, const char* who) {
    if (!(x1 > 0.0) || !(x2 > 0.0) || !std::isfinite(x1) || !std::isfinite(x2))
        throw std::domain_error(std::string(who) +
                                ": coordinates must be positive finite reals");
}

// log f3 assembled in log space; exponent on the base CDF is alpha_sum - 1.
double log_diagonal_density(const BegwgParams& p, double x) {
    const EgwgParams base1 = p.base(1.0);
    const double y = p.c * std::pow(x, p.d);
    const double g = detail::big_g(base1, x);
    const double w = detail::bracket_w(base1, x);
    const double lu = detail::log_base_cdf(base1, x);
    const double s = p.alpha_sum();
    const double tail = s == 1.0 ? 0.0 : (s - 1.0) * lu;
    return std::log(p.a * p.b * p.alpha3) + (p.b - 1.0) * std::log(x) - g + y +
           std::log(w) + tail;
}

}  // namespace

BegwgParams::BegwgParams(double a_, double b_, double c_, double d_,
                         double alpha1_, double alpha2_, double alpha3_)
    : a(a_), b(b_), c(c_), d(d_), alpha1(alpha1_), alpha2(alpha2_),
      alpha3(alpha3_) {
    require_positive_finite(a, "a");
    require_positive_finite(b, "b");
    require_positive_finite(c, "c");
    require_positive_finite(d, "d");
    require_positive_finite(alpha1, "alpha1");
    require_positive_finite(alpha2, "alpha2");
    require_positive_finite(alpha3, "alpha3");
}

EgwgParams BegwgParams::marginal(int which) const {
    if (which == 1) return base(alpha1 + alpha3);
    if (which == 2) return base(alpha2 + alpha3);
    throw std::invalid_argument("marginal: which must be 1 or 2");
}

const char* region_name(Region r) {
    switch (r) {
        case Region::below: return "below";
        case Region::above: return "above";
        case Region::diagonal: return "diagonal";
    }
    return "invalid";
}

double joint_cdf(const BegwgParams& p, double x1, double x2) {
    if (!std::isfinite(x1) || !std::isfinite(x2) || x1 < 0.0 || x2 < 0.0)
        throw std::domain_error(
            "joint_cdf: coordinates must be finite non-negative reals");
    if (x1 == 0.0 || x2 == 0.0) return 0.0;
    const EgwgParams base1 = p.base(1.0);
    const double lu1 = detail::log_base_cdf(base1, x1);
    const double lu2 = detail::log_base_cdf(base1, x2);
    const double lum = std::min(lu1, lu2);
    return std::exp(p.alpha1 * lu1 + p.alpha2 * lu2 + p.alpha3 * lum);
}

RegionValue joint_pdf(const BegwgParams& p, double x1, double x2) {
    require_positive_coords(x1, x2, "joint_pdf");
    if (x1 < x2)
        return {pdf(p.base(p.alpha1 + p.alpha3), x1) * pdf(p.base(p.alpha2), x2),
                Region::below};
    if (x1 > x2)
        return {pdf(p.base(p.alpha1), x1) * pdf(p.base(p.alpha2 + p.alpha3), x2),
                Region::above};
    return {diagonal_density(p, x1), Region::diagonal};
}

double diagonal_density(const BegwgParams& p, double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("diagonal_density: x must be positive");
    return std::exp(log_diagonal_density(p, x));
}

double singular_mass(const BegwgParams& p, const QuadratureConfig& cfg) {
    const double s = p.alpha_sum();
    // cut where the all-factor CDF has absorbed all but 1e-13 of the mass;
    // the remaining diagonal mass is below that by construction
    const double hi = quantile(p.base(s), 1.0 - 1e-13, cfg);
    const double kappa = (p.b + p.d) * s;
    auto f3 = [&p](double x) { return diagonal_density(p, x); };
    const IntegrationResult r = integrate_from_zero(f3, hi, kappa, cfg);
    if (!r.converged)
        throw ConvergenceError("singular_mass: quadrature did not converge");
    return r.value;
}

double marginal_pdf(const BegwgParams& p, int which, double x) {
    return pdf(p.marginal(which), x);
}

double marginal_cdf(const BegwgParams& p, int which, double x) {
    return cdf(p.marginal(which), x);
}

RegionValue conditional_pdf(const BegwgParams& p, int i, double xi, double xj) {
    if (i != 1 && i != 2)
        throw std::invalid_argument("conditional_pdf: i must be 1 or 2");
    require_positive_coords(xi, xj, "conditional_pdf");
    const int j = 3 - i;
    const double denom = marginal_pdf(p, j, xj);
    if (!(denom > 0.0) || !std::isfinite(denom))
        throw std::domain_error(
            "conditional_pdf: conditioning marginal density vanishes");
    const RegionValue num = i == 1 ? joint_pdf(p, xi, xj) : joint_pdf(p, xj, xi);
    const Region reg = xi < xj   ? Region::below
                       : xi > xj ? Region::above
                                 : Region::diagonal;
    return {num.value / denom, reg};
}

double conditional_pdf_as_printed(const BegwgParams& p, int i, double xi,
                                  double xj) {
    if (i != 1 && i != 2)
        throw std::invalid_argument("conditional_pdf_as_printed: i must be 1 or 2");
    require_positive_coords(xi, xj, "conditional_pdf_as_printed");
    const EgwgParams base1 = p.base(1.0);
    const double ai = i == 1 ? p.alpha1 : p.alpha2;
    const double aj = i == 1 ? p.alpha2 : p.alpha1;
    const double shape_i = ai + p.alpha3;
    const double shape_j = aj + p.alpha3;
    if (xi < xj) {
        const double lui = detail::log_base_cdf(base1, xi);
        const double luj = detail::log_base_cdf(base1, xj);
        return (aj * shape_i / shape_j) * detail::gamma_factor(base1, xi) *
               std::exp((shape_i - 1.0) * lui - p.alpha3 * luj);
    }
    if (xi > xj) {
        const double lui = detail::log_base_cdf(base1, xi);
        return ai * detail::gamma_factor(base1, xi) *
               std::exp((ai - 1.0) * lui);
    }
    // diagonal branch exactly as published: no dependence on i, exponent
    // alpha1 - 1, denominator alpha2 + alpha3
    const double luj = detail::log_base_cdf(base1, xj);
    return p.alpha3 * std::exp((p.alpha1 - 1.0) * luj) /
           (p.alpha2 + p.alpha3);
}

double min_cdf(const BegwgParams& p, double t) {
    if (!std::isfinite(t) || t < 0.0)
        throw std::domain_error("min_cdf: t must be a finite non-negative real");
    if (t == 0.0) return 0.0;
    const double lu = detail::log_base_cdf(p.base(1.0), t);
    return std::exp((p.alpha1 + p.alpha3) * lu) +
           std::exp((p.alpha2 + p.alpha3) * lu) -
           std::exp(p.alpha_sum() * lu);
}

double max_cdf(const BegwgParams& p, double t) {
    if (!std::isfinite(t) || t < 0.0)
        throw std::domain_error("max_cdf: t must be a finite non-negative real");
    if (t == 0.0) return 0.0;
    return std::exp(p.alpha_sum() * detail::log_base_cdf(p.base(1.0), t));
}

std::pair<double, double> sample_pair(const BegwgParams& p, UniformStream& rng,
                                      const QuadratureConfig& cfg) {
    const double w1 = rng.next();
    const double w2 = rng.next();
    const double w3 = rng.next();
    const double u1 = quantile(p.base(p.alpha1), w1, cfg);
    const double u2 = quantile(p.base(p.alpha2), w2, cfg);
    const double u3 = quantile(p.base(p.alpha3), w3, cfg);
    return {std::max(u1, u3), std::max(u2, u3)};
}

std::vector<std::pair<double, double>> sample(const BegwgParams& p,
                                              UniformStream& rng,
                                              std::size_t n,
                                              const QuadratureConfig& cfg) {
    std::vector<std::pair<double, double>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample_pair(p, rng, cfg));
    return out;
}

MassSplit total_mass(const BegwgParams& p, const QuadratureConfig& cfg) {
    // iterated quadrature: the inner integral runs up to the diagonal, the
    // outer one over the off-diagonal coordinate with a survival tail cut
    QuadratureConfig inner_cfg = cfg;
    inner_cfg.quad_abs_tol = cfg.quad_abs_tol * 0.01;
    QuadratureConfig outer_cfg = cfg;
    outer_cfg.quad_abs_tol = cfg.quad_abs_tol * 10.0;

    const double bd = p.b + p.d;
    auto one_side = [&](double shape_inner, double shape_outer) {
        const EgwgParams inner = p.base(shape_inner);
        const EgwgParams outer = p.base(shape_outer);
        const double hi = quantile(outer, 1.0 - 1e-10, cfg);
        auto integrand = [&](double t) {
            auto inner_pdf = [&inner](double x) { return pdf(inner, x); };
            const IntegrationResult in =
                integrate_from_zero(inner_pdf, t, bd * shape_inner, inner_cfg);
            return in.value * pdf(outer, t);
        };
        const IntegrationResult out = integrate_from_zero(
            integrand, hi, bd * (shape_inner + shape_outer), outer_cfg);
        if (!out.converged)
            throw ConvergenceError("total_mass: quadrature did not converge");
        return out.value;
    };

    MassSplit m;
    m.below = one_side(p.alpha1 + p.alpha3, p.alpha2);
    m.above = one_side(p.alpha2 + p.alpha3, p.alpha1);
    m.diagonal = singular_mass(p, cfg);
    m.total = m.below + m.above + m.diagonal;
    return m;
}

}  // namespace begwg
