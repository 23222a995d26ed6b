#include "begwg/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace begwg {

namespace {

void require_positive_coords(double x1, double x2, const char* who) {
    if (!(x1 > 0.0) || !(x2 > 0.0) || !std::isfinite(x1) || !std::isfinite(x2))
        throw std::domain_error(std::string(who) +
                                ": coordinates must be positive finite reals");
}

}  // namespace

double joint_survival(const BegwgParams& p, double x1, double x2) {
    if (!std::isfinite(x1) || !std::isfinite(x2) || x1 < 0.0 || x2 < 0.0)
        throw std::domain_error(
            "joint_survival: coordinates must be finite non-negative reals");
    const EgwgParams base1 = p.base(1.0);
    const double ninf = -std::numeric_limits<double>::infinity();
    const double lu1 = x1 > 0.0 ? detail::log_base_cdf(base1, x1) : ninf;
    const double lu2 = x2 > 0.0 ? detail::log_base_cdf(base1, x2) : ninf;
    // positive-term rearrangement of 1 - F1 - F2 + F, one branch per side of
    // the diagonal, no cancellation anywhere
    if (x1 <= x2) {
        return -std::expm1((p.alpha1 + p.alpha3) * lu1) * -std::expm1(p.alpha2 * lu2) +
               std::exp(p.alpha2 * lu2) * -std::expm1(p.alpha3 * lu2);
    }
    return -std::expm1((p.alpha2 + p.alpha3) * lu2) * -std::expm1(p.alpha1 * lu1) +
           std::exp(p.alpha1 * lu1) * -std::expm1(p.alpha3 * lu1);
}

RegionValue bvfr(const BegwgParams& p, double x1, double x2) {
    require_positive_coords(x1, x2, "bvfr");
    const double r = joint_survival(p, x1, x2);
    if (!(r > 0.0))
        throw std::domain_error("bvfr: joint survival underflows to zero");
    const RegionValue f = joint_pdf(p, x1, x2);
    return {f.value / r, f.region};
}

double min_pdf(const BegwgParams& p, double t) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::domain_error("min_pdf: t must be positive");
    return pdf(p.base(p.alpha1 + p.alpha3), t) +
           pdf(p.base(p.alpha2 + p.alpha3), t) - pdf(p.base(p.alpha_sum()), t);
}

HazardVector cox_vector(const BegwgParams& p, double x1, double x2) {
    require_positive_coords(x1, x2, "cox_vector");
    const double z = std::min(x1, x2);
    const double surv_min = joint_survival(p, z, z);
    if (!(surv_min > 0.0))
        throw std::domain_error("cox_vector: min-survival underflows to zero");
    HazardVector h;
    h.h_diag = min_pdf(p, z) / surv_min;
    h.h12 = hazard(p.base(p.alpha1), x1);
    h.h21 = hazard(p.base(p.alpha2), x2);
    return h;
}

GradientPair hazard_gradient(const BegwgParams& p, double x1, double x2) {
    require_positive_coords(x1, x2, "hazard_gradient");
    if (x1 == x2)
        throw std::domain_error(
            "hazard_gradient: undefined on the diagonal (one-sided derivatives differ)");
    const double r = joint_survival(p, x1, x2);
    if (!(r > 0.0))
        throw std::domain_error("hazard_gradient: joint survival underflows");
    const EgwgParams base1 = p.base(1.0);
    const double lu1 = detail::log_base_cdf(base1, x1);
    const double lu2 = detail::log_base_cdf(base1, x2);
    const double gam1 = detail::gamma_factor(base1, x1);
    const double gam2 = detail::gamma_factor(base1, x2);
    const double A = p.alpha1 + p.alpha3;
    const double B = p.alpha2 + p.alpha3;
    GradientPair out;
    if (x1 < x2) {
        out.g1 = A * gam1 * std::exp((A - 1.0) * lu1) *
                 -std::expm1(p.alpha2 * lu2) / r;
        out.g2 = gam2 * std::exp((B - 1.0) * lu2) *
                 (p.alpha3 +
                  p.alpha2 * -std::expm1(A * lu1 - p.alpha3 * lu2)) /
                 r;
    } else {
        out.g2 = B * gam2 * std::exp((B - 1.0) * lu2) *
                 -std::expm1(p.alpha1 * lu1) / r;
        out.g1 = gam1 * std::exp((A - 1.0) * lu1) *
                 (p.alpha3 +
                  p.alpha1 * -std::expm1(B * lu2 - p.alpha3 * lu1)) /
                 r;
    }
    return out;
}

RegionValue reversed_hazard(const BegwgParams& p, double x1, double x2) {
    require_positive_coords(x1, x2, "reversed_hazard");
    const double F = joint_cdf(p, x1, x2);
    if (!(F > 0.0))
        throw std::domain_error("reversed_hazard: joint cdf underflows to zero");
    const RegionValue f = joint_pdf(p, x1, x2);
    return {f.value / F, f.region};
}

GradientPair reversed_hazard_gradient(const BegwgParams& p, double x1,
                                      double x2) {
    require_positive_coords(x1, x2, "reversed_hazard_gradient");
    const EgwgParams base1 = p.base(1.0);
    auto component = [&](double shape, double x) {
        // marginal pdf over marginal cdf, reduced so nothing underflows:
        // shape*gamma(x)/u(x) with u the base CDF
        const double u = -std::expm1(-detail::big_g(base1, x));
        return shape * detail::gamma_factor(base1, x) / u;
    };
    return {component(p.alpha1 + p.alpha3, x1),
            component(p.alpha2 + p.alpha3, x2)};
}

double mean_waiting_time_marginal(const BegwgParams& p, int which, double t,
                                  const QuadratureConfig& cfg) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::domain_error("mean_waiting_time_marginal: t must be positive");
    const EgwgParams m = p.marginal(which);
    const double ft = cdf(m, t);
    if (!(ft > 0.0))
        throw std::domain_error(
            "mean_waiting_time_marginal: marginal cdf underflows at t");
    auto f = [&m](double x) { return cdf(m, x); };
    const double kappa = (m.b + m.d) * m.alpha + 1.0;
    const IntegrationResult r = integrate_from_zero(f, t, kappa, cfg);
    if (!r.converged)
        throw ConvergenceError(
            "mean_waiting_time_marginal: quadrature did not converge");
    return r.value / ft;
}

double mean_waiting_time_joint(const BegwgParams& p, double t1, double t2,
                               const QuadratureConfig& cfg) {
    if (!(t1 > 0.0) || !(t2 > 0.0) || !std::isfinite(t1) || !std::isfinite(t2))
        throw std::domain_error(
            "mean_waiting_time_joint: endpoints must be positive");
    const double ft = joint_cdf(p, t1, t2);
    if (!(ft > 0.0))
        throw std::domain_error("mean_waiting_time_joint: joint cdf underflows");
    QuadratureConfig inner_cfg = cfg;
    inner_cfg.quad_abs_tol = cfg.quad_abs_tol * 0.01;
    QuadratureConfig outer_cfg = cfg;
    outer_cfg.quad_abs_tol = cfg.quad_abs_tol * std::max(1.0, t1 * t2);
    const double bd = p.b + p.d;
    auto inner = [&](double x1) {
        auto fx2 = [&](double x2) { return joint_cdf(p, x1, x2); };
        const double split = std::min(x1, t2);
        const IntegrationResult lo = integrate_from_zero(
            fx2, split, bd * (p.alpha2 + p.alpha3) + 1.0, inner_cfg);
        double v = lo.value;
        if (split < t2) {
            const IntegrationResult hi = integrate(
                fx2, split, t2, inner_cfg.quad_abs_tol, inner_cfg.max_intervals);
            v += hi.value;
        }
        return v;
    };
    const IntegrationResult outer = integrate_from_zero(
        inner, t1, bd * (p.alpha1 + p.alpha3) + 1.0, outer_cfg);
    if (!outer.converged)
        throw ConvergenceError(
            "mean_waiting_time_joint: quadrature did not converge");
    return outer.value / ft;
}

}  // namespace begwg
