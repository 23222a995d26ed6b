#include "begwg/egwg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace begwg {

namespace {

void require_positive_finite(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0)
        throw std::domain_error(std::string("EgwgParams: ") + name +
                                " must be a positive finite real");
}

// log(1 - e^{-g}) for g > 0, switching forms at ln 2 to stay accurate on
// both ends.
double log1m_exp_neg(double g) {
    if (g <= 0.0) return -std::numeric_limits<double>::infinity();
    return g < 0.6931471805599453 ? std::log(-std::expm1(-g))
                                  : std::log1p(-std::exp(-g));
}

// log G(x) as a function of s = ln x, plus its derivative in s; the solver
// for quantiles works on this monotone pair.
double log_g_of_s(const EgwgParams& p, double s) {
    const double y = p.c * std::exp(p.d * s);
    return std::log(p.a) + p.b * s + detail::log_expm1(y);
}

double dlog_g_ds(const EgwgParams& p, double s) {
    const double y = p.c * std::exp(p.d * s);
    if (y > 33.0) return p.b + p.d * y;
    return p.b + p.d * y / -std::expm1(-y);
}

// Solves log G(x) = log_t for x > 0 via bracketing in x plus safeguarded
// Newton on s = ln x.
double solve_log_g(const EgwgParams& p, double log_t,
                   const QuadratureConfig& cfg) {
    double shi = 0.0;
    double slo = 0.0;
    if (log_g_of_s(p, 0.0) < log_t) {
        int doublings = 0;
        double x = 1.0;
        while (true) {
            slo = std::log(x);
            x *= 2.0;
            if (!std::isfinite(x) || ++doublings > cfg.max_bracket_doublings)
                throw ConvergenceError("quantile: bracket expansion exceeded bound");
            shi = std::log(x);
            if (log_g_of_s(p, shi) >= log_t) break;
        }
    } else {
        int halvings = 0;
        double x = 1.0;
        while (true) {
            shi = std::log(x);
            x *= 0.5;
            if (x == 0.0 || ++halvings > cfg.max_bracket_doublings)
                throw ConvergenceError("quantile: bracket contraction exceeded bound");
            slo = std::log(x);
            if (log_g_of_s(p, slo) <= log_t) break;
        }
    }
    double s = 0.5 * (slo + shi);
    const double rtol = 1e-15 * std::max(1.0, std::fabs(log_t));
    for (int it = 0; it < 200; ++it) {
        const double r = log_g_of_s(p, s) - log_t;
        if (std::fabs(r) <= rtol) return std::exp(s);
        if (r > 0.0)
            shi = s;
        else
            slo = s;
        const double step = r / dlog_g_ds(p, s);
        double snew = s - step;
        if (!(snew > slo && snew < shi)) snew = 0.5 * (slo + shi);
        if (snew == s) return std::exp(s);
        s = snew;
    }
    throw ConvergenceError("quantile: root refinement did not converge");
}

}  // namespace

EgwgParams::EgwgParams(double a_, double b_, double c_, double d_,
                       double alpha_)
    : a(a_), b(b_), c(c_), d(d_), alpha(alpha_) {
    require_positive_finite(a, "a");
    require_positive_finite(b, "b");
    require_positive_finite(c, "c");
    require_positive_finite(d, "d");
    require_positive_finite(alpha, "alpha");
}

double cdf(const EgwgParams& p, double x) {
    if (!std::isfinite(x) || x < 0.0)
        throw std::domain_error("cdf: x must be a finite non-negative real");
    if (x == 0.0) return 0.0;
    return std::exp(p.alpha * detail::log_base_cdf(p, x));
}

double survival(const EgwgParams& p, double x) {
    if (!std::isfinite(x) || x < 0.0)
        throw std::domain_error("survival: x must be a finite non-negative real");
    if (x == 0.0) return 1.0;
    return -std::expm1(p.alpha * detail::log_base_cdf(p, x));
}

double log_pdf(const EgwgParams& p, double x) {
    if (!(x > 0.0)) throw std::domain_error("log_pdf: x must be positive");
    const double y = p.c * std::pow(x, p.d);
    const double g = p.a * std::pow(x, p.b) * std::expm1(y);
    const double w = (p.c * p.d / p.b) * std::pow(x, p.d) - std::expm1(-y);
    const double lu = log1m_exp_neg(g);
    const double tail = p.alpha == 1.0 ? 0.0 : (p.alpha - 1.0) * lu;
    return std::log(p.a * p.b * p.alpha) + (p.b - 1.0) * std::log(x) - g + y +
           std::log(w) + tail;
}

double pdf(const EgwgParams& p, double x) {
    if (std::isnan(x) || x < 0.0)
        throw std::domain_error("pdf: x must be non-negative");
    if (x == 0.0) {
        // continuous extension; the density behaves like x^(kappa-1) here
        const double kappa = (p.b + p.d) * p.alpha;
        if (kappa > 1.0) return 0.0;
        if (kappa == 1.0) return std::pow(p.a * p.c, p.alpha);
        return std::numeric_limits<double>::infinity();
    }
    return std::exp(log_pdf(p, x));
}

double hazard(const EgwgParams& p, double x) {
    if (!(x > 0.0)) throw std::domain_error("hazard: x must be positive");
    const double lu = detail::log_base_cdf(p, x);
    const double log_surv = std::log(-std::expm1(p.alpha * lu));
    return std::exp(log_pdf(p, x) - log_surv);
}

double quantile(const EgwgParams& p, double u, const QuadratureConfig& cfg) {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("quantile: u must lie in (0,1)");
    // invert F = u: G(x) = -log(1 - u^(1/alpha))
    const double lq = std::log(u) / p.alpha;
    double log_t;
    if (lq < -1.0) {
        const double q = std::exp(lq);
        const double t = -std::log1p(-q);
        log_t = q == 0.0 ? lq : std::log(t);
    } else {
        log_t = std::log(-std::log(-std::expm1(lq)));
    }
    return solve_log_g(p, log_t, cfg);
}

std::vector<double> sample(const EgwgParams& p, UniformStream& rng,
                           std::size_t n, const QuadratureConfig& cfg) {
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(quantile(p, rng.next(), cfg));
    return out;
}

namespace detail {

double big_g(const EgwgParams& p, double x) {
    return p.a * std::pow(x, p.b) * std::expm1(p.c * std::pow(x, p.d));
}

double log_base_cdf(const EgwgParams& p, double x) {
    return log1m_exp_neg(big_g(p, x));
}

double bracket_w(const EgwgParams& p, double x) {
    const double y = p.c * std::pow(x, p.d);
    return (p.c * p.d / p.b) * std::pow(x, p.d) - std::expm1(-y);
}

double gamma_factor(const EgwgParams& p, double x) {
    const double y = p.c * std::pow(x, p.d);
    const double g = p.a * std::pow(x, p.b) * std::expm1(y);
    return p.a * p.b * std::pow(x, p.b - 1.0) * std::exp(y - g) *
           bracket_w(p, x);
}

double x_at_big_g(const EgwgParams& p, double t, const QuadratureConfig& cfg) {
    if (!(t > 0.0)) throw std::domain_error("x_at_big_g: t must be positive");
    return solve_log_g(p, std::log(t), cfg);
}

}  // namespace detail

}  // namespace begwg
