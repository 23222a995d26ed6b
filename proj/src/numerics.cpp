#include "begwg/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace begwg {

namespace {

// Gauss-Kronrod 7-15 abscissae and weights on [-1,1]; Gauss points sit at the
// odd Kronrod indices.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
    double lo, hi, value, err;
};

Panel gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double h = 0.5 * (hi - lo);
    const double mid = 0.5 * (lo + hi);
    const double fc = f(mid);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = f(mid - dx);
        const double f2 = f(mid + dx);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    Panel p;
    p.lo = lo;
    p.hi = hi;
    p.value = resk * h;
    p.err = std::fabs((resk - resg) * h);
    if (!std::isfinite(p.err)) p.err = std::numeric_limits<double>::infinity();
    return p;
}

struct PanelWorse {
    bool operator()(const Panel& a, const Panel& b) const {
        return a.err < b.err;
    }
};

}  // namespace

IntegrationResult integrate(const std::function<double(double)>& f, double lo,
                            double hi, double abs_tol, int max_intervals) {
    IntegrationResult out;
    if (!(lo < hi)) {
        out.converged = true;
        return out;
    }
    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> active;
    std::vector<Panel> frozen;
    active.push(gk15(f, lo, hi));
    int panels = 1;
    double total_err = active.top().err;
    while (total_err > abs_tol && panels < max_intervals && !active.empty()) {
        const Panel worst = active.top();
        active.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(worst.lo < mid && mid < worst.hi)) {
            // at floating-point resolution; cannot refine further
            frozen.push_back(worst);
            continue;
        }
        const Panel left = gk15(f, worst.lo, mid);
        const Panel right = gk15(f, mid, worst.hi);
        total_err += left.err + right.err - worst.err;
        active.push(left);
        active.push(right);
        ++panels;
    }
    while (!active.empty()) {
        frozen.push_back(active.top());
        active.pop();
    }
    // fixed summation order so results do not depend on refinement history
    std::sort(frozen.begin(), frozen.end(),
              [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
    double value = 0.0, err = 0.0;
    for (const Panel& p : frozen) {
        value += p.value;
        err += p.err;
    }
    out.value = value;
    out.error = err;
    out.converged = err <= abs_tol;
    return out;
}

IntegrationResult integrate_from_zero(const std::function<double(double)>& f,
                                      double hi, double kappa,
                                      const QuadratureConfig& cfg) {
    if (!(hi > 0.0)) {
        IntegrationResult r;
        r.converged = true;
        return r;
    }
    // integrand ~ x^(kappa-1) at the origin; x = t^p makes that t^(p*kappa-1)
    const double p = std::clamp(3.0 / kappa, 1.0, 64.0);
    if (p == 1.0)
        return integrate(f, 0.0, hi, cfg.quad_abs_tol, cfg.max_intervals);
    const double thi = std::pow(hi, 1.0 / p);
    auto g = [&f, p](double t) {
        if (t <= 0.0) return 0.0;
        const double x = std::pow(t, p);
        if (x < 1e-300) return 0.0;
        return f(x) * p * std::pow(t, p - 1.0);
    };
    return integrate(g, 0.0, thi, cfg.quad_abs_tol, cfg.max_intervals);
}

double brent(const std::function<double(double)>& f, double lo, double hi,
             double tol, int max_iter) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw std::invalid_argument("brent: root is not bracketed");
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            e = d = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 =
            2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) +
            0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p <
                std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if (std::fabs(d) > tol1)
            b += d;
        else
            b += (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    throw ConvergenceError("brent: maximum iterations exceeded");
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("normal_quantile: p must lie in (0,1)");
    static constexpr double A[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double B[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double C[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double D[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
            ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) *
            q /
            (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
            ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
    }
    // one Halley step against erfc brings the rational estimate to a few ulps
    constexpr double kSqrt2 = 1.4142135623730951;
    constexpr double kSqrt2Pi = 2.5066282746310002;
    const double e = 0.5 * std::erfc(-x / kSqrt2) - p;
    const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

double ks_statistic(std::vector<double> xs,
                    const std::function<double(double)>& cdf) {
    if (xs.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double F = cdf(xs[i]);
        d = std::max(d, std::max(F - static_cast<double>(i) / n,
                                 static_cast<double>(i + 1) / n - F));
    }
    return d;
}

namespace detail {

double log_expm1(double y) {
    if (y <= 0.5) return std::log(std::expm1(y));
    return y + std::log1p(-std::exp(-y));
}

}  // namespace detail

}  // namespace begwg
