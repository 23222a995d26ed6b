#include "begwg/moments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace begwg {

namespace {

void validate_ctl(const SeriesControl& ctl) {
    if (!(ctl.tol > 0.0) || ctl.max_terms_per_index < 1 ||
        ctl.min_tail_checks < 1)
        throw std::invalid_argument("SeriesControl: tol > 0, max_terms_per_index >= 1, min_tail_checks >= 1");
}

// One term of the published quadruple series, evaluated through logs.
// `variant` selects I1, I2 or I3, which differ in the X base and in the
// gamma/exponent arguments. Non-finite results are returned as-is so the
// caller can flag divergence.
double series_term(const EgwgParams& p, int r, int variant, int m, int j,
                   int k, int l, double log_abs_binom_m, double sign_binom_m) {
    const double a = p.a, b = p.b, c = p.c, d = p.d;
    const double X = variant == 2 ? c * j : c * (1.0 + j);
    double exponent, gamma_arg;
    if (variant == 3) {
        exponent = (r + b * (j + 1.0) + (l + 1.0) * d) / d;
        gamma_arg = (r + b * (j + 1.0) + l * d) / d + 1.0;
    } else {
        exponent = (r + b * (j + 1.0) + l * d) / d;
        gamma_arg = (r + b * (j + 1.0) + d * (l - 1.0)) / d + 1.0;
    }
    const double log_x_pow = l == 0 ? 0.0 : l * std::log(X);
    const double log_cjk = std::lgamma(j + 1.0) - std::lgamma(k + 1.0) -
                           std::lgamma(j - k + 1.0);
    const double log_mag = log_x_pow + j * std::log(a * (1.0 + m)) -
                           std::lgamma(j + 1.0) - std::lgamma(l + 1.0) -
                           std::log(d) - exponent * std::log(c * k) + log_cjk +
                           log_abs_binom_m + std::lgamma(gamma_arg);
    const double sign = ((m + j + k) % 2 == 0 ? 1.0 : -1.0) * sign_binom_m;
    return sign * std::exp(log_mag);
}

struct SeriesState {
    std::uint64_t terms = 0;
    bool broken = false;  // non-finite term, runaway growth, or budget blown
};

// Inner (j,k,l) triple sum of one variant at fixed m; signed terms are
// appended to `batch` for sorted accumulation by the caller.
void accumulate_variant(const EgwgParams& p, int r, int variant, int m,
                        double log_abs_binom_m, double sign_binom_m,
                        const SeriesControl& ctl, std::vector<double>& batch,
                        SeriesState& st) {
    int j_quiet = 0;
    for (int j = 0; j < ctl.max_terms_per_index && !st.broken; ++j) {
        double j_slice = 0.0;
        for (int k = 0; k <= j && !st.broken; ++k) {
            int l_quiet = 0, l_growth = 0;
            double prev_mag = std::numeric_limits<double>::infinity();
            bool l_closed = false;
            for (int l = 0; l < ctl.max_terms_per_index; ++l) {
                const double term = series_term(p, r, variant, m, j, k, l,
                                                log_abs_binom_m, sign_binom_m);
                ++st.terms;
                if (!std::isfinite(term)) {
                    st.broken = true;
                    break;
                }
                batch.push_back(term);
                const double mag = std::fabs(term);
                j_slice += mag;
                if (mag < ctl.tol) {
                    if (++l_quiet >= ctl.min_tail_checks) {
                        l_closed = true;
                        break;
                    }
                } else {
                    l_quiet = 0;
                }
                if (mag > prev_mag) {
                    if (++l_growth >= 8) {
                        st.broken = true;
                        break;
                    }
                } else {
                    l_growth = 0;
                }
                prev_mag = mag;
            }
            if (!l_closed && !st.broken) st.broken = true;  // budget exhausted
        }
        if (st.broken) break;
        if (j_slice < ctl.tol) {
            if (++j_quiet >= ctl.min_tail_checks) break;
        } else {
            j_quiet = 0;
        }
        if (j == ctl.max_terms_per_index - 1 && j_quiet < ctl.min_tail_checks)
            st.broken = true;
    }
}

}  // namespace

double raw_moment_quadrature(const EgwgParams& p, double r,
                             const QuadratureConfig& cfg) {
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::domain_error("raw_moment_quadrature: r must be non-negative");
    const double hi = quantile(p, 1.0 - 1e-14, cfg);
    QuadratureConfig local = cfg;
    const double x90 = quantile(p, 0.9, cfg);
    local.quad_abs_tol = cfg.quad_abs_tol * std::max(1.0, std::pow(x90, r));
    auto f = [&p, r](double x) { return std::pow(x, r) * pdf(p, x); };
    const double kappa = r + (p.b + p.d) * p.alpha;
    const IntegrationResult q = integrate_from_zero(f, hi, kappa, local);
    if (!std::isfinite(q.value))
        throw std::overflow_error("raw_moment_quadrature: integrand overflowed");
    if (!q.converged)
        throw ConvergenceError(
            "raw_moment_quadrature: quadrature did not converge");
    return q.value;
}

double raw_moment_quadrature(const BegwgParams& p, int which, double r,
                             const QuadratureConfig& cfg) {
    return raw_moment_quadrature(p.marginal(which), r, cfg);
}

SeriesResult raw_moment_series(const EgwgParams& p, int r,
                               const SeriesControl& ctl) {
    if (r < 1) throw std::domain_error("raw_moment_series: r must be >= 1");
    validate_ctl(ctl);
    const double A = p.alpha;
    const double coef[3] = {1.0, -1.0, p.c * p.d / p.b};

    SeriesResult out;
    SeriesState st;
    double binom = 1.0;  // C(A-1, m), updated multiplicatively
    int m_quiet = 0;
    std::vector<double> batch;
    bool tail_reached = false;
    for (int m = 0; m < ctl.max_terms_per_index && !st.broken; ++m) {
        if (m > 0) binom *= (A - static_cast<double>(m)) / m;
        const double log_abs_binom =
            binom == 0.0 ? -std::numeric_limits<double>::infinity()
                         : std::log(std::fabs(binom));
        const double sign_binom = binom < 0.0 ? -1.0 : 1.0;
        batch.clear();
        for (int variant = 1; variant <= 3 && !st.broken; ++variant) {
            const std::size_t start = batch.size();
            accumulate_variant(p, r, variant, m, log_abs_binom, sign_binom, ctl,
                               batch, st);
            for (std::size_t i = start; i < batch.size(); ++i)
                batch[i] *= coef[variant - 1];
        }
        if (st.broken) {
            // keep the partial terms out of the reported value; a divergent
            // batch is not a usable partial sum
            break;
        }
        std::sort(batch.begin(), batch.end(),
                  [](double x, double y) { return std::fabs(x) < std::fabs(y); });
        double batch_sum = 0.0;
        for (double t : batch) batch_sum += t;
        out.value += batch_sum;
        if (std::fabs(batch_sum) < ctl.tol) {
            if (++m_quiet >= ctl.min_tail_checks) {
                tail_reached = true;
                break;
            }
        } else {
            m_quiet = 0;
        }
    }
    out.value *= p.a * p.b * A;
    out.terms_used = st.terms;
    out.converged = tail_reached && !st.broken;
    return out;
}

SeriesResult raw_moment_series(const BegwgParams& p, int which, int r,
                               const SeriesControl& ctl) {
    return raw_moment_series(p.marginal(which), r, ctl);
}

}  // namespace begwg
