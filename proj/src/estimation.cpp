#include "begwg/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace begwg {

namespace {

// Everything the likelihood needs from the data, collapsed to counts and
// sums of log F(x; 1) at the fixed base parameters. After this the fit is
// three-dimensional no matter how large the sample is.
struct SuffStats {
    double n1 = 0.0, n2 = 0.0, n3 = 0.0;
    double s1_g1 = 0.0, s2_g1 = 0.0;  // group 1: sum log-u over x1, x2
    double s1_g2 = 0.0, s2_g2 = 0.0;  // group 2
    double s3 = 0.0;                  // group 3 (tied coordinate)
    double constant = 0.0;            // alpha-free log density pieces
};

void check_observation(double x, std::size_t row) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("estimation: observation at row " +
                                std::to_string(row + 1) +
                                " must be a positive finite real");
}

SuffStats suff_stats(const BaseParams& fixed, const Classification& cls,
                     const PairedSample& s) {
    const EgwgParams base(fixed.a, fixed.b, fixed.c, fixed.d, 1.0);
    auto log_u = [&base](double x) { return detail::log_base_cdf(base, x); };
    auto base_term = [&](double x) {
        const double y = fixed.c * std::pow(x, fixed.d);
        return std::log(fixed.a * fixed.b) + (fixed.b - 1.0) * std::log(x) -
               detail::big_g(base, x) + y + std::log(detail::bracket_w(base, x));
    };
    SuffStats st;
    st.n1 = static_cast<double>(cls.n1);
    st.n2 = static_cast<double>(cls.n2);
    st.n3 = static_cast<double>(cls.n3);
    for (std::size_t i : cls.group1) {
        check_observation(s.x1[i], i);
        check_observation(s.x2[i], i);
        st.s1_g1 += log_u(s.x1[i]);
        st.s2_g1 += log_u(s.x2[i]);
        st.constant += base_term(s.x1[i]) + base_term(s.x2[i]);
    }
    for (std::size_t i : cls.group2) {
        check_observation(s.x1[i], i);
        check_observation(s.x2[i], i);
        st.s1_g2 += log_u(s.x1[i]);
        st.s2_g2 += log_u(s.x2[i]);
        st.constant += base_term(s.x1[i]) + base_term(s.x2[i]);
    }
    for (std::size_t i : cls.group3) {
        check_observation(s.x1[i], i);
        st.s3 += log_u(s.x1[i]);
        st.constant += base_term(s.x1[i]);
    }
    return st;
}

void check_alphas(const std::array<double, 3>& th) {
    for (double a : th)
        if (!(a > 0.0) || !std::isfinite(a))
            throw std::domain_error("estimation: alphas must be positive finite");
}

double loglik_from_stats(const std::array<double, 3>& th,
                         const SuffStats& st) {
    const double A = th[0] + th[2], B = th[1] + th[2];
    const double S = th[0] + th[1] + th[2];
    return st.n1 * (std::log(A) + std::log(th[1])) +
           st.n2 * (std::log(th[0]) + std::log(B)) + st.n3 * std::log(th[2]) +
           (A - 1.0) * st.s1_g1 + (th[1] - 1.0) * st.s2_g1 +
           (th[0] - 1.0) * st.s1_g2 + (B - 1.0) * st.s2_g2 +
           (S - 1.0) * st.s3 + st.constant;
}

std::array<double, 3> score_from_stats(const std::array<double, 3>& th,
                                       const SuffStats& st) {
    const double A = th[0] + th[2], B = th[1] + th[2];
    const double a_sum = st.s1_g1 + st.s1_g2 + st.s3;
    const double b_sum = st.s2_g1 + st.s2_g2 + st.s3;
    const double c_sum = st.s1_g1 + st.s2_g2 + st.s3;
    return {st.n1 / A + st.n2 / th[0] + a_sum,
            st.n1 / th[1] + st.n2 / B + b_sum,
            st.n1 / A + st.n2 / B + st.n3 / th[2] + c_sum};
}

// Root of the alpha3 score component at fixed (a1, a2). The component is
// strictly decreasing in alpha3, so a sign change brackets the unique root.
double profile_from_stats(double a1, double a2, const SuffStats& st) {
    if (!(a1 > 0.0) || !(a2 > 0.0) || !std::isfinite(a1) || !std::isfinite(a2))
        throw std::domain_error("profile_alpha3: alpha1, alpha2 must be positive finite");
    const double c_sum = st.s1_g1 + st.s2_g2 + st.s3;
    if (!(c_sum < 0.0))
        throw BoundaryError("profile_alpha3: score stays positive, no interior root");
    const bool has_ties = st.n3 > 0.0;
    auto s3 = [&](double a3) {
        return st.n1 / (a1 + a3) + st.n2 / (a2 + a3) +
               (has_ties ? st.n3 / a3 : 0.0) + c_sum;
    };
    double lo = 0.0;
    if (has_ties) {
        lo = 1e-12;
        while (!(s3(lo) > 0.0) && lo > 1e-290) lo *= 1e-6;
    } else if (!(st.n1 / a1 + st.n2 / a2 + c_sum > 0.0)) {
        // score already non-positive at the origin: the maximum sits on the
        // alpha3 = 0 boundary and the model collapses to independence
        throw BoundaryError("profile_alpha3: no positive root, boundary maximum");
    }
    double hi = std::max(1.0, 2.0 * lo);
    int doublings = 0;
    while (s3(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++doublings > 1100 || !std::isfinite(hi))
            throw ConvergenceError("profile_alpha3: bracket expansion failed");
    }
    double root = brent(s3, lo, hi, 1e-13, 200);
    for (int it = 0; it < 4; ++it) {
        const double f = s3(root);
        const double df = -(st.n1 / ((a1 + root) * (a1 + root)) +
                            st.n2 / ((a2 + root) * (a2 + root)) +
                            (has_ties ? st.n3 / (root * root) : 0.0));
        const double step = f / df;
        const double next = root - step;
        if (!(next > 0.0) || !std::isfinite(next)) break;
        root = next;
        if (std::fabs(step) <= 1e-16 * root) break;
    }
    return root;
}

ObservedInformation info_from_counts(const std::array<double, 3>& th,
                                     double n1, double n2, double n3) {
    const double A = th[0] + th[2], B = th[1] + th[2];
    ObservedInformation info;
    const double i11 = n1 / (A * A) + n2 / (th[0] * th[0]);
    const double i22 = n1 / (th[1] * th[1]) + n2 / (B * B);
    const double i33 = n1 / (A * A) + n2 / (B * B) + n3 / (th[2] * th[2]);
    const double i13 = n1 / (A * A);
    const double i23 = n2 / (B * B);
    info.matrix = {{{i11, 0.0, i13}, {0.0, i22, i23}, {i13, i23, i33}}};
    return info;
}

}  // namespace

Classification classify(const PairedSample& s, double tie_tol) {
    if (std::isnan(tie_tol) || tie_tol < 0.0)
        throw std::invalid_argument("classify: tie_tol must be non-negative");
    if (s.x1.size() != s.x2.size())
        throw std::invalid_argument("classify: ragged sample");
    Classification c;
    for (std::size_t i = 0; i < s.x1.size(); ++i) {
        const double d = s.x1[i] - s.x2[i];
        if (std::fabs(d) <= tie_tol)
            c.group3.push_back(i);
        else if (d < 0.0)
            c.group1.push_back(i);
        else
            c.group2.push_back(i);
    }
    c.n1 = c.group1.size();
    c.n2 = c.group2.size();
    c.n3 = c.group3.size();
    return c;
}

double log_likelihood(const std::array<double, 3>& alphas,
                      const BaseParams& fixed, const Classification& cls,
                      const PairedSample& s) {
    check_alphas(alphas);
    return loglik_from_stats(alphas, suff_stats(fixed, cls, s));
}

std::array<double, 3> score(const std::array<double, 3>& alphas,
                            const BaseParams& fixed, const Classification& cls,
                            const PairedSample& s) {
    check_alphas(alphas);
    return score_from_stats(alphas, suff_stats(fixed, cls, s));
}

double profile_alpha3(double alpha1, double alpha2, const BaseParams& fixed,
                      const Classification& cls, const PairedSample& s) {
    return profile_from_stats(alpha1, alpha2, suff_stats(fixed, cls, s));
}

ObservedInformation observed_information(const std::array<double, 3>& alphas,
                                         const Classification& cls) {
    check_alphas(alphas);
    return info_from_counts(alphas, static_cast<double>(cls.n1),
                            static_cast<double>(cls.n2),
                            static_cast<double>(cls.n3));
}

void covariance_and_ci(const ObservedInformation& info,
                       const std::array<double, 3>& alphas, double level,
                       std::array<std::array<double, 3>, 3>& cov_out,
                       std::array<Interval, 3>& ci_out,
                       std::array<Interval, 3>& ci_unclamped_out) {
    if (!(level > 0.0 && level < 1.0))
        throw std::domain_error("covariance_and_ci: level must lie in (0, 1)");
    const auto& M = info.matrix;
    double L[3][3] = {};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = M[i][j];
            for (int k = 0; k < j; ++k) sum -= L[i][k] * L[j][k];
            if (i == j) {
                if (!(sum > 0.0) || !std::isfinite(sum))
                    throw SingularMatrixError(
                        "covariance_and_ci: information matrix is not positive definite");
                L[i][i] = std::sqrt(sum);
            } else {
                L[i][j] = sum / L[j][j];
            }
        }
    }
    for (int col = 0; col < 3; ++col) {
        double y[3], x[3];
        for (int i = 0; i < 3; ++i) {
            double acc = col == i ? 1.0 : 0.0;
            for (int k = 0; k < i; ++k) acc -= L[i][k] * y[k];
            y[i] = acc / L[i][i];
        }
        for (int i = 2; i >= 0; --i) {
            double acc = y[i];
            for (int k = i + 1; k < 3; ++k) acc -= L[k][i] * x[k];
            x[i] = acc / L[i][i];
        }
        for (int i = 0; i < 3; ++i) cov_out[i][col] = x[i];
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const double v = 0.5 * (cov_out[i][j] + cov_out[j][i]);
            cov_out[i][j] = cov_out[j][i] = v;
        }
    const double z = normal_quantile(0.5 * (1.0 + level));
    for (int i = 0; i < 3; ++i) {
        const double half = z * std::sqrt(cov_out[i][i]);
        ci_unclamped_out[i] = {alphas[i] - half, alphas[i] + half};
        ci_out[i] = {std::max(0.0, alphas[i] - half), alphas[i] + half};
    }
}

InfoCriteria information_criteria(double log_lik, int k, std::size_t n) {
    if (k < 1) throw std::domain_error("information_criteria: k must be positive");
    if (n <= static_cast<std::size_t>(k) + 1)
        throw std::domain_error("information_criteria: requires n > k + 1");
    const double kd = k, nd = static_cast<double>(n);
    InfoCriteria ic;
    ic.aic = -2.0 * log_lik + 2.0 * kd;
    ic.caic = ic.aic + 2.0 * kd * (kd + 1.0) / (nd - kd - 1.0);
    ic.bic_paper = -log_lik + 0.5 * kd * std::log(nd);
    ic.bic_standard = -2.0 * log_lik + kd * std::log(nd);
    return ic;
}

FitResult fit_mle(const BaseParams& fixed, const PairedSample& s,
                  double tie_tol, const FitOptions& options) {
    if (s.x1.size() != s.x2.size())
        throw std::invalid_argument("fit_mle: ragged sample");
    if (s.size() == 0) throw std::domain_error("fit_mle: empty sample");
    const Classification cls = classify(s, tie_tol);
    const int nonempty = (cls.n1 > 0) + (cls.n2 > 0) + (cls.n3 > 0);
    if (nonempty < 2)
        throw BoundaryError(
            "fit_mle: fewer than two nonempty groups, maximum lies on the boundary");
    const SuffStats st = suff_stats(fixed, cls, s);
    const double n = static_cast<double>(s.size());

    double a1, a2;
    if (options.init) {
        a1 = (*options.init)[0];
        a2 = (*options.init)[1];
        if (!(a1 > 0.0) || !(a2 > 0.0))
            throw std::domain_error("fit_mle: init must be positive");
    } else {
        a1 = st.n1 / n + 0.01;
        a2 = st.n2 / n + 0.01;
    }
    double a3 = profile_from_stats(a1, a2, st);
    double ll = loglik_from_stats({a1, a2, a3}, st);

    bool converged = false;
    int iter = 0;
    double step_norm = std::numeric_limits<double>::infinity();
    for (; iter < options.max_iter; ++iter) {
        const auto sc = score_from_stats({a1, a2, a3}, st);
        const double score_norm =
            std::max({std::fabs(sc[0]), std::fabs(sc[1]), std::fabs(sc[2])});
        if (score_norm < options.score_tol && step_norm < options.step_tol) {
            converged = true;
            break;
        }
        // Newton on (a1, a2) along the profiled ridge: the Jacobian of the
        // profiled score is the negated Schur complement of the a3 block.
        const double A = a1 + a3, B = a2 + a3;
        const double i11 = st.n1 / (A * A) + st.n2 / (a1 * a1);
        const double i22 = st.n1 / (a2 * a2) + st.n2 / (B * B);
        const double i33 =
            st.n1 / (A * A) + st.n2 / (B * B) + st.n3 / (a3 * a3);
        const double i13 = st.n1 / (A * A);
        const double i23 = st.n2 / (B * B);
        const double j11 = -(i11 - i13 * i13 / i33);
        const double j12 = -(-i13 * i23 / i33);
        const double j22 = -(i22 - i23 * i23 / i33);
        const double det = j11 * j22 - j12 * j12;
        if (!(std::fabs(det) > 1e-300) || !std::isfinite(det))
            throw SingularMatrixError("fit_mle: singular profiled Hessian");
        const double d1 = (-sc[0] * j22 + sc[1] * j12) / det;
        const double d2 = (sc[0] * j12 - sc[1] * j11) / det;

        double scale = 1.0;
        int halvings = 0;
        while (true) {
            const double na1 = a1 + scale * d1;
            const double na2 = a2 + scale * d2;
            bool ok = na1 > 0.0 && na2 > 0.0;
            double na3 = a3, nll = ll;
            if (ok) {
                try {
                    na3 = profile_from_stats(na1, na2, st);
                    nll = loglik_from_stats({na1, na2, na3}, st);
                    ok = std::isfinite(nll) &&
                         nll >= ll - 1e-9 * (1.0 + std::fabs(ll));
                } catch (const BoundaryError&) {
                    ok = false;
                }
            }
            if (ok) {
                step_norm = std::max({std::fabs(na1 - a1), std::fabs(na2 - a2),
                                      std::fabs(na3 - a3)});
                a1 = na1;
                a2 = na2;
                a3 = na3;
                ll = nll;
                break;
            }
            scale *= 0.5;
            if (++halvings > 30)
                throw BoundaryError(
                    "fit_mle: line search collapsed onto the parameter boundary");
        }
    }

    FitResult out;
    out.alpha_hat = {a1, a2, a3};
    out.log_likelihood = ll;
    const InfoCriteria ic = information_criteria(ll, 3, s.size());
    out.aic = ic.aic;
    out.caic = ic.caic;
    out.bic_paper = ic.bic_paper;
    out.bic_standard = ic.bic_standard;
    out.converged = converged;
    out.iterations = iter;
    const ObservedInformation info = info_from_counts(out.alpha_hat, st.n1, st.n2, st.n3);
    try {
        covariance_and_ci(info, out.alpha_hat, options.ci_level, out.covariance,
                          out.ci, out.ci_unclamped);
    } catch (const SingularMatrixError&) {
        if (converged) throw;
        const double qnan = std::numeric_limits<double>::quiet_NaN();
        for (auto& row : out.covariance) row.fill(qnan);
        for (int i = 0; i < 3; ++i) {
            out.ci[i] = {qnan, qnan};
            out.ci_unclamped[i] = {qnan, qnan};
        }
    }
    return out;
}

}  // namespace begwg
