#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "begwg/egwg.hpp"
#include "begwg/numerics.hpp"
#include "begwg/rng.hpp"

namespace begwg {

// Bivariate extension built from three independent latent variables
// U1, U2, U3 with shared (a,b,c,d) and shapes alpha1, alpha2, alpha3:
// X1 = max(U1, U3), X2 = max(U2, U3). The shared factor U3 puts positive
// probability mass on the diagonal x1 = x2.
struct BegwgParams {
    double a, b, c, d, alpha1, alpha2, alpha3;

    BegwgParams(double a_, double b_, double c_, double d_, double alpha1_,
                double alpha2_, double alpha3_);

    double alpha_sum() const { return alpha1 + alpha2 + alpha3; }

    // Univariate view with the shared base and a caller-chosen shape.
    EgwgParams base(double alpha) const { return {a, b, c, d, alpha}; }

    // Marginal of X_which: shape alpha_which + alpha3.
    EgwgParams marginal(int which) const;
};

enum class Region { below, above, diagonal };

const char* region_name(Region r);

struct RegionValue {
    double value;
    Region region;
};

double joint_cdf(const BegwgParams& p, double x1, double x2);

// Three-branch joint density. Off the diagonal the value is a 2-D density;
// on the diagonal it is the 1-D density of the singular component along
// the line x1 = x2. The units differ, hence the region tag.
RegionValue joint_pdf(const BegwgParams& p, double x1, double x2);

// The 1-D density of the singular component at x (the diagonal branch).
double diagonal_density(const BegwgParams& p, double x);

// P(X1 = X2), computed by adaptive quadrature of the diagonal density.
double singular_mass(const BegwgParams& p, const QuadratureConfig& cfg = {});

double marginal_pdf(const BegwgParams& p, int which, double x);

double marginal_cdf(const BegwgParams& p, int which, double x);

// Conditional density of X_i given X_j = xj, computed as the ratio
// joint_pdf / marginal_pdf(j). On the diagonal the value is the conditional
// probability mass P(X_i = xj | X_j = xj), which is dimensionless.
RegionValue conditional_pdf(const BegwgParams& p, int i, double xi, double xj);

// Literal transcription of the published conditional branch formulas, kept
// only so tests can document where they disagree with the ratio form. The
// diagonal branch as printed does not integrate consistently; do not use
// this in computations.
double conditional_pdf_as_printed(const BegwgParams& p, int i, double xi,
                                  double xj);

// CDF of min(X1, X2).
double min_cdf(const BegwgParams& p, double t);

// CDF of max(X1, X2); equals joint_cdf(p, t, t).
double max_cdf(const BegwgParams& p, double t);

// One draw of (X1, X2). Consumes exactly three uniforms in fixed order, so
// pairs with the shared latent variable largest carry bitwise-equal
// coordinates.
std::pair<double, double> sample_pair(const BegwgParams& p, UniformStream& rng,
                                      const QuadratureConfig& cfg = {});

std::vector<std::pair<double, double>> sample(const BegwgParams& p,
                                              UniformStream& rng,
                                              std::size_t n,
                                              const QuadratureConfig& cfg = {});

// Total probability split across the two continuous regions and the
// diagonal; total should be 1 for any valid parameter set.
struct MassSplit {
    double below;
    double above;
    double diagonal;
    double total;
};

MassSplit total_mass(const BegwgParams& p, const QuadratureConfig& cfg = {});

}  // namespace begwg
