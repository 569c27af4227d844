#ifndef MANIKERN_RKHS_HPP
#define MANIKERN_RKHS_HPP

#include "manikern/kernels.hpp"
#include "manikern/manifold.hpp"

#include <Eigen/Dense>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace manikern {

/// A function represented by finitely many coefficients in the
/// Laplace-Beltrami eigenbasis, keyed by (level, index within level).
struct SpectralFunction {
    Manifold manifold;
    std::map<std::pair<int, int>, double> coeffs;

    double evaluate(const Point& m) const;
    double l2_norm_sq() const;
    int max_level() const;
};

struct GramMatrix {
    std::vector<Point> points;
    Eigen::MatrixXd entries;
    KernelSpec spec;
    double min_eig_bound;  // smallest-eigenvalue certificate
};

/// Kernel matrix over a point set; symmetric by construction, with a
/// smallest-eigenvalue certificate attached.
GramMatrix gram(const Manifold& manifold, const KernelSpec& spec,
                const std::vector<Point>& points);

struct Interpolant {
    std::vector<double> coeffs;
    double condition;  // 2-norm condition estimate of G + ridge I
};

/// Solves (G + ridge I) c = values by Cholesky factorization.
Interpolant interpolate(const GramMatrix& gram, std::span<const double> values, double ridge);

/// Evaluates sum_i c_i K(m, points_i).
double interpolant_value(const Manifold& manifold, const GramMatrix& gram,
                         std::span<const double> coeffs, const Point& m);

/// The two spectral Sobolev norms:
///   bessel  sum (1 + lambda_k)^s |c_k|^2
///   split   sum (1 + lambda_k^s) |c_k|^2
enum class NormVariant { bessel, split };

double sobolev_norm(const SpectralFunction& f, double s, NormVariant variant = NormVariant::bessel);

/// Diffusion-space norm sum e^{t lambda_k} |c_k|^2.
double diffusion_norm(const SpectralFunction& f, double t);

/// Coefficient weights used by the potentials and the diagonal test:
///   bessel  (1 + lambda)^{-s/2}
///   riesz   identity on the constant mode, lambda^{-s/2} elsewhere
enum class PotentialKind { bessel, riesz };

/// Applies (Id + Delta)^{-s/2} (or its riesz counterpart) to the
/// coefficients. Negative s inverts: applying s then -s is the identity.
SpectralFunction apply_bessel_potential(const SpectralFunction& f, double s,
                                        PotentialKind kind = PotentialKind::bessel);

struct DiagTest {
    double partial;            // sum through the requested level
    bool converged;            // certified tail below 1e-8 achievable
    double tail;               // certified tail at the requested level (inf below threshold)
    double growth_per_octave;  // partial-sum increment over the last doubling
};

/// Partial sums of sum_k w_k |f_k(m)|^2 through level L via projector
/// diagonals; the membership diagnostic for point evaluation.
DiagTest rkhs_diag_test(const Manifold& manifold, double s, const Point& m, long levels,
                        PotentialKind kind = PotentialKind::bessel);

} // namespace manikern

#endif
