#ifndef MANIKERN_KERNELS_HPP
#define MANIKERN_KERNELS_HPP

#include "manikern/manifold.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace manikern {

/// Spectral weight applied to level ell when assembling a Sobolev-type
/// kernel sum:
///   bessel         (1 + lambda_ell)^{-s}
///   inverse_power  (1 + lambda_ell^s)^{-1}
///   riesz          lambda_ell^{-s} for ell >= 1, with the constant mode
///                  contributing exactly 1 (the convention in which the
///                  circle closed forms are stated)
enum class Weighting { bessel, inverse_power, riesz };

struct TruncationPolicy {
    enum class Mode { fixed_levels, tail_bound };
    Mode mode = Mode::tail_bound;
    long levels = 0;
    double eps = 1e-10;
    long l_max = 2'000'000;

    static TruncationPolicy fixed(long L) {
        return {Mode::fixed_levels, L, 0.0, L};
    }
    static TruncationPolicy tail(double eps, long l_max = 2'000'000) {
        return {Mode::tail_bound, 0, eps, l_max};
    }
};

struct AbelPolicy {
    /// Increasing values in (0, 1) approaching 1; default 1 - 2^{-j}, j = 3..14.
    std::vector<double> t_sequence;
    enum class Extrapolation { none, aitken };
    Extrapolation extrapolation = Extrapolation::aitken;
    double inner_eps = 1e-9;    // certified tail target for each t-sum
    double tolerance = 1e-6;    // extrapolant agreement to converge; relative
                                // once the kernel magnitude exceeds 1
    long l_max = 4'000'000;

    static AbelPolicy standard();
};

struct KernelSpec {
    enum class Family { sobolev, heat, power };
    Family family = Family::sobolev;
    double s = 1.0;       // Sobolev smoothness (base index for power)
    double t = 1.0;       // heat time
    double r = 1.0;       // power exponent
    Weighting weighting = Weighting::bessel;
    TruncationPolicy truncation = TruncationPolicy::tail(1e-10);
    std::optional<AbelPolicy> abel;

    static KernelSpec sobolev(double s, Weighting w = Weighting::bessel);
    static KernelSpec heat(double t);
    static KernelSpec power(double base_s, double r);
};

struct KernelValue {
    double value;
    double tail;  // certified bound on the discarded levels
};

/// Truncated spectral sum of the Sobolev kernel on a compact manifold.
/// Below the RKHS threshold s > dim/2 the certified (tail-bound) route
/// diverges on the diagonal and requires spec.abel off it; an explicit
/// fixed-levels truncation always returns the partial sum, with an
/// infinite reported tail once certification is impossible.
KernelValue sobolev_kernel(const Manifold& manifold, const KernelSpec& spec,
                           const Point& m, const Point& m2);

/// Closed forms for the circle kernels at s = 1 and s = 1/2:
///   s = 1:    1 + d^2/(4 pi) - d/2 + pi/6,        d = (theta' - theta) mod 2 pi
///   s = 1/2:  1 - (1/(2 pi)) ln(2 (1 - cos d)),   d != 0
double sobolev_closed_circle(double s, double theta, double theta2);

/// The circle s = 1/2 closed form as a function of log(delta), stable for
/// separations far below the double underflow threshold.
double circle_half_kernel_log_sep(double log_delta);

/// Closed form of the Euclidean Sobolev kernel for s > n/2:
///   2^{1-s-n/2} / (pi^{n/2} Gamma(s)) K_{n/2-s}(rho) rho^{s-n/2},
/// rho = |x - y|. The diagonal limit is taken only for s - n/2 in (0, 1).
double sobolev_euclidean(int n, double s, std::span<const double> x,
                         std::span<const double> y);

/// Heat kernel: truncated spectral sum with certified tail on compact
/// manifolds, the exact Gaussian on R^n.
KernelValue heat_kernel(const Manifold& manifold, double t, const Point& m, const Point& m2,
                        const TruncationPolicy& policy = TruncationPolicy::tail(1e-12, 200'000));

/// One Abel partial sum K_{s,t} = sum_ell w_ell t^ell Pi_ell(m, m'),
/// summed until the t-weighted certified tail drops below eps.
double abel_partial(const Manifold& manifold, double s, const Point& m, const Point& m2,
                    double t, double eps, long l_max,
                    Weighting weighting = Weighting::inverse_power);

struct AbelEvaluation {
    double value;
    double residual;                                  // last extrapolant gap
    std::vector<std::pair<double, double>> sequence;  // (t, K_{s,t})
};

/// Abel summation lim_{t -> 1} K_{s,t}(m, m') off the diagonal, extrapolated
/// per policy. Throws convergence_error when successive extrapolants
/// disagree by more than policy.tolerance.
AbelEvaluation abel_kernel(const Manifold& manifold, double s, const Point& m, const Point& m2,
                           const AbelPolicy& policy,
                           Weighting weighting = Weighting::inverse_power);

/// Spectral kernel power: sum_ell (1 + lambda_ell)^{-base_s r} Pi_ell,
/// the kernel of L_{K_{base_s}}^r. Reduces to sobolev_kernel at r = 1.
KernelValue kernel_power(const Manifold& manifold, double base_s, double r,
                         const Point& m, const Point& m2,
                         const TruncationPolicy& policy = TruncationPolicy::tail(1e-10));

/// Dispatch on spec.family; returns the kernel value (tail discarded).
double kernel_eval(const Manifold& manifold, const KernelSpec& spec,
                   const Point& m, const Point& m2);

/// Kernel on a circle of circumference L: eigenvalues (2 pi k / L)^2,
/// eigenfunctions renormalized by sqrt(2 pi / L); u, u2 are arc-length
/// positions. Supports the sobolev, heat, and power families.
KernelValue scaled_circle_kernel(double circumference, const KernelSpec& spec, double u, double u2);

} // namespace manikern

#endif
