#ifndef MANIKERN_SPECFUN_HPP
#define MANIKERN_SPECFUN_HPP

namespace manikern {

/// Gamma function for positive real arguments (Lanczos approximation).
/// Throws domain_error for x <= 0 and overflow_error past the double range.
double gamma_fn(double x);

/// log Gamma for positive real arguments.
double log_gamma(double x);

inline constexpr int kGegenbauerDegreeCap = 512;

/// Gegenbauer polynomial C^nu_ell(z) from the three-term recurrence seeded
/// by the generating-function expansion of (1 - 2zt + t^2)^{-nu}.
/// nu >= 0; for nu = 0 the generating function is constant, so C_ell = 0
/// for ell >= 1 (use gegenbauer_normalized for the Chebyshev convention).
double gegenbauer(double nu, int ell, double z, int degree_cap = kGegenbauerDegreeCap);

/// Normalized Gegenbauer polynomial B^nu_ell(z) = C^nu_ell(z)/C^nu_ell(1),
/// with B^nu_ell(1) = 1 exactly. For nu = 0 this is the Chebyshev
/// polynomial T_ell(z).
double gegenbauer_normalized(double nu, int ell, double z, int degree_cap = kGegenbauerDegreeCap);

/// B^nu_ell(cos theta) evaluated through its integral representation with a
/// Gauss-Jacobi rule absorbing the (cos phi - cos theta)^{nu-1} endpoint
/// factor. Requires nu > 0 and theta in (0, pi).
double gegenbauer_integral_rep(double nu, int ell, double theta);

/// Chebyshev polynomial of the first kind.
double chebyshev_t(int ell, double z);

/// Orthonormal spherical-harmonic radial part: the associated Legendre
/// function P_l^m(x) carrying the full normalization
/// sqrt((2l+1)/(4pi) * (l-m)!/(l+m)!), without Condon-Shortley phase.
double legendre_orthonormal(int l, int m, double x);

/// Modified Bessel function of the third kind K_nu(z), nu >= 0, z > 0.
/// Series expansion below z = 2, continued-fraction evaluation above.
double bessel_k(double nu, double z);

/// Bessel function of the first kind J_nu(z), nu >= 0, z >= 0.
double bessel_j(double nu, double z);

} // namespace manikern

#endif
