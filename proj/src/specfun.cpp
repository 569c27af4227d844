#include "manikern/specfun.hpp"
#include "manikern/errors.hpp"
#include "manikern/gauss.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace manikern {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos, g = 7, 9 terms. Good to ~1e-15 relative on the positive axis.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double lanczos_sum(double x) {
    double a = kLanczos[0];
    for (int k = 1; k < 9; ++k) a += kLanczos[k] / (x - 1.0 + k);
    return a;
}

// B_{2k} / (2k (2k-1)) for the Stirling correction series.
constexpr double kStirling[8] = {
    1.0 / 12.0,   -1.0 / 360.0,       1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0, -691.0 / 360360.0,  1.0 / 156.0,  -3617.0 / 122400.0,
};

double stirling_series(double x) {
    const double inv2 = 1.0 / (x * x);
    double term = 1.0 / x;
    double sum = 0.0;
    for (double coeff : kStirling) {
        sum += coeff * term;
        term *= inv2;
    }
    return sum;
}

double sinc(double x) {
    return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
}

double sinhc(double x) {
    return std::abs(x) < 1e-8 ? 1.0 + x * x / 6.0 : std::sinh(x) / x;
}

} // namespace

double gamma_fn(double x) {
    if (!(x > 0.0)) throw domain_error("gamma_fn: requires x > 0, got " + std::to_string(x));
    if (x > 171.624) throw std::overflow_error("gamma_fn: overflow for x = " + std::to_string(x));
    if (x < 0.5) return gamma_fn(x + 1.0) / x;  // one recursion keeps Lanczos in its sweet spot
    if (x > 20.0) {
        // Stirling with Bernoulli corrections; the split power keeps the
        // intermediates representable up to x ~ 171.6 and leaves the large
        // exponent inside pow.
        const double half_power = std::pow(x, 0.5 * (x - 0.5));
        return std::sqrt(2.0 * kPi) * half_power * std::exp(-x) * half_power *
               std::exp(stirling_series(x));
    }
    const double t = x + kLanczosG - 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, x - 0.5) * std::exp(-t) * lanczos_sum(x);
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw domain_error("log_gamma: requires x > 0, got " + std::to_string(x));
    if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
    if (x > 20.0)
        return 0.5 * std::log(2.0 * kPi) + (x - 0.5) * std::log(x) - x + stirling_series(x);
    const double t = x + kLanczosG - 0.5;
    return 0.5 * std::log(2.0 * kPi) + (x - 0.5) * std::log(t) - t + std::log(lanczos_sum(x));
}

double gegenbauer(double nu, int ell, double z, int degree_cap) {
    if (nu < 0.0) throw domain_error("gegenbauer: requires nu >= 0");
    if (ell < 0) throw domain_error("gegenbauer: requires ell >= 0");
    if (ell > degree_cap) throw domain_error("gegenbauer: degree above cap " + std::to_string(degree_cap));
    if (ell == 0) return 1.0;
    double cm2 = 1.0;
    double cm1 = 2.0 * nu * z;
    if (ell == 1) return cm1;
    double c = cm1;
    for (int l = 2; l <= ell; ++l) {
        c = (2.0 * (l + nu - 1.0) * z * cm1 - (l + 2.0 * nu - 2.0) * cm2) / l;
        cm2 = cm1;
        cm1 = c;
    }
    return c;
}

double gegenbauer_normalized(double nu, int ell, double z, int degree_cap) {
    if (nu < 0.0) throw domain_error("gegenbauer_normalized: requires nu >= 0");
    if (ell < 0) throw domain_error("gegenbauer_normalized: requires ell >= 0");
    if (ell > degree_cap)
        throw domain_error("gegenbauer_normalized: degree above cap " + std::to_string(degree_cap));
    if (nu == 0.0) return chebyshev_t(ell, z);
    if (ell == 0) return 1.0;
    if (ell == 1) return z;
    // Recurrence on B directly; r_l = C_l(1)/C_{l-1}(1) keeps everything O(1).
    double bm2 = 1.0;
    double bm1 = z;
    double b = z;
    double r_prev = (1.0 + 2.0 * nu - 1.0) / 1.0;  // r_1
    for (int l = 2; l <= ell; ++l) {
        const double r = (l + 2.0 * nu - 1.0) / l;
        b = (2.0 * (l + nu - 1.0) * z * bm1 - (l + 2.0 * nu - 2.0) * bm2 / r_prev) / (l * r);
        bm2 = bm1;
        bm1 = b;
        r_prev = r;
    }
    return b;
}

double gegenbauer_integral_rep(double nu, int ell, double theta) {
    if (!(nu > 0.0)) throw domain_error("gegenbauer_integral_rep: requires nu > 0");
    if (!(theta > 0.0 && theta < kPi))
        throw domain_error("gegenbauer_integral_rep: requires theta in (0, pi)");
    if (ell < 0) throw domain_error("gegenbauer_integral_rep: requires ell >= 0");

    // cos(phi) - cos(theta) = (1 - x) * h(x) after phi = theta (1 + x) / 2,
    // with h smooth and positive; the (1 - x)^{nu - 1} factor goes into the
    // Gauss-Jacobi weight.
    const int n = 64 + ell;
    const Rule1D rule = gauss_jacobi(n, nu - 1.0, 0.0);
    const double freq = ell + nu;
    double integral = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rule.nodes[i];
        const double phi = theta * (1.0 + x) / 2.0;
        const double u = theta * (1.0 - x) / 4.0;
        const double h = (theta / 2.0) * std::sin((theta + phi) / 2.0) * sinc(u);
        integral += rule.weights[i] * std::cos(freq * phi) * std::pow(h, nu - 1.0);
    }
    integral *= theta / 2.0;

    const double prefactor = std::pow(2.0, nu) * gamma_fn(nu + 0.5) /
                             (gamma_fn(nu) * gamma_fn(0.5)) *
                             std::pow(std::sin(theta), 1.0 - 2.0 * nu);
    return prefactor * integral;
}

double chebyshev_t(int ell, double z) {
    if (ell < 0) throw domain_error("chebyshev_t: requires ell >= 0");
    if (std::abs(z) <= 1.0) return std::cos(ell * std::acos(z));
    double tm2 = 1.0, tm1 = z;
    if (ell == 0) return 1.0;
    if (ell == 1) return z;
    double t = z;
    for (int l = 2; l <= ell; ++l) {
        t = 2.0 * z * tm1 - tm2;
        tm2 = tm1;
        tm1 = t;
    }
    return t;
}

double legendre_orthonormal(int l, int m, double x) {
    if (l < 0 || m < 0 || m > l) throw domain_error("legendre_orthonormal: need 0 <= m <= l");
    if (std::abs(x) > 1.0) throw domain_error("legendre_orthonormal: need |x| <= 1");
    // Seed P^m_m with the normalization baked in, then raise the degree.
    double pmm = std::sqrt(1.0 / (4.0 * kPi));
    if (m > 0) {
        const double sx = std::sqrt((1.0 - x) * (1.0 + x));
        for (int k = 1; k <= m; ++k)
            pmm *= std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * sx;
    }
    if (l == m) return pmm;
    double pm1 = std::sqrt(2.0 * m + 3.0) * x * pmm;
    if (l == m + 1) return pm1;
    double p = pm1;
    for (int ll = m + 2; ll <= l; ++ll) {
        const double a = std::sqrt((4.0 * ll * ll - 1.0) / (double(ll) * ll - double(m) * m));
        const double b = std::sqrt(((ll - 1.0) * (ll - 1.0) - double(m) * m) /
                                   (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
        p = a * (x * pm1 - b * pmm);
        pmm = pm1;
        pm1 = p;
    }
    return p;
}

namespace {

// Taylor coefficients of 1/Gamma(1+x); used where the Temme auxiliary
// gamma1 = (1/Gamma(1-mu) - 1/Gamma(1+mu))/(2 mu) would cancel.
constexpr double kRecipGamma1 = 0.57721566490153286061;
constexpr double kRecipGamma3 = -0.042002635034095235529;
constexpr double kRecipGamma5 = -0.042197734555544336748;

void temme_gammas(double mu, double& gam1, double& gam2) {
    const double gp = 1.0 / gamma_fn(1.0 + mu);  // 1/Gamma(1+mu)
    const double gm = 1.0 / gamma_fn(1.0 - mu);  // 1/Gamma(1-mu)
    gam2 = 0.5 * (gm + gp);
    if (std::abs(mu) < 1e-3) {
        const double mu2 = mu * mu;
        gam1 = -(kRecipGamma1 + mu2 * (kRecipGamma3 + mu2 * kRecipGamma5));
    } else {
        gam1 = (gm - gp) / (2.0 * mu);
    }
}

// K_mu and K_{mu+1} for |mu| <= 1/2, z <= 2: Temme's series.
void bessel_k_temme(double mu, double z, double& kmu, double& kmu1) {
    constexpr double eps = 1e-17;
    const double logz2 = std::log(2.0 / z);
    const double e = mu * logz2;
    const double fact = std::abs(mu) < 1e-12 ? 1.0 : (mu * kPi) / std::sin(mu * kPi);
    double gam1, gam2;
    temme_gammas(mu, gam1, gam2);
    double f = fact * (gam1 * std::cosh(e) + gam2 * logz2 * sinhc(e));
    const double emu = std::exp(e);  // (2/z)^mu
    double p = 0.5 * emu * gamma_fn(1.0 + mu);
    double q = 0.5 / emu * gamma_fn(1.0 - mu);
    double c = 1.0;
    const double d = 0.25 * z * z;
    double sum = f;
    double sum1 = p;
    for (int i = 1; i <= 500; ++i) {
        f = (i * f + p + q) / (i * double(i) - mu * mu);
        c *= d / i;
        p /= (i - mu);
        q /= (i + mu);
        const double del = c * f;
        sum += del;
        sum1 += c * (p - i * f);
        if (std::abs(del) < std::abs(sum) * eps) break;
    }
    kmu = sum;
    kmu1 = sum1 * (2.0 / z);
}

// K_mu and K_{mu+1} for |mu| <= 1/2, z > 2: Steed's continued fraction.
void bessel_k_cf2(double mu, double z, double& kmu, double& kmu1) {
    constexpr double eps = 1e-16;
    const double mu2 = mu * mu;
    double b = 2.0 * (1.0 + z);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25 - mu2;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= 10000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < eps) break;
    }
    h = a1 * h;
    kmu = std::sqrt(kPi / (2.0 * z)) * std::exp(-z) / s;
    kmu1 = kmu * (mu + z + 0.5 - h) / z;
}

} // namespace

double bessel_k(double nu, double z) {
    if (nu < 0.0) throw domain_error("bessel_k: requires nu >= 0");
    if (!(z > 0.0)) throw domain_error("bessel_k: requires z > 0");
    const int n = static_cast<int>(nu + 0.5);
    const double mu = nu - n;  // mu in [-1/2, 1/2]
    double kmu, kmu1;
    if (z <= 2.0)
        bessel_k_temme(mu, z, kmu, kmu1);
    else
        bessel_k_cf2(mu, z, kmu, kmu1);
    // Upward recurrence is stable for K; after n steps km holds K_{mu+n}.
    double km = kmu, k = kmu1;
    for (int i = 1; i <= n; ++i) {
        const double knext = km + 2.0 * (mu + i) / z * k;
        km = k;
        k = knext;
    }
    return km;
}

namespace {

double bessel_j_series(double nu, double z) {
    const double q = 0.25 * z * z;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 400; ++k) {
        term *= -q / (k * (nu + k));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    const double lead = std::exp(nu * std::log(z / 2.0) - log_gamma(nu + 1.0));
    return lead * sum;
}

// Hankel (P, Q) asymptotic pair; accurate for z >~ 12 with order in [0, 2).
void bessel_j_asymptotic_pq(double nu, double z, double& pv, double& qv) {
    const double mu4 = 4.0 * nu * nu;
    const double w = 8.0 * z;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k <= 60; ++k) {
        const double f = (2.0 * k - 1.0);
        term *= (mu4 - f * f) / (k * w);
        if (std::abs(term) > prev) break;  // divergent tail reached
        prev = std::abs(term);
        const int phase = (k / 2) % 2;
        const double signed_term = phase ? -term : term;
        if (k % 2 == 1)
            q += (k % 4 == 1) ? term : -term;
        else
            p += signed_term;
        if (std::abs(term) < 1e-18) break;
    }
    pv = p;
    qv = q;
}

double bessel_j_asymptotic(double nu, double z) {
    double p, q;
    bessel_j_asymptotic_pq(nu, z, p, q);
    const double chi = z - (0.5 * nu + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * z)) * (p * std::cos(chi) - q * std::sin(chi));
}

} // namespace

double bessel_j(double nu, double z) {
    if (nu < 0.0) throw domain_error("bessel_j: requires nu >= 0");
    if (z < 0.0) throw domain_error("bessel_j: requires z >= 0");
    if (z == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    if (z <= 12.0) return bessel_j_series(nu, z);
    // Reduce the order below 1, evaluate the Hankel pair, recur upward.
    // Forward recurrence is stable while the order stays below z.
    const int n = static_cast<int>(std::floor(nu));
    const double mu = nu - n;
    double jm = bessel_j_asymptotic(mu, z);
    if (n == 0) return jm;
    double j = bessel_j_asymptotic(mu + 1.0, z);
    for (int i = 1; i < n; ++i) {
        const double jnext = 2.0 * (mu + i) / z * j - jm;
        jm = j;
        j = jnext;
    }
    return j;
}

} // namespace manikern
