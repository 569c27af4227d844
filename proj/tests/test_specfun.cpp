#include "doctest.h"

#include "manikern/errors.hpp"
#include "manikern/specfun.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace manikern;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent Gegenbauer oracle: coefficient of t^ell in the binomial
// expansion of (1 - u)^{-nu}, u = 2zt - t^2. Never touches the recurrence.
double gegenbauer_generating_oracle(double nu, int ell, double z) {
    if (ell == 0) return 1.0;
    double sum = 0.0;
    for (int j = (ell + 1) / 2; j <= ell; ++j) {
        double rising = 1.0;  // (nu)_j / j!
        for (int i = 0; i < j; ++i) rising *= (nu + i) / (i + 1.0);
        double binom = 1.0;  // C(j, ell - j)
        for (int i = 0; i < ell - j; ++i) binom *= double(j - i) / (i + 1.0);
        sum += rising * binom * std::pow(2.0 * z, 2 * j - ell) * ((ell - j) % 2 ? -1.0 : 1.0);
    }
    return sum;
}

double bessel_k_half(double z) { return std::sqrt(kPi / (2.0 * z)) * std::exp(-z); }
double bessel_k_three_half(double z) { return bessel_k_half(z) * (1.0 + 1.0 / z); }
double bessel_j_half(double z) { return std::sqrt(2.0 / (kPi * z)) * std::sin(z); }
double bessel_j_three_half(double z) {
    return std::sqrt(2.0 / (kPi * z)) * (std::sin(z) / z - std::cos(z));
}

struct Ref {
    double nu, z, value;
};

} // namespace

TEST_CASE("gamma: factorial and half-integer identities") {
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
    CHECK(gamma_fn(1.5) == doctest::Approx(0.5 * std::sqrt(kPi)).epsilon(1e-13));
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gamma: reference grid across [0.5, 171]") {
    // mpmath, 17 digits
    const std::vector<std::pair<double, double>> refs = {
        {0.5, 1.772453850905516},        {1.5, 0.88622692545275801},
        {2.0, 1.0},                      {3.7, 4.170651783796604},
        {5.0, 24.0},                     {10.3, 716430.68906237641},
        {25.0, 6.2044840173323944e+23},  {50.5, 4.2904629123519598e+63},
        {100.25, 2.94846628183877e+156}, {150.0, 3.8089226376305697e+260},
        {171.0, 7.257415615307999e+306},
    };
    for (const auto& [x, ref] : refs) {
        CHECK(std::abs(gamma_fn(x) - ref) <= 1e-13 * ref);
    }
}

TEST_CASE("gamma: domain and overflow errors") {
    CHECK_THROWS_AS(gamma_fn(0.0), domain_error);
    CHECK_THROWS_AS(gamma_fn(-2.5), domain_error);
    CHECK_THROWS_AS(gamma_fn(180.0), std::overflow_error);
}

TEST_CASE("log_gamma agrees with gamma where both exist") {
    for (double x : {0.3, 0.5, 1.0, 2.5, 10.0, 50.0, 150.0}) {
        CHECK(std::exp(log_gamma(x)) == doctest::Approx(gamma_fn(x)).epsilon(1e-12));
    }
    // and stays finite far beyond the gamma overflow point
    CHECK(log_gamma(1e4) > 0.0);
}

TEST_CASE("gegenbauer: low-degree closed forms") {
    CHECK(gegenbauer(1.0, 0, 0.3) == doctest::Approx(1.0));
    CHECK(gegenbauer(1.0, 1, 0.3) == doctest::Approx(0.6).epsilon(1e-14));
    // C^nu_2(z) = 2 nu (nu+1) z^2 - nu from the generating function
    CHECK(gegenbauer(0.5, 2, 0.5) == doctest::Approx(-0.125).epsilon(1e-14));
    CHECK_THROWS_AS(gegenbauer(-0.2, 3, 0.1), domain_error);
    CHECK_THROWS_AS(gegenbauer(1.0, kGegenbauerDegreeCap + 1, 0.1), domain_error);
    CHECK_NOTHROW(gegenbauer(1.0, kGegenbauerDegreeCap + 1, 0.1, 2 * kGegenbauerDegreeCap));
}

TEST_CASE("gegenbauer: recurrence matches the generating-function oracle") {
    for (double nu : {0.25, 0.5, 1.0, 1.5, 3.0}) {
        for (int ell = 0; ell <= 10; ++ell) {
            for (double z : {-1.0, -0.7, -0.2, 0.0, 0.3, 0.8, 1.0}) {
                const double oracle = gegenbauer_generating_oracle(nu, ell, z);
                const double got = gegenbauer(nu, ell, z);
                CHECK(std::abs(got - oracle) <= 1e-12 * std::max(1.0, std::abs(oracle)));
            }
        }
    }
}

TEST_CASE("gegenbauer_normalized: endpoint, parity, bound, Chebyshev limit") {
    CHECK(gegenbauer_normalized(0.5, 7, 1.0) == 1.0);
    CHECK(gegenbauer_normalized(0.0, 3, std::cos(0.4)) ==
          doctest::Approx(std::cos(1.2)).epsilon(1e-14));
    CHECK(gegenbauer_normalized(0.5, 2, 0.0) == doctest::Approx(-0.5).epsilon(1e-13));

    for (double nu : {0.0, 0.5, 1.0, 2.5}) {
        for (int ell = 0; ell <= 30; ++ell) {
            for (int i = 0; i <= 40; ++i) {
                const double z = -1.0 + 2.0 * i / 40.0;
                const double b = gegenbauer_normalized(nu, ell, z);
                CHECK(std::abs(b) <= 1.0 + 1e-12);
                const double reflected = gegenbauer_normalized(nu, ell, -z);
                const double parity = (ell % 2 == 0) ? reflected : -reflected;
                CHECK(std::abs(b - parity) <= 1e-12);
            }
        }
    }
}

TEST_CASE("gegenbauer_normalized equals C/C(1) computed via the oracle") {
    for (double nu : {0.5, 1.0, 2.0}) {
        for (int ell = 1; ell <= 10; ++ell) {
            for (double z : {-0.9, -0.4, 0.1, 0.6, 0.95}) {
                const double oracle =
                    gegenbauer_generating_oracle(nu, ell, z) / gegenbauer_generating_oracle(nu, ell, 1.0);
                CHECK(gegenbauer_normalized(nu, ell, z) ==
                      doctest::Approx(oracle).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("gegenbauer_integral_rep: spot values") {
    CHECK(gegenbauer_integral_rep(0.5, 0, kPi / 2.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(gegenbauer_integral_rep(0.5, 2, kPi / 2.0) == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(gegenbauer_integral_rep(1.0, 1, kPi / 3.0) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK_THROWS_AS(gegenbauer_integral_rep(0.0, 2, 1.0), domain_error);
    CHECK_THROWS_AS(gegenbauer_integral_rep(0.5, 2, -0.3), domain_error);
    CHECK_THROWS_AS(gegenbauer_integral_rep(0.5, 2, kPi), domain_error);
}

TEST_CASE("gegenbauer_integral_rep agrees with the recurrence on a grid") {
    for (double nu : {0.5, 1.0, 1.5}) {
        for (int ell = 0; ell <= 20; ++ell) {
            for (int i = 0; i <= 12; ++i) {
                const double theta = 0.1 + (kPi - 0.2) * i / 12.0;
                const double via_integral = gegenbauer_integral_rep(nu, ell, theta);
                const double via_recurrence = gegenbauer_normalized(nu, ell, std::cos(theta));
                CHECK(std::abs(via_integral - via_recurrence) <= 1e-8);
            }
        }
    }
}

TEST_CASE("bessel_k: half-integer closed forms to 1e-10") {
    CHECK(bessel_k(0.5, 1.0) == doctest::Approx(0.46106850444789456).epsilon(1e-10));
    CHECK(bessel_k(0.5, 2.0) == doctest::Approx(0.11993777196806145).epsilon(1e-10));
    for (int i = 0; i <= 100; ++i) {
        const double z = 0.1 + (20.0 - 0.1) * i / 100.0;
        CHECK(bessel_k(0.5, z) == doctest::Approx(bessel_k_half(z)).epsilon(1e-10));
        CHECK(bessel_k(1.5, z) == doctest::Approx(bessel_k_three_half(z)).epsilon(1e-10));
    }
}

TEST_CASE("bessel_k: small-z logarithmic law and domain errors") {
    const double z = 0.001;
    CHECK(std::abs(bessel_k(0.0, z) / std::log(1.0 / z) - 1.0) < 0.02);
    CHECK_THROWS_AS(bessel_k(0.5, 0.0), domain_error);
    CHECK_THROWS_AS(bessel_k(0.5, -1.0), domain_error);
    CHECK_THROWS_AS(bessel_k(-0.5, 1.0), domain_error);
}

TEST_CASE("bessel_k: reference grid, nu in [0, 10], z in [1e-6, 50]") {
    // mpmath besselk, 17 digits
    const std::vector<Ref> refs = {
        {0.0, 1e-06, 13.931442073626419},    {0.0, 0.01, 4.7212447301610949},
        {0.0, 0.5, 0.92441907122766586},     {0.0, 1.0, 0.42102443824070833},
        {0.0, 1.9, 0.12884597927604749},     {0.0, 2.1, 0.10078374088996693},
        {0.0, 5.0, 0.0036910983340425943},   {0.0, 10.0, 1.7780062316167652e-5},
        {0.0, 30.0, 2.1324774964630564e-14}, {0.0, 50.0, 3.4101677497894955e-23},
        {0.3, 1e-06, 116.16463060626912},    {0.3, 0.5, 0.97647412438178792},
        {0.3, 2.0, 0.11603697434811926},     {0.3, 10.0, 1.7856607016823022e-5},
        {0.3, 50.0, 3.413208199536853e-23},  {0.5, 0.01, 12.40843453284693},
        {0.5, 1.9, 0.13599521326566797},     {0.5, 2.1, 0.10590875899695358},
        {0.5, 30.0, 2.1412375659560114e-14}, {1.0, 1e-06, 999999.99999278432},
        {1.0, 0.5, 1.6564411200033009},      {1.0, 2.0, 0.13986588181652243},
        {1.0, 10.0, 1.8648773453825585e-5},  {1.0, 50.0, 3.4441022267175556e-23},
        {2.5, 1e-06, 3759942411945874.5},    {2.5, 0.5, 20.425904466498485},
        {2.5, 2.0, 0.3897977588961997},      {2.5, 10.0, 2.3931325864627889e-5},
        {2.5, 50.0, 3.6278396452990476e-23}, {4.0, 0.01, 4799960000.2499975},
        {4.0, 1.0, 44.232415847062845},      {4.0, 2.1, 1.7530698539841112},
        {4.0, 30.0, 2.7712591759876249e-14}, {7.2, 0.5, 11239550.316870124},
        {7.2, 2.0, 448.00040561681348},      {7.2, 10.0, 0.0001954560709438202},
        {7.2, 50.0, 5.6930505093567195e-23}, {10.0, 0.01, 1.8579404390480636e+28},
        {10.0, 1.9, 274293.03661739931},     {10.0, 5.0, 9.7585628291778101},
        {10.0, 30.0, 1.0842816942222974e-13},{10.0, 50.0, 9.1509882099879961e-23},
    };
    for (const auto& r : refs) {
        CHECK(std::abs(bessel_k(r.nu, r.z) - r.value) <= 1e-10 * r.value);
    }
}

TEST_CASE("bessel_k: continuity across the z = 2 crossover") {
    for (double nu : {0.0, 0.3, 0.5, 1.0, 2.5, 4.0, 7.2, 10.0}) {
        const double below = bessel_k(nu, 2.0 - 1e-12);
        const double above = bessel_k(nu, 2.0 + 1e-12);
        CHECK(std::abs(below - above) <= 1e-9 * above);
    }
}

TEST_CASE("bessel_j: closed forms and boundary values") {
    CHECK(std::abs(bessel_j(0.5, kPi)) < 1e-14);
    CHECK(bessel_j(0.5, kPi / 2.0) == doctest::Approx(2.0 / kPi).epsilon(1e-12));
    CHECK(bessel_j(0.0, 0.0) == 1.0);
    CHECK(bessel_j(1.5, 0.0) == 0.0);
    CHECK_THROWS_AS(bessel_j(-0.5, 1.0), domain_error);
    CHECK_THROWS_AS(bessel_j(0.5, -1.0), domain_error);

    for (int i = 0; i <= 100; ++i) {
        const double z = 0.1 + (20.0 - 0.1) * i / 100.0;
        CHECK(std::abs(bessel_j(0.5, z) - bessel_j_half(z)) <=
              1e-10 * std::max(1.0, std::abs(bessel_j_half(z))));
        CHECK(std::abs(bessel_j(1.5, z) - bessel_j_three_half(z)) <=
              1e-10 * std::max(1.0, std::abs(bessel_j_three_half(z))));
    }
}

TEST_CASE("bessel_j: reference grid for the radial orders") {
    // mpmath besselj, 17 digits
    const std::vector<Ref> refs = {
        {0.0, 0.1, 0.99750156206604003},   {0.0, 1.0, 0.76519768655796655},
        {0.0, 5.0, -0.1775967713143383},   {0.0, 11.0, -0.17119030040719609},
        {0.0, 13.0, 0.20692610237706781},  {0.0, 25.0, 0.096266783275958116},
        {0.0, 60.0, -0.09147180408906187}, {0.0, 100.0, 0.019985850304223122},
        {0.5, 1.0, 0.67139670714180309},   {0.5, 11.0, -0.24056889072320312},
        {0.5, 13.0, 0.092980175853725431}, {0.5, 100.0, -0.040402132716252124},
        {1.0, 0.1, 0.049937526036242},     {1.0, 5.0, -0.32757913759146522},
        {1.0, 13.0, -0.070318052121778371},{1.0, 60.0, 0.046598383758166318},
        {1.5, 1.0, 0.24029783912342701},   {1.5, 11.0, -0.022934594839359303},
        {1.5, 25.0, -0.15901789538603658}, {1.5, 100.0, -0.069207112795890605},
        {2.0, 0.1, 0.001248958658799919},  {2.0, 5.0, 0.046565116277752216},
        {2.0, 13.0, -0.21774426424195679}, {2.0, 60.0, 0.093025083547667413},
        {3.0, 1.0, 0.019563353982668406},  {3.0, 11.0, 0.22734803305806742},
        {3.0, 25.0, 0.1083430810615089},   {3.0, 100.0, 0.076284201720331943},
        {4.0, 0.1, 2.6028648545684038e-7}, {4.0, 5.0, 0.39123236045864818},
        {4.0, 13.0, 0.21927648745906774},  {4.0, 60.0, -0.097064754699832929},
        {4.0, 100.0, 0.026105809447725282},
    };
    for (const auto& r : refs) {
        CHECK(std::abs(bessel_j(r.nu, r.z) - r.value) <=
              std::max(1e-9 * std::abs(r.value), 1e-11));
    }
}

TEST_CASE("legendre_orthonormal: known low-order values") {
    // sqrt((2l+1)/4pi) P_l at m = 0
    CHECK(legendre_orthonormal(0, 0, 0.3) == doctest::Approx(std::sqrt(1.0 / (4.0 * kPi))));
    CHECK(legendre_orthonormal(1, 0, 0.3) ==
          doctest::Approx(std::sqrt(3.0 / (4.0 * kPi)) * 0.3).epsilon(1e-13));
    CHECK(legendre_orthonormal(2, 0, 0.0) ==
          doctest::Approx(std::sqrt(5.0 / (4.0 * kPi)) * (-0.5)).epsilon(1e-13));
}
