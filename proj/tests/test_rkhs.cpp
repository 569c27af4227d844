#include "doctest.h"

#include "manikern/errors.hpp"
#include "manikern/rkhs.hpp"
#include "test_util.hpp"

#include <cmath>
#include <numbers>

using namespace manikern;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

SpectralFunction random_spectral(const Manifold& m, int cap, testutil::Rng& rng) {
    SpectralFunction f{m, {}};
    for (int ell = 0; ell <= cap; ++ell) {
        const int d_ell = static_cast<int>(eigen_level(m, ell).mult);
        for (int k = 1; k <= d_ell; ++k) f.coeffs[{ell, k}] = rng.uniform(-1.0, 1.0);
    }
    return f;
}
} // namespace

TEST_CASE("gram: closed-form entries on the circle") {
    const Manifold c = Manifold::circle();
    KernelSpec spec = KernelSpec::sobolev(1.0, Weighting::riesz);
    spec.truncation = TruncationPolicy::fixed(400000);

    const GramMatrix g1 = gram(c, spec, {Point::circle(0.4)});
    CHECK(g1.entries(0, 0) == doctest::Approx(1.0 + kPi / 6.0).epsilon(1e-6));
    CHECK(g1.min_eig_bound == doctest::Approx(1.0 + kPi / 6.0).epsilon(1e-6));

    const GramMatrix g2 = gram(c, spec, {Point::circle(0.0), Point::circle(kPi)});
    CHECK(g2.entries(0, 0) == doctest::Approx(1.0 + kPi / 6.0).epsilon(1e-6));
    CHECK(g2.entries(0, 1) == doctest::Approx(1.0 - kPi / 12.0).epsilon(1e-6));
    CHECK(g2.entries(0, 1) == g2.entries(1, 0));
    // symmetric 2x2: eigenvalues are diag +- offdiag
    CHECK(g2.min_eig_bound == doctest::Approx(kPi / 4.0).epsilon(1e-5));

    CHECK_THROWS_AS(gram(c, spec, {}), domain_error);
}

TEST_CASE("gram: PSD certificate on random sphere point sets") {
    const Manifold s3 = Manifold::sphere(3);
    KernelSpec spec = KernelSpec::sobolev(2.0);
    spec.truncation = TruncationPolicy::tail(1e-8, 100000);
    testutil::Rng rng(314);
    for (int n : {2, 10, 50}) {
        std::vector<Point> pts;
        for (int i = 0; i < n; ++i) pts.push_back(testutil::random_point(rng, s3));
        const GramMatrix g = gram(s3, spec, pts);
        CHECK(g.min_eig_bound >= -1e-8 * g.entries.trace());
        CHECK((g.entries - g.entries.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("interpolate: scalar and homogeneous cases") {
    const Manifold c = Manifold::circle();
    KernelSpec spec = KernelSpec::sobolev(2.0, Weighting::riesz);
    spec.truncation = TruncationPolicy::tail(1e-10, 100000);

    const GramMatrix g1 = gram(c, spec, {Point::circle(1.0)});
    const double y = 3.7;
    const Interpolant one = interpolate(g1, std::vector<double>{y}, 0.0);
    CHECK(one.coeffs[0] == doctest::Approx(y / g1.entries(0, 0)).epsilon(1e-14));
    CHECK(one.condition == doctest::Approx(1.0));

    std::vector<Point> pts;
    for (int i = 0; i < 8; ++i) pts.push_back(Point::circle(kTwoPi * i / 8.0));
    const GramMatrix g8 = gram(c, spec, pts);
    const Interpolant zero = interpolate(g8, std::vector<double>(8, 0.0), 0.0);
    for (double ci : zero.coeffs) CHECK(ci == 0.0);
}

TEST_CASE("interpolate: reproduces node values and refines") {
    const Manifold c = Manifold::circle();
    KernelSpec spec = KernelSpec::sobolev(2.0, Weighting::riesz);
    spec.truncation = TruncationPolicy::tail(1e-10, 100000);

    auto target = [](const Point& p) { return std::cos(p.theta()); };
    auto run = [&](int n) {
        std::vector<Point> pts;
        std::vector<double> vals;
        for (int i = 0; i < n; ++i) {
            pts.push_back(Point::circle(kTwoPi * i / n));
            vals.push_back(target(pts.back()));
        }
        const GramMatrix g = gram(c, spec, pts);
        const Interpolant sol = interpolate(g, vals, 0.0);
        // exact at the nodes
        for (int i = 0; i < n; ++i) {
            const double fit = interpolant_value(c, g, sol.coeffs, pts[i]);
            CHECK(fit == doctest::Approx(vals[i]).epsilon(1e-9));
        }
        // held-out error
        double worst = 0.0;
        for (int i = 0; i < 64; ++i) {
            const Point q = Point::circle(kTwoPi * (i + 0.5) / 64.0);
            worst = std::max(worst,
                             std::abs(interpolant_value(c, g, sol.coeffs, q) - target(q)));
        }
        return worst;
    };
    const double coarse = run(10);
    const double fine = run(20);
    CHECK(fine < coarse);
    CHECK(fine < 1e-4);
}

TEST_CASE("interpolate: singular system reports and ridge recovers") {
    const Manifold c = Manifold::circle();
    KernelSpec spec = KernelSpec::sobolev(2.0, Weighting::riesz);
    spec.truncation = TruncationPolicy::tail(1e-10, 100000);
    // duplicated point makes the Gram exactly rank-deficient
    const std::vector<Point> pts{Point::circle(0.3), Point::circle(0.3), Point::circle(2.0)};
    const GramMatrix g = gram(c, spec, pts);
    const std::vector<double> vals{1.0, 1.0, -0.5};
    CHECK_THROWS_AS(interpolate(g, vals, 0.0), singular_error);
    CHECK_NOTHROW(interpolate(g, vals, 1e-8));
}

TEST_CASE("sobolev_norm: frozen values and monotonicity in s") {
    const Manifold c = Manifold::circle();
    SpectralFunction f0{c, {{{0, 1}, 1.0}}};
    CHECK(sobolev_norm(f0, 0.7) == 1.0);
    CHECK(sobolev_norm(f0, 3.0, NormVariant::split) == 1.0);

    SpectralFunction f11{c, {{{1, 1}, 1.0}}};
    CHECK(sobolev_norm(f11, 1.0) == doctest::Approx(2.0).epsilon(1e-15));

    SpectralFunction f32{c, {{{3, 2}, 1.0}}};
    CHECK(sobolev_norm(f32, 2.0, NormVariant::split) == doctest::Approx(82.0).epsilon(1e-15));

    testutil::Rng rng(5);
    const SpectralFunction f = random_spectral(c, 6, rng);
    double prev = 0.0;
    for (double s : {0.2, 0.5, 1.0, 1.7, 2.5}) {
        const double n = sobolev_norm(f, s);
        CHECK(n >= prev);
        prev = n;
    }
}

TEST_CASE("norm variants stay inside the analytic bracket") {
    testutil::Rng rng(77);
    for (double s : {0.5, 1.0, 1.6, 2.5}) {
        const double pivot = std::pow(2.0, 1.0 - s);
        const double lo = std::min(1.0, pivot), hi = std::max(1.0, pivot);
        for (int trial = 0; trial < 20; ++trial) {
            const SpectralFunction f = random_spectral(Manifold::circle(), 5, rng);
            const double ratio = sobolev_norm(f, s, NormVariant::split) / sobolev_norm(f, s);
            CHECK(ratio >= lo - 1e-12);
            CHECK(ratio <= hi + 1e-12);
        }
    }
}

TEST_CASE("diffusion_norm: frozen values, additivity, lower bound") {
    const Manifold c = Manifold::circle();
    SpectralFunction f0{c, {{{0, 1}, 1.0}}};
    CHECK(diffusion_norm(f0, 2.0) == 1.0);

    SpectralFunction f21{c, {{{2, 1}, 1.0}}};
    CHECK(diffusion_norm(f21, 0.5) == doctest::Approx(std::exp(2.0)).epsilon(1e-14));

    SpectralFunction mix{c, {{{0, 1}, 1.0}, {{1, 1}, 1.0}}};
    CHECK(diffusion_norm(mix, 1.0) == doctest::Approx(1.0 + std::exp(1.0)).epsilon(1e-14));

    testutil::Rng rng(8);
    const SpectralFunction f = random_spectral(c, 5, rng);
    double prev = f.l2_norm_sq();
    for (double t : {0.1, 0.5, 1.0}) {
        const double n = diffusion_norm(f, t);
        CHECK(n >= prev);
        prev = n;
    }
    CHECK_THROWS_AS(diffusion_norm(f, 0.0), domain_error);
}

TEST_CASE("apply_bessel_potential: weights and composition") {
    const Manifold c = Manifold::circle();
    SpectralFunction f0{c, {{{0, 1}, 1.0}}};
    CHECK(apply_bessel_potential(f0, 3.0).coeffs.at({0, 1}) == 1.0);
    CHECK(apply_bessel_potential(f0, 3.0, PotentialKind::riesz).coeffs.at({0, 1}) == 1.0);

    SpectralFunction f21{c, {{{2, 1}, 1.0}}};
    CHECK(apply_bessel_potential(f21, 2.0).coeffs.at({2, 1}) ==
          doctest::Approx(0.2).epsilon(1e-15));
    CHECK(apply_bessel_potential(f21, 2.0, PotentialKind::riesz).coeffs.at({2, 1}) ==
          doctest::Approx(0.25).epsilon(1e-15));

    testutil::Rng rng(21);
    const SpectralFunction f = random_spectral(c, 4, rng);
    const SpectralFunction twice = apply_bessel_potential(apply_bessel_potential(f, 0.8), 1.4);
    const SpectralFunction once = apply_bessel_potential(f, 2.2);
    for (const auto& [key, v] : once.coeffs)
        CHECK(twice.coeffs.at(key) == doctest::Approx(v).epsilon(1e-13));

    // negative s inverts, for both potential kinds
    for (PotentialKind kind : {PotentialKind::bessel, PotentialKind::riesz}) {
        const SpectralFunction back =
            apply_bessel_potential(apply_bessel_potential(f, 1.7, kind), -1.7, kind);
        for (const auto& [key, v] : f.coeffs)
            CHECK(back.coeffs.at(key) == doctest::Approx(v).epsilon(1e-14));
    }
}

TEST_CASE("rkhs_diag_test: circle membership series") {
    const Manifold c = Manifold::circle();
    const Point m = Point::circle(1.3);
    const DiagTest riesz = rkhs_diag_test(c, 1.0, m, 1'000'000, PotentialKind::riesz);
    CHECK(riesz.converged);
    // 1/(2 pi) + zeta(2)/pi = 1/(2 pi) + pi/6
    CHECK(riesz.partial == doctest::Approx(1.0 / kTwoPi + kPi / 6.0).epsilon(1e-6));
    CHECK(riesz.tail <= 1e-5);

    const DiagTest sub = rkhs_diag_test(c, 0.4, m, 40000);
    CHECK_FALSE(sub.converged);
    CHECK(sub.growth_per_octave > 0.0);
    CHECK(std::isinf(sub.tail));
}

TEST_CASE("rkhs_diag_test: sphere at the critical index grows logarithmically") {
    const Manifold s3 = Manifold::sphere(3);
    const Point m = Point::sphere({0.0, 0.0, 1.0});
    const DiagTest d1 = rkhs_diag_test(s3, 1.0, m, 20000);
    CHECK_FALSE(d1.converged);
    // log growth: terms ~ 1/(2 pi ell), so the increment per octave is 1/(2 pi)
    CHECK(d1.growth_per_octave == doctest::Approx(1.0 / kTwoPi).epsilon(0.02));
    const DiagTest d2 = rkhs_diag_test(s3, 1.0, m, 40000);
    CHECK(d2.growth_per_octave == doctest::Approx(d1.growth_per_octave).epsilon(0.01));

    const DiagTest ok = rkhs_diag_test(s3, 2.0, m, 4000);
    CHECK(ok.converged);
    CHECK(ok.tail < 1e-6);
}

TEST_CASE("reproducing property: spectral pairing with K(m, .) evaluates f") {
    const Manifold c = Manifold::circle();
    testutil::Rng rng(101);
    const SpectralFunction f = random_spectral(c, 5, rng);
    const double s = 1.3;
    for (double theta : {0.0, 0.9, 4.4}) {
        const Point m = Point::circle(theta);
        // K(m,.) has coefficients (1+lambda)^{-s} f_k(m); the H^s pairing
        // cancels the weight against (1+lambda)^{s}.
        double paired = 0.0;
        for (const auto& [key, coeff] : f.coeffs) {
            const double lambda = eigen_level(c, key.first).lambda;
            const double k_coeff =
                std::pow(1.0 + lambda, -s) * eigenfunction(c, key.first, key.second, m);
            paired += std::pow(1.0 + lambda, s) * coeff * k_coeff;
        }
        CHECK(paired == doctest::Approx(f.evaluate(m)).epsilon(1e-8));
    }
}

TEST_CASE("SpectralFunction: evaluation matches an explicit cosine sum") {
    const Manifold c = Manifold::circle();
    SpectralFunction f{c, {{{0, 1}, 2.0}, {{3, 1}, 1.5}, {{3, 2}, -0.5}}};
    const double theta = 0.77;
    const double expect = 2.0 / std::sqrt(kTwoPi) +
                          1.5 * std::cos(3.0 * theta) / std::sqrt(kPi) -
                          0.5 * std::sin(3.0 * theta) / std::sqrt(kPi);
    CHECK(f.evaluate(Point::circle(theta)) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(f.l2_norm_sq() == doctest::Approx(4.0 + 2.25 + 0.25).epsilon(1e-15));
    CHECK(f.max_level() == 3);
}
