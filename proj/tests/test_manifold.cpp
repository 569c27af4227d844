#include "doctest.h"

#include "manikern/errors.hpp"
#include "manikern/manifold.hpp"
#include "manikern/quadrature.hpp"
#include "test_util.hpp"

#include <cmath>
#include <numbers>

using namespace manikern;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
} // namespace

TEST_CASE("manifold descriptors") {
    const Manifold c = Manifold::circle();
    CHECK(c.dim() == 1);
    CHECK(c.volume() == doctest::Approx(kTwoPi));
    CHECK(c.nu() == 0.0);

    const Manifold s3 = Manifold::sphere(3);
    CHECK(s3.dim() == 2);
    CHECK(s3.nu() == doctest::Approx(0.5));
    CHECK(s3.volume() == doctest::Approx(4.0 * kPi).epsilon(1e-14));

    const Manifold s5 = Manifold::sphere(5);
    CHECK(s5.volume() == doctest::Approx(8.0 * kPi * kPi / 3.0).epsilon(1e-14));

    CHECK_THROWS_AS(Manifold::sphere(2), domain_error);
    CHECK_THROWS_AS(Manifold::euclidean(3).volume(), domain_error);
}

TEST_CASE("points: reduction and validation") {
    CHECK(Point::circle(2.0 * kTwoPi + 0.3).theta() == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(Point::circle(-0.5).theta() == doctest::Approx(kTwoPi - 0.5));
    CHECK_THROWS_AS(Point::sphere({1.0, 1.0, 0.0}), domain_error);
    CHECK_NOTHROW(Point::sphere({0.0, 0.0, 1.0}));
}

TEST_CASE("eigen_level: circle and spheres") {
    const EigenLevel circle3 = eigen_level(Manifold::circle(), 3);
    CHECK(circle3.lambda == 9.0);
    CHECK(circle3.mult == 2.0);
    CHECK(eigen_level(Manifold::circle(), 0).mult == 1.0);

    const EigenLevel s3l2 = eigen_level(Manifold::sphere(3), 2);
    CHECK(s3l2.lambda == 6.0);
    CHECK(s3l2.mult == 5.0);

    const EigenLevel s4l0 = eigen_level(Manifold::sphere(4), 0);
    CHECK(s4l0.lambda == 0.0);
    CHECK(s4l0.mult == 1.0);

    // S^3 multiplicities are (ell+1)^2
    for (int ell = 0; ell <= 20; ++ell)
        CHECK(eigen_level(Manifold::sphere(4), ell).mult == double((ell + 1) * (ell + 1)));

    // log-Gamma route stays integer-exact far up the spectrum
    CHECK(eigen_level(Manifold::sphere(3), 10000).mult == 20001.0);

    CHECK_THROWS_AS(eigen_level(Manifold::euclidean(2), 1), domain_error);
    CHECK_THROWS_AS(eigen_level(Manifold::circle(), -1), domain_error);
}

TEST_CASE("eigenvalues strictly increase with the level") {
    for (const Manifold& m : {Manifold::circle(), Manifold::sphere(3), Manifold::sphere(6)}) {
        double prev = -1.0;
        for (int ell = 0; ell <= 50; ++ell) {
            const EigenLevel lv = eigen_level(m, ell);
            CHECK(lv.lambda > prev);
            CHECK(lv.mult >= 1.0);
            prev = lv.lambda;
        }
    }
}

TEST_CASE("projector: closed values") {
    const Manifold s3 = Manifold::sphere(3);
    testutil::Rng rng(11);
    const Point a = testutil::random_point(rng, s3);
    const Point b = testutil::random_point(rng, s3);
    CHECK(projector(s3, 0, a, b) == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-13));
    CHECK(projector(s3, 1, a, a) == doctest::Approx(3.0 / (4.0 * kPi)).epsilon(1e-13));

    const Manifold c = Manifold::circle();
    CHECK(projector(c, 2, Point::circle(0.7), Point::circle(0.7)) ==
          doctest::Approx(1.0 / kPi).epsilon(1e-14));
    CHECK(projector(c, 0, Point::circle(0.1), Point::circle(2.0)) ==
          doctest::Approx(1.0 / kTwoPi).epsilon(1e-14));
}

TEST_CASE("eigenfunction: circle basis") {
    const Manifold c = Manifold::circle();
    CHECK(eigenfunction(c, 0, 1, Point::circle(1.1)) ==
          doctest::Approx(1.0 / std::sqrt(kTwoPi)).epsilon(1e-14));
    CHECK(std::abs(eigenfunction(c, 2, 1, Point::circle(kPi / 4.0))) < 1e-15);
    CHECK(eigenfunction(c, 2, 2, Point::circle(kPi / 4.0)) ==
          doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-14));
    CHECK_THROWS_AS(eigenfunction(c, 0, 2, Point::circle(0.0)), domain_error);
    CHECK_THROWS_AS(eigenfunction(Manifold::sphere(4), 1, 1, Point::sphere({1, 0, 0, 0})),
                    domain_error);
}

TEST_CASE("addition formula: harmonics reproduce the projector on S^2") {
    const Manifold s3 = Manifold::sphere(3);
    testutil::Rng rng(2024);
    for (int pair = 0; pair < 100; ++pair) {
        const Point a = testutil::random_point(rng, s3);
        const Point b = testutil::random_point(rng, s3);
        for (int ell = 0; ell <= 10; ++ell) {
            const double d_ell = eigen_level(s3, ell).mult;
            double sum = 0.0;
            for (int k = 1; k <= static_cast<int>(d_ell); ++k)
                sum += eigenfunction(s3, ell, k, a) * eigenfunction(s3, ell, k, b);
            CHECK(std::abs(sum - projector(s3, ell, a, b)) <= 1e-8);
        }
    }
}

TEST_CASE("addition formula diagonal: sum of squares equals d_ell/omega") {
    const Manifold s3 = Manifold::sphere(3);
    testutil::Rng rng(7);
    const Point m = testutil::random_point(rng, s3);
    double sum = 0.0;
    for (int k = 1; k <= 3; ++k) {
        const double f = eigenfunction(s3, 1, k, m);
        sum += f * f;
    }
    CHECK(sum == doctest::Approx(3.0 / (4.0 * kPi)).epsilon(1e-12));
}

TEST_CASE("projector idempotence and orthogonality under quadrature") {
    const Manifold s3 = Manifold::sphere(3);
    const QuadratureRule rule = build_rule(s3, 24);
    testutil::Rng rng(5);
    const Point a = testutil::random_point(rng, s3);
    const Point b = testutil::random_point(rng, s3);
    for (int ell : {0, 1, 3, 7}) {
        const double folded = integrate(
            rule, [&](const Point& x) { return projector(s3, ell, a, x) * projector(s3, ell, x, b); });
        CHECK(std::abs(folded - projector(s3, ell, a, b)) <= 1e-10);
    }
    for (auto [l1, l2] : {std::pair{0, 2}, {1, 4}, {3, 5}}) {
        const double mixed = integrate(
            rule, [&](const Point& x) { return projector(s3, l1, a, x) * projector(s3, l2, x, b); });
        CHECK(std::abs(mixed) <= 1e-10);
    }

    const Manifold c = Manifold::circle();
    const QuadratureRule crule = build_rule(c, 64);
    const Point ca = Point::circle(0.3), cb = Point::circle(2.1);
    for (int ell : {0, 1, 5}) {
        const double folded = integrate(
            crule, [&](const Point& x) { return projector(c, ell, ca, x) * projector(c, ell, x, cb); });
        CHECK(std::abs(folded - projector(c, ell, ca, cb)) <= 1e-12);
    }
}

TEST_CASE("eigenfunctions are orthonormal under quadrature") {
    const Manifold s3 = Manifold::sphere(3);
    const QuadratureRule rule = build_rule(s3, 16);
    for (int ell : {0, 2, 5}) {
        const int d_ell = static_cast<int>(eigen_level(s3, ell).mult);
        for (int k = 1; k <= d_ell; k += 2) {
            const double norm = integrate(rule, [&](const Point& x) {
                const double f = eigenfunction(s3, ell, k, x);
                return f * f;
            });
            CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));
        }
    }
    // cross terms vanish
    const double cross = integrate(rule, [&](const Point& x) {
        return eigenfunction(s3, 2, 1, x) * eigenfunction(s3, 3, 2, x);
    });
    CHECK(std::abs(cross) <= 1e-10);
}

TEST_CASE("sup-bound growth: fitted exponent stays below n/4 + 0.1") {
    // circle: eigenfunctions are uniformly bounded
    {
        std::vector<double> logs_lambda, logs_max;
        const Manifold c = Manifold::circle();
        for (int ell = 2; ell <= 40; ell += 2) {
            double mx = 0.0;
            for (int i = 0; i < 200; ++i) {
                const Point p = Point::circle(kTwoPi * i / 200.0);
                for (int k = 1; k <= 2; ++k)
                    mx = std::max(mx, std::abs(eigenfunction(c, ell, k, p)));
            }
            logs_lambda.push_back(std::log(eigen_level(c, ell).lambda));
            logs_max.push_back(std::log(mx));
        }
        CHECK(testutil::fit_slope(logs_lambda, logs_max) <= 1.0 / 4.0 + 0.1);
    }
    // S^2: the zonal harmonic grows like lambda^{1/4}, within the bound
    {
        std::vector<double> logs_lambda, logs_max;
        const Manifold s3 = Manifold::sphere(3);
        const QuadratureRule grid = build_rule(s3, 24);
        for (int ell = 2; ell <= 30; ell += 4) {
            double mx = 0.0;
            for (const Point& p : grid.nodes)
                for (int k = 1; k <= static_cast<int>(eigen_level(s3, ell).mult); ++k)
                    mx = std::max(mx, std::abs(eigenfunction(s3, ell, k, p)));
            logs_lambda.push_back(std::log(eigen_level(s3, ell).lambda));
            logs_max.push_back(std::log(mx));
        }
        CHECK(testutil::fit_slope(logs_lambda, logs_max) <= 2.0 / 4.0 + 0.1);
    }
}

TEST_CASE("multiplicity consistency on S^2: partial sums are (L+1)^2") {
    const Manifold s3 = Manifold::sphere(3);
    double total = 0.0;
    for (int ell = 0; ell <= 40; ++ell) {
        total += eigen_level(s3, ell).mult;
        CHECK(total == double((ell + 1) * (ell + 1)));
    }
}

TEST_CASE("geodesic distance") {
    const Manifold c = Manifold::circle();
    CHECK(geodesic_distance(c, Point::circle(0.2), Point::circle(6.0)) ==
          doctest::Approx(kTwoPi - 5.8).epsilon(1e-12));
    const Manifold s3 = Manifold::sphere(3);
    CHECK(geodesic_distance(s3, Point::sphere({1, 0, 0}), Point::sphere({0, 1, 0})) ==
          doctest::Approx(kPi / 2.0));
}
