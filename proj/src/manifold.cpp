#include "manikern/manifold.hpp"
#include "manikern/errors.hpp"
#include "manikern/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace manikern {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_angle(double theta) {
    double r = std::fmod(theta, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}
} // namespace

Manifold Manifold::circle() { return Manifold(ManifoldKind::circle, 2); }

Manifold Manifold::sphere(int d) {
    if (d < 3) throw domain_error("Manifold::sphere: requires d >= 3 (use circle for d = 2)");
    return Manifold(ManifoldKind::sphere, d);
}

Manifold Manifold::euclidean(int n) {
    if (n < 1) throw domain_error("Manifold::euclidean: requires n >= 1");
    return Manifold(ManifoldKind::euclidean, n);
}

int Manifold::dim() const {
    switch (kind_) {
        case ManifoldKind::circle: return 1;
        case ManifoldKind::sphere: return ambient_ - 1;
        case ManifoldKind::euclidean: return ambient_;
    }
    return 0;
}

double Manifold::nu() const {
    if (!compact()) throw domain_error("Manifold::nu: compact manifolds only");
    return ambient_ / 2.0 - 1.0;
}

double Manifold::volume() const {
    switch (kind_) {
        case ManifoldKind::circle: return kTwoPi;
        case ManifoldKind::sphere:
            return 2.0 * std::pow(kPi, ambient_ / 2.0) / gamma_fn(ambient_ / 2.0);
        case ManifoldKind::euclidean:
            throw domain_error("Manifold::volume: Euclidean space has infinite volume");
    }
    return 0.0;
}

Point Point::circle(double theta) {
    return Point(ManifoldKind::circle, {reduce_angle(theta)});
}

Point Point::sphere(std::vector<double> x) {
    double n2 = 0.0;
    for (double v : x) n2 += v * v;
    const double n = std::sqrt(n2);
    if (std::abs(n - 1.0) > 1e-12)
        throw domain_error("Point::sphere: vector is not on the unit sphere, |x| = " + std::to_string(n));
    return Point(ManifoldKind::sphere, std::move(x));
}

Point Point::euclidean(std::vector<double> x) {
    return Point(ManifoldKind::euclidean, std::move(x));
}

double Point::theta() const {
    if (kind_ != ManifoldKind::circle) throw domain_error("Point::theta: circle points only");
    return x_[0];
}

EigenLevel eigen_level(const Manifold& manifold, int ell) {
    if (!manifold.compact())
        throw domain_error("eigen_level: Euclidean space has continuous spectrum");
    if (ell < 0) throw domain_error("eigen_level: requires ell >= 0");
    if (ell == 0) return {0, 0.0, 1.0};
    if (manifold.kind() == ManifoldKind::circle)
        return {ell, double(ell) * ell, 2.0};

    const int d = manifold.ambient_dim();
    const double lambda = double(ell) * (ell + d - 2.0);
    // Multiplicity in log-Gamma space; overflow-free up to ell ~ 1e4.
    const double logm = std::log(2.0 * ell + d - 2.0) + log_gamma(ell + d - 2.0) -
                        log_gamma(d - 1.0) - log_gamma(ell + 1.0);
    const double m = std::exp(logm);
    const double rounded = std::round(m);
    if (std::abs(m - rounded) > 1e-6 + 1e-12 * m)
        throw domain_error("eigen_level: multiplicity drifted from an integer at ell = " +
                           std::to_string(ell));
    return {ell, lambda, rounded};
}

double point_inner(const Manifold& manifold, const Point& m, const Point& m2) {
    if (manifold.kind() == ManifoldKind::circle)
        return std::cos(m.theta() - m2.theta());
    if (manifold.kind() == ManifoldKind::sphere) {
        double dot = 0.0;
        for (size_t i = 0; i < m.coords().size(); ++i) dot += m.coords()[i] * m2.coords()[i];
        return std::clamp(dot, -1.0, 1.0);
    }
    throw domain_error("point_inner: compact manifolds only");
}

double geodesic_distance(const Manifold& manifold, const Point& m, const Point& m2) {
    switch (manifold.kind()) {
        case ManifoldKind::circle: {
            const double d = std::abs(m.theta() - m2.theta());
            return std::min(d, kTwoPi - d);
        }
        case ManifoldKind::sphere:
            return std::acos(point_inner(manifold, m, m2));
        case ManifoldKind::euclidean: {
            double s = 0.0;
            for (size_t i = 0; i < m.coords().size(); ++i) {
                const double d = m.coords()[i] - m2.coords()[i];
                s += d * d;
            }
            return std::sqrt(s);
        }
    }
    return 0.0;
}

double projector(const Manifold& manifold, int ell, const Point& m, const Point& m2) {
    if (!manifold.compact()) throw domain_error("projector: compact manifolds only");
    if (ell < 0) throw domain_error("projector: requires ell >= 0");
    if (manifold.kind() == ManifoldKind::circle) {
        if (ell == 0) return 1.0 / kTwoPi;
        return std::cos(ell * (m.theta() - m2.theta())) / kPi;
    }
    const EigenLevel level = eigen_level(manifold, ell);
    const double z = point_inner(manifold, m, m2);
    return level.mult / manifold.volume() *
           gegenbauer_normalized(manifold.nu(), ell, z, std::max(ell, kGegenbauerDegreeCap));
}

double eigenfunction(const Manifold& manifold, int ell, int k, const Point& m) {
    if (!manifold.compact()) throw domain_error("eigenfunction: compact manifolds only");
    if (ell < 0) throw domain_error("eigenfunction: requires ell >= 0");
    const EigenLevel level = eigen_level(manifold, ell);
    if (k < 1 || k > static_cast<int>(level.mult))
        throw domain_error("eigenfunction: index k out of range for level " + std::to_string(ell));

    if (manifold.kind() == ManifoldKind::circle) {
        if (ell == 0) return 1.0 / std::sqrt(kTwoPi);
        const double a = ell * m.theta();
        return (k == 1 ? std::cos(a) : std::sin(a)) / std::sqrt(kPi);
    }

    if (manifold.ambient_dim() != 3)
        throw domain_error("eigenfunction: explicit harmonics only for S^2; use the projector");
    if (ell > kSphereEigenfunctionCap)
        throw domain_error("eigenfunction: level above the S^2 cap");

    // Real orthonormal basis on S^2: k = 1 is zonal, k = 2j / 2j+1 pair with
    // cos(j phi) / sin(j phi).
    const double x = m.coords()[0], y = m.coords()[1], z = m.coords()[2];
    const double ct = std::clamp(z, -1.0, 1.0);
    const double phi = std::atan2(y, x);
    if (k == 1) return legendre_orthonormal(ell, 0, ct);
    const int j = k / 2;
    const double radial = std::numbers::sqrt2 * legendre_orthonormal(ell, j, ct);
    return radial * (k % 2 == 0 ? std::cos(j * phi) : std::sin(j * phi));
}

} // namespace manikern
