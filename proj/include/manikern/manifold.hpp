#ifndef MANIKERN_MANIFOLD_HPP
#define MANIKERN_MANIFOLD_HPP

#include <vector>

namespace manikern {

enum class ManifoldKind { circle, sphere, euclidean };

/// Descriptor of the supported base spaces: the unit circle, the unit
/// sphere S^{d-1} in R^d for d >= 3, and R^n. Immutable after construction.
class Manifold {
public:
    static Manifold circle();
    static Manifold sphere(int d);
    static Manifold euclidean(int n);

    ManifoldKind kind() const { return kind_; }
    bool compact() const { return kind_ != ManifoldKind::euclidean; }

    /// Intrinsic dimension (1 for the circle, d-1 for S^{d-1}, n for R^n).
    int dim() const;
    /// Dimension of the ambient Euclidean space.
    int ambient_dim() const { return ambient_; }

    /// Gegenbauer index d/2 - 1; zero for the circle (Chebyshev convention).
    double nu() const;
    /// Riemannian volume: 2 pi for the circle, omega_d = 2 pi^{d/2}/Gamma(d/2)
    /// for the sphere. Throws for Euclidean space.
    double volume() const;

private:
    Manifold(ManifoldKind k, int ambient) : kind_(k), ambient_(ambient) {}
    ManifoldKind kind_;
    int ambient_;
};

/// A location on a manifold: an angle in [0, 2 pi) for the circle, a unit
/// vector for spheres, a coordinate vector for R^n.
class Point {
public:
    static Point circle(double theta);
    static Point sphere(std::vector<double> x);
    static Point euclidean(std::vector<double> x);

    ManifoldKind kind() const { return kind_; }
    double theta() const;
    const std::vector<double>& coords() const { return x_; }

private:
    Point(ManifoldKind k, std::vector<double> x) : kind_(k), x_(std::move(x)) {}
    ManifoldKind kind_;
    std::vector<double> x_;
};

struct EigenLevel {
    int ell;
    double lambda;
    double mult;
};

/// Eigenvalue and multiplicity of the ell-th Laplace-Beltrami level.
/// Compact manifolds only.
EigenLevel eigen_level(const Manifold& manifold, int ell);

/// Cosine of the angle between two points (the argument fed to the
/// normalized Gegenbauer polynomial); for the circle, cos(theta - theta').
double point_inner(const Manifold& manifold, const Point& m, const Point& m2);

/// Geodesic distance.
double geodesic_distance(const Manifold& manifold, const Point& m, const Point& m2);

/// Level projector kernel Pi_ell(m, m'): (d_ell / omega_d) B^nu_ell(<m, m'>)
/// on spheres, and the trigonometric form on the circle.
double projector(const Manifold& manifold, int ell, const Point& m, const Point& m2);

inline constexpr int kSphereEigenfunctionCap = 50;

/// Orthonormal eigenfunction f_{ell,k}(m), 1 <= k <= d_ell. Available on the
/// circle for any level and on S^2 (d = 3) up to kSphereEigenfunctionCap.
double eigenfunction(const Manifold& manifold, int ell, int k, const Point& m);

} // namespace manikern

#endif
