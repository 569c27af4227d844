#include "manikern/rkhs.hpp"
#include "manikern/errors.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <string>

namespace manikern {

namespace {
constexpr double kPi = std::numbers::pi;

double smallest_eigenvalue(const Eigen::MatrixXd& g) {
    const int n = static_cast<int>(g.rows());
    if (n <= 512) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g, Eigen::EigenvaluesOnly);
        return solver.eigenvalues()(0);
    }
    // Shifted power iteration: the Gershgorin radius dominates the spectrum,
    // so the dominant mode of (R I - G) exposes the smallest eigenvalue.
    double radius = 0.0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, g.row(i).cwiseAbs().sum());
    Eigen::MatrixXd shifted = Eigen::MatrixXd::Identity(n, n) * radius - g;
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n).normalized();
    double mu = 0.0;
    for (int it = 0; it < 400; ++it) {
        Eigen::VectorXd w = shifted * v;
        const double norm = w.norm();
        if (norm == 0.0) break;
        w /= norm;
        const double mu_next = w.dot(shifted * w);
        if (std::abs(mu_next - mu) < 1e-13 * radius && it > 8) {
            mu = mu_next;
            break;
        }
        mu = mu_next;
        v = w;
    }
    return radius - mu;
}

} // namespace

double SpectralFunction::evaluate(const Point& m) const {
    double value = 0.0;
    for (const auto& [key, c] : coeffs)
        value += c * eigenfunction(manifold, key.first, key.second, m);
    return value;
}

double SpectralFunction::l2_norm_sq() const {
    double n = 0.0;
    for (const auto& [key, c] : coeffs) n += c * c;
    return n;
}

int SpectralFunction::max_level() const {
    int top = 0;
    for (const auto& [key, c] : coeffs)
        if (c != 0.0) top = std::max(top, key.first);
    return top;
}

GramMatrix gram(const Manifold& manifold, const KernelSpec& spec,
                const std::vector<Point>& points) {
    if (points.empty()) throw domain_error("gram: requires at least one point");
    const int n = static_cast<int>(points.size());
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const double v = kernel_eval(manifold, spec, points[i], points[j]);
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    const double min_eig = smallest_eigenvalue(g);
    return GramMatrix{points, std::move(g), spec, min_eig};
}

Interpolant interpolate(const GramMatrix& gram, std::span<const double> values, double ridge) {
    const int n = static_cast<int>(gram.points.size());
    if (values.size() != size_t(n)) throw domain_error("interpolate: values/points size mismatch");
    if (ridge < 0.0) throw domain_error("interpolate: requires ridge >= 0");

    Eigen::MatrixXd a = gram.entries;
    a.diagonal().array() += ridge;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> spectrum(a, Eigen::EigenvaluesOnly);
    const double lo = spectrum.eigenvalues()(0);
    const double hi = spectrum.eigenvalues()(n - 1);
    const double condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();

    const Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (lo <= 0.0 || llt.info() != Eigen::Success)
        throw singular_error("interpolate: factorization failed, condition estimate " +
                             std::to_string(condition));

    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = values[i];
    const Eigen::VectorXd c = llt.solve(y);
    return Interpolant{std::vector<double>(c.data(), c.data() + n), condition};
}

double interpolant_value(const Manifold& manifold, const GramMatrix& gram,
                         std::span<const double> coeffs, const Point& m) {
    if (coeffs.size() != gram.points.size())
        throw domain_error("interpolant_value: coefficient count mismatch");
    double value = 0.0;
    for (size_t i = 0; i < coeffs.size(); ++i)
        value += coeffs[i] * kernel_eval(manifold, gram.spec, m, gram.points[i]);
    return value;
}

double sobolev_norm(const SpectralFunction& f, double s, NormVariant variant) {
    double total = 0.0;
    for (const auto& [key, c] : f.coeffs) {
        const double lambda = eigen_level(f.manifold, key.first).lambda;
        const double w = variant == NormVariant::bessel ? std::pow(1.0 + lambda, s)
                                                        : 1.0 + std::pow(lambda, s);
        total += w * c * c;
    }
    return total;
}

double diffusion_norm(const SpectralFunction& f, double t) {
    if (!(t > 0.0)) throw domain_error("diffusion_norm: requires t > 0");
    double total = 0.0;
    for (const auto& [key, c] : f.coeffs) {
        const double lambda = eigen_level(f.manifold, key.first).lambda;
        total += std::exp(t * lambda) * c * c;
    }
    return total;
}

SpectralFunction apply_bessel_potential(const SpectralFunction& f, double s, PotentialKind kind) {
    SpectralFunction out{f.manifold, {}};
    for (const auto& [key, c] : f.coeffs) {
        const double lambda = eigen_level(f.manifold, key.first).lambda;
        double factor;
        if (kind == PotentialKind::bessel)
            factor = std::pow(1.0 + lambda, -s / 2.0);
        else
            factor = key.first == 0 ? 1.0 : std::pow(lambda, -s / 2.0);
        out.coeffs[key] = factor * c;
    }
    return out;
}

DiagTest rkhs_diag_test(const Manifold& manifold, double s, const Point& m, long levels,
                        PotentialKind kind) {
    if (!manifold.compact()) throw domain_error("rkhs_diag_test: compact manifolds only");
    if (levels < 4) throw domain_error("rkhs_diag_test: requires levels >= 4");

    // Projector diagonal: 1/pi per circle level, d_ell/omega_d on spheres
    // (the normalized Gegenbauer polynomial is 1 at coincident points).
    const bool circle = manifold.kind() == ManifoldKind::circle;
    auto diag_term = [&](long ell) {
        if (ell == 0) return 1.0 / manifold.volume();
        const double lambda = circle ? double(ell) * ell
                                     : double(ell) * (ell + manifold.ambient_dim() - 2.0);
        const double w = kind == PotentialKind::bessel ? std::pow(1.0 + lambda, -s)
                                                       : std::pow(lambda, -s);
        if (circle) return w / kPi;
        const int d = manifold.ambient_dim();
        double mult = 2.0 * ell + d - 2.0;
        for (int j = 1; j <= d - 3; ++j) mult *= (ell + j) / double(j);
        mult /= (d - 2.0);
        return w * mult / manifold.volume();
    };
    (void)m;  // the diagonal is position-independent on these homogeneous spaces

    double partial = 0.0;
    double at_half = 0.0;
    for (long ell = 0; ell <= levels; ++ell) {
        partial += diag_term(ell);
        if (ell == levels / 2) at_half = partial;
    }

    const int n = manifold.dim();
    const bool summable = 2.0 * s > n;
    DiagTest out;
    out.partial = partial;
    out.converged = summable;
    out.growth_per_octave = (partial - at_half) / std::numbers::ln2;
    if (!summable) {
        out.tail = std::numeric_limits<double>::infinity();
        return out;
    }
    // Same integral-comparison majorant as the kernel sums.
    const double p = 2.0 * s - n;
    if (manifold.kind() == ManifoldKind::circle)
        out.tail = std::pow(double(levels), -p) / (kPi * p);
    else
        out.tail = manifold.ambient_dim() / manifold.volume() * std::pow(double(levels), -p) / p;
    return out;
}

} // namespace manikern
