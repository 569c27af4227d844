#ifndef MANIKERN_CURVES_HPP
#define MANIKERN_CURVES_HPP

#include "manikern/kernels.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace manikern {

/// A smooth closed immersed curve in R^d parametrized over [0, 2 pi).
/// The derivative falls back to 4th-order central differences (h = 1e-5)
/// when no analytic derivative is supplied.
class EmbeddedCurve {
public:
    using VecFn = std::function<std::vector<double>(double)>;

    EmbeddedCurve(int ambient_dim, VecFn position, VecFn derivative = nullptr);

    /// Periodic cubic-spline reconstruction through sampled points;
    /// thetas must increase strictly inside [0, 2 pi).
    static EmbeddedCurve from_samples(std::vector<double> thetas,
                                      std::vector<std::vector<double>> values);

    /// CSV rows "theta,x1,...,xd".
    static EmbeddedCurve from_csv(const std::string& path);

    std::vector<double> position(double theta) const;
    std::vector<double> derivative(double theta) const;
    /// |position'(theta)|; throws when the immersion degenerates.
    double speed(double theta) const;
    int ambient_dim() const { return dim_; }

private:
    int dim_;
    VecFn position_;
    VecFn derivative_;
};

/// Cached arc-length table over composite Gauss-Legendre panels, with the
/// monotone inverse.
class CurveGeometry {
public:
    explicit CurveGeometry(EmbeddedCurve curve, int panels = 512, int nodes_per_panel = 16);

    double total_length() const { return cumulative_.back(); }
    /// Arc length s(theta) for theta in [0, 2 pi]; strictly increasing.
    double arc_length(double theta) const;
    /// Inverse of s, bracketed bisection with a secant step.
    double theta_from_arc(double arc) const;
    const EmbeddedCurve& curve() const { return curve_; }

private:
    EmbeddedCurve curve_;
    int panels_;
    std::vector<double> cumulative_;  // arc length at panel boundaries
    std::vector<double> gl_nodes_, gl_weights_;
    double panel_integral(int panel, double upto) const;
};

/// The unit-speed reparametrization realizing the isometry with the circle
/// of matching length; scale = length / (2 pi).
struct CircleIsometry {
    std::shared_ptr<CurveGeometry> geometry;
    double length;
    double scale;

    /// Point on the curve at circle angle t (arc length scale * t from theta = 0).
    std::vector<double> map(double t) const;
    /// Circle angle of the curve point at parameter theta.
    double circle_angle(double theta) const;
};

CircleIsometry isometry_to_circle(const EmbeddedCurve& curve);

enum class SpectrumRoute {
    scaled,           // eigenvalues (2 pi k / length)^2 on the actual circle
    rescaled_metric,  // rescale the metric so the length becomes 2 pi
};

/// Kernel between two curve points (given as curve parameters), transported
/// through the arc-length isometry.
double pullback_kernel(const CircleIsometry& iso, const KernelSpec& spec, double p_theta,
                       double q_theta, SpectrumRoute route = SpectrumRoute::scaled);

} // namespace manikern

#endif
