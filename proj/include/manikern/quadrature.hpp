#ifndef MANIKERN_QUADRATURE_HPP
#define MANIKERN_QUADRATURE_HPP

#include "manikern/gauss.hpp"
#include "manikern/manifold.hpp"

#include <functional>
#include <vector>

namespace manikern {

/// Nodes and positive weights summing to the manifold volume. Circle rules
/// are uniform (exact for trigonometric polynomials of degree < resolution);
/// sphere rules are iterated Gauss-Jacobi products in the polar cosines,
/// exact for spherical harmonics through degree resolution - 1.
struct QuadratureRule {
    Manifold manifold;
    std::vector<Point> nodes;
    std::vector<double> weights;
};

QuadratureRule build_rule(const Manifold& manifold, int resolution);

double integrate(const QuadratureRule& rule, const std::function<double(const Point&)>& f);

/// Discretized integral operator: returns m -> sum_i w_i kernel(m, x_i) f(x_i).
std::function<double(const Point&)> apply_integral_operator(
    const QuadratureRule& rule,
    const std::function<double(const Point&, const Point&)>& kernel,
    const std::function<double(const Point&)>& f);

/// The same operator evaluated at the rule's own nodes.
std::vector<double> apply_operator_on_nodes(
    const QuadratureRule& rule,
    const std::function<double(const Point&, const Point&)>& kernel,
    const std::vector<double>& f_at_nodes);

/// Discrete L^2(M) norm of node values under the rule's weights.
double node_l2_norm(const QuadratureRule& rule, const std::vector<double>& values);

} // namespace manikern

#endif
