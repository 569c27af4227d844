#include "manikern/quadrature.hpp"
#include "manikern/errors.hpp"

#include <cmath>
#include <memory>
#include <numbers>

namespace manikern {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// Unit-circle nodes embedded in R^2 as (cos, sin) pairs of plain angles.
void circle_rule(int n, std::vector<std::vector<double>>& pts, std::vector<double>& wts) {
    pts.clear();
    wts.assign(n, kTwoPi / n);
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double theta = kTwoPi * i / n;
        pts.push_back({std::cos(theta), std::sin(theta)});
    }
}

// Iterated polar factorization: S^{d-1} = [polar angle] x S^{d-2} with
// weight (1 - z^2)^{(d-3)/2} dz on the cosine, down to the circle.
void sphere_rule(int d, int resolution, std::vector<std::vector<double>>& pts,
                 std::vector<double>& wts) {
    if (d == 2) {
        circle_rule(2 * resolution, pts, wts);
        return;
    }
    std::vector<std::vector<double>> sub_pts;
    std::vector<double> sub_wts;
    sphere_rule(d - 1, resolution, sub_pts, sub_wts);

    const double exponent = (d - 3.0) / 2.0;
    const Rule1D polar = gauss_jacobi(resolution, exponent, exponent);

    pts.clear();
    wts.clear();
    pts.reserve(polar.nodes.size() * sub_pts.size());
    wts.reserve(polar.nodes.size() * sub_pts.size());
    for (size_t i = 0; i < polar.nodes.size(); ++i) {
        const double z = polar.nodes[i];
        const double sin_theta = std::sqrt(std::max(0.0, 1.0 - z * z));
        for (size_t j = 0; j < sub_pts.size(); ++j) {
            std::vector<double> x(d);
            for (int k = 0; k + 1 < d; ++k) x[k] = sin_theta * sub_pts[j][k];
            x[d - 1] = z;
            pts.push_back(std::move(x));
            wts.push_back(polar.weights[i] * sub_wts[j]);
        }
    }
}

} // namespace

QuadratureRule build_rule(const Manifold& manifold, int resolution) {
    if (resolution < 2) throw domain_error("build_rule: requires resolution >= 2");
    if (!manifold.compact())
        throw domain_error("build_rule: unbounded domain, no quadrature rule for R^n");

    QuadratureRule rule{manifold, {}, {}};
    if (manifold.kind() == ManifoldKind::circle) {
        rule.nodes.reserve(resolution);
        for (int i = 0; i < resolution; ++i)
            rule.nodes.push_back(Point::circle(kTwoPi * i / resolution));
        rule.weights.assign(resolution, kTwoPi / resolution);
        return rule;
    }

    std::vector<std::vector<double>> pts;
    std::vector<double> wts;
    sphere_rule(manifold.ambient_dim(), resolution, pts, wts);
    rule.nodes.reserve(pts.size());
    for (auto& p : pts) {
        double n2 = 0.0;
        for (double v : p) n2 += v * v;
        const double n = std::sqrt(n2);
        for (double& v : p) v /= n;  // renormalize product round-off
        rule.nodes.push_back(Point::sphere(std::move(p)));
    }
    rule.weights = std::move(wts);

    KahanSum total;
    for (double w : rule.weights) {
        if (!(w > 0.0)) throw domain_error("build_rule: nonpositive weight");
        total.add(w);
    }
    const double vol = manifold.volume();
    if (std::abs(total.sum - vol) > 1e-11 * vol)
        throw domain_error("build_rule: weights do not sum to the sphere volume");
    return rule;
}

double integrate(const QuadratureRule& rule, const std::function<double(const Point&)>& f) {
    KahanSum acc;
    for (size_t i = 0; i < rule.nodes.size(); ++i) acc.add(rule.weights[i] * f(rule.nodes[i]));
    return acc.sum;
}

std::function<double(const Point&)> apply_integral_operator(
    const QuadratureRule& rule,
    const std::function<double(const Point&, const Point&)>& kernel,
    const std::function<double(const Point&)>& f) {
    auto f_at_nodes = std::make_shared<std::vector<double>>();
    f_at_nodes->reserve(rule.nodes.size());
    for (const Point& x : rule.nodes) f_at_nodes->push_back(f(x));
    auto rule_copy = std::make_shared<QuadratureRule>(rule);
    return [rule_copy, kernel, f_at_nodes](const Point& m) {
        KahanSum acc;
        for (size_t i = 0; i < rule_copy->nodes.size(); ++i)
            acc.add(rule_copy->weights[i] * kernel(m, rule_copy->nodes[i]) * (*f_at_nodes)[i]);
        return acc.sum;
    };
}

std::vector<double> apply_operator_on_nodes(
    const QuadratureRule& rule,
    const std::function<double(const Point&, const Point&)>& kernel,
    const std::vector<double>& f_at_nodes) {
    if (f_at_nodes.size() != rule.nodes.size())
        throw domain_error("apply_operator_on_nodes: node count mismatch");
    std::vector<double> out(rule.nodes.size());
    for (size_t j = 0; j < rule.nodes.size(); ++j) {
        KahanSum acc;
        for (size_t i = 0; i < rule.nodes.size(); ++i)
            acc.add(rule.weights[i] * kernel(rule.nodes[j], rule.nodes[i]) * f_at_nodes[i]);
        out[j] = acc.sum;
    }
    return out;
}

double node_l2_norm(const QuadratureRule& rule, const std::vector<double>& values) {
    if (values.size() != rule.nodes.size())
        throw domain_error("node_l2_norm: node count mismatch");
    KahanSum acc;
    for (size_t i = 0; i < values.size(); ++i) acc.add(rule.weights[i] * values[i] * values[i]);
    return std::sqrt(acc.sum);
}

} // namespace manikern
