#include "manikern/curves.hpp"
#include "manikern/errors.hpp"
#include "manikern/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace manikern {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_angle(double theta) {
    double r = std::fmod(theta, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

// Thomas algorithm for a tridiagonal system; a is sub, b diag, c super.
std::vector<double> tridiagonal_solve(std::vector<double> a, std::vector<double> b,
                                      std::vector<double> c, std::vector<double> r) {
    const size_t n = b.size();
    for (size_t i = 1; i < n; ++i) {
        const double m = a[i] / b[i - 1];
        b[i] -= m * c[i - 1];
        r[i] -= m * r[i - 1];
    }
    std::vector<double> x(n);
    x[n - 1] = r[n - 1] / b[n - 1];
    for (size_t i = n - 1; i-- > 0;) x[i] = (r[i] - c[i] * x[i + 1]) / b[i];
    return x;
}

// Cyclic tridiagonal via Sherman-Morrison; alpha couples row n-1 to column 0,
// beta couples row 0 to column n-1.
std::vector<double> cyclic_solve(const std::vector<double>& a, const std::vector<double>& b,
                                 const std::vector<double>& c, double alpha, double beta,
                                 const std::vector<double>& r) {
    const size_t n = b.size();
    const double gamma = -b[0];
    std::vector<double> bb = b;
    bb[0] -= gamma;
    bb[n - 1] -= alpha * beta / gamma;
    std::vector<double> x = tridiagonal_solve(a, bb, c, r);
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = alpha;
    std::vector<double> z = tridiagonal_solve(a, bb, c, u);
    const double fact = (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
    for (size_t i = 0; i < n; ++i) x[i] -= fact * z[i];
    return x;
}

struct PeriodicSpline {
    std::vector<double> thetas;                // knots in [0, 2 pi), ascending
    std::vector<std::vector<double>> values;   // values[i] is the i-th sample point
    std::vector<std::vector<double>> second;   // second derivatives per knot, per coordinate
    int dim = 0;

    // knot spacing with the periodic closure theta_N = theta_0 + 2 pi
    double h(size_t i) const {
        const size_t n = thetas.size();
        return i + 1 < n ? thetas[i + 1] - thetas[i] : thetas[0] + kTwoPi - thetas[n - 1];
    }

    void build() {
        const size_t n = thetas.size();
        dim = static_cast<int>(values[0].size());
        second.assign(n, std::vector<double>(dim));
        std::vector<double> sub(n), diag(n), sup(n);
        for (size_t i = 0; i < n; ++i) {
            const double hm = h((i + n - 1) % n);
            const double hi = h(i);
            sub[i] = hm;
            diag[i] = 2.0 * (hm + hi);
            sup[i] = hi;
        }
        for (int d = 0; d < dim; ++d) {
            std::vector<double> rhs(n);
            for (size_t i = 0; i < n; ++i) {
                const size_t ip = (i + 1) % n;
                const size_t im = (i + n - 1) % n;
                const double hm = h(im);
                const double hi = h(i);
                rhs[i] = 6.0 * ((values[ip][d] - values[i][d]) / hi -
                                (values[i][d] - values[im][d]) / hm);
            }
            const std::vector<double> m = cyclic_solve(sub, diag, sup, sub[0], sup[n - 1], rhs);
            for (size_t i = 0; i < n; ++i) second[i][d] = m[i];
        }
    }

    size_t interval(double theta) const {
        const auto it = std::upper_bound(thetas.begin(), thetas.end(), theta);
        return it == thetas.begin() ? thetas.size() - 1 : size_t(it - thetas.begin()) - 1;
    }

    std::vector<double> eval(double theta_raw) const {
        const double theta = reduce_angle(theta_raw);
        const size_t i = interval(theta);
        const size_t ip = (i + 1) % thetas.size();
        const double hi = h(i);
        double t0 = thetas[i];
        double left = theta - t0;
        if (left < 0.0) left += kTwoPi;  // wrap segment
        const double right = hi - left;
        std::vector<double> out(dim);
        for (int d = 0; d < dim; ++d) {
            out[d] = second[i][d] * right * right * right / (6.0 * hi) +
                     second[ip][d] * left * left * left / (6.0 * hi) +
                     (values[i][d] / hi - second[i][d] * hi / 6.0) * right +
                     (values[ip][d] / hi - second[ip][d] * hi / 6.0) * left;
        }
        return out;
    }

    std::vector<double> eval_derivative(double theta_raw) const {
        const double theta = reduce_angle(theta_raw);
        const size_t i = interval(theta);
        const size_t ip = (i + 1) % thetas.size();
        const double hi = h(i);
        double left = theta - thetas[i];
        if (left < 0.0) left += kTwoPi;
        const double right = hi - left;
        std::vector<double> out(dim);
        for (int d = 0; d < dim; ++d) {
            out[d] = -second[i][d] * right * right / (2.0 * hi) +
                     second[ip][d] * left * left / (2.0 * hi) -
                     (values[i][d] / hi - second[i][d] * hi / 6.0) +
                     (values[ip][d] / hi - second[ip][d] * hi / 6.0);
        }
        return out;
    }
};

} // namespace

EmbeddedCurve::EmbeddedCurve(int ambient_dim, VecFn position, VecFn derivative)
    : dim_(ambient_dim), position_(std::move(position)), derivative_(std::move(derivative)) {
    if (dim_ < 2) throw domain_error("EmbeddedCurve: requires ambient dimension >= 2");
    if (!position_) throw domain_error("EmbeddedCurve: missing position map");
    // Closure check (position is 2 pi periodic by contract).
    const auto p0 = position_(0.0);
    const auto p1 = position_(kTwoPi);
    double gap = 0.0;
    for (int i = 0; i < dim_; ++i) gap += (p0[i] - p1[i]) * (p0[i] - p1[i]);
    if (std::sqrt(gap) > 1e-10)
        throw domain_error("EmbeddedCurve: position(0) and position(2 pi) disagree");
}

EmbeddedCurve EmbeddedCurve::from_samples(std::vector<double> thetas,
                                          std::vector<std::vector<double>> values) {
    if (thetas.size() != values.size() || thetas.size() < 4)
        throw domain_error("EmbeddedCurve::from_samples: need >= 4 aligned samples");
    for (size_t i = 0; i < thetas.size(); ++i) {
        if (thetas[i] < 0.0 || thetas[i] >= kTwoPi || (i > 0 && thetas[i] <= thetas[i - 1]))
            throw domain_error("EmbeddedCurve::from_samples: thetas must ascend inside [0, 2 pi)");
        if (values[i].size() != values[0].size())
            throw domain_error("EmbeddedCurve::from_samples: inconsistent point dimension");
    }
    auto spline = std::make_shared<PeriodicSpline>();
    spline->thetas = std::move(thetas);
    spline->values = std::move(values);
    spline->build();
    const int dim = spline->dim;
    return EmbeddedCurve(
        dim, [spline](double t) { return spline->eval(t); },
        [spline](double t) { return spline->eval_derivative(t); });
}

EmbeddedCurve EmbeddedCurve::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("EmbeddedCurve::from_csv: cannot open " + path);
    std::vector<double> thetas;
    std::vector<std::vector<double>> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() < 3) throw domain_error("EmbeddedCurve::from_csv: rows need theta,x1,...,xd");
        thetas.push_back(row[0]);
        values.emplace_back(row.begin() + 1, row.end());
    }
    return from_samples(std::move(thetas), std::move(values));
}

std::vector<double> EmbeddedCurve::position(double theta) const { return position_(theta); }

std::vector<double> EmbeddedCurve::derivative(double theta) const {
    if (derivative_) return derivative_(theta);
    // 4th-order central differences; costs ~1e-9 absolute accuracy.
    const double h = 1e-5;
    const auto pm2 = position_(theta - 2.0 * h);
    const auto pm1 = position_(theta - h);
    const auto pp1 = position_(theta + h);
    const auto pp2 = position_(theta + 2.0 * h);
    std::vector<double> d(dim_);
    for (int i = 0; i < dim_; ++i)
        d[i] = (pm2[i] - 8.0 * pm1[i] + 8.0 * pp1[i] - pp2[i]) / (12.0 * h);
    return d;
}

double EmbeddedCurve::speed(double theta) const {
    const auto d = derivative(theta);
    double s2 = 0.0;
    for (double v : d) s2 += v * v;
    const double s = std::sqrt(s2);
    if (s < 1e-12)
        throw domain_error("EmbeddedCurve: immersion violated, |position'| < 1e-12 at theta = " +
                           std::to_string(theta));
    return s;
}

CurveGeometry::CurveGeometry(EmbeddedCurve curve, int panels, int nodes_per_panel)
    : curve_(std::move(curve)), panels_(panels) {
    if (panels < 8) throw domain_error("CurveGeometry: requires panels >= 8");
    const Rule1D gl = gauss_legendre(nodes_per_panel);
    gl_nodes_ = gl.nodes;
    gl_weights_ = gl.weights;
    cumulative_.assign(panels_ + 1, 0.0);
    const double width = kTwoPi / panels_;
    for (int p = 0; p < panels_; ++p) {
        const double a = p * width;
        double len = 0.0;
        for (size_t i = 0; i < gl_nodes_.size(); ++i) {
            const double theta = a + width * (gl_nodes_[i] + 1.0) / 2.0;
            len += gl_weights_[i] * curve_.speed(theta);
        }
        cumulative_[p + 1] = cumulative_[p] + len * width / 2.0;
    }
}

double CurveGeometry::panel_integral(int panel, double upto) const {
    const double width = kTwoPi / panels_;
    const double a = panel * width;
    const double span = upto - a;
    if (span <= 0.0) return 0.0;
    double len = 0.0;
    for (size_t i = 0; i < gl_nodes_.size(); ++i) {
        const double theta = a + span * (gl_nodes_[i] + 1.0) / 2.0;
        len += gl_weights_[i] * curve_.speed(theta);
    }
    return len * span / 2.0;
}

double CurveGeometry::arc_length(double theta) const {
    if (theta < -1e-12 || theta > kTwoPi + 1e-12)
        throw domain_error("CurveGeometry::arc_length: requires theta in [0, 2 pi]");
    const double t = std::clamp(theta, 0.0, kTwoPi);
    const double width = kTwoPi / panels_;
    const int panel = std::min(panels_ - 1, static_cast<int>(t / width));
    return cumulative_[panel] + panel_integral(panel, t);
}

double CurveGeometry::theta_from_arc(double arc) const {
    const double total = total_length();
    double s = std::fmod(arc, total);
    if (s < 0.0) s += total;
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
    int panel = std::max(0, static_cast<int>(it - cumulative_.begin()) - 1);
    panel = std::min(panel, panels_ - 1);
    const double width = kTwoPi / panels_;
    double lo = panel * width, hi = (panel + 1) * width;
    double flo = cumulative_[panel] - s;
    double fhi = cumulative_[panel + 1] - s;
    if (fhi < 0.0) return hi;  // numerical edge at the panel boundary
    // Bisection with a secant proposal; the arc length is strictly monotone.
    for (int it2 = 0; it2 < 200 && hi - lo > 1e-13; ++it2) {
        double mid;
        const double denom = fhi - flo;
        if (denom > 0.0) {
            mid = lo - flo * (hi - lo) / denom;
            const double margin = 0.01 * (hi - lo);
            if (!(mid > lo + margin && mid < hi - margin)) mid = 0.5 * (lo + hi);
        } else {
            mid = 0.5 * (lo + hi);
        }
        const double fmid = cumulative_[panel] + panel_integral(panel, mid) - s;
        if (fmid < 0.0) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
            fhi = fmid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> CircleIsometry::map(double t) const {
    const double arc = scale * reduce_angle(t);
    return geometry->curve().position(geometry->theta_from_arc(arc));
}

double CircleIsometry::circle_angle(double theta) const {
    return geometry->arc_length(reduce_angle(theta)) / scale;
}

CircleIsometry isometry_to_circle(const EmbeddedCurve& curve) {
    auto geometry = std::make_shared<CurveGeometry>(curve);
    const double length = geometry->total_length();
    return CircleIsometry{std::move(geometry), length, length / kTwoPi};
}

double pullback_kernel(const CircleIsometry& iso, const KernelSpec& spec, double p_theta,
                       double q_theta, SpectrumRoute route) {
    const double up = iso.geometry->arc_length(reduce_angle(p_theta));
    const double uq = iso.geometry->arc_length(reduce_angle(q_theta));
    if (route == SpectrumRoute::scaled)
        return scaled_circle_kernel(iso.length, spec, up, uq).value;
    return scaled_circle_kernel(kTwoPi, spec, up / iso.scale, uq / iso.scale).value;
}

} // namespace manikern
