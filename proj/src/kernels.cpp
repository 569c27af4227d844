#include "manikern/kernels.hpp"
#include "manikern/errors.hpp"
#include "manikern/extrapolation.hpp"
#include "manikern/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

namespace manikern {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

double reduce_delta(double theta, double theta2) {
    double d = std::fmod(theta2 - theta, kTwoPi);
    if (d < 0.0) d += kTwoPi;
    return d;
}

// x^s with fast paths for the half-integer exponents the hot loops use.
double pow_fast(double x, double s) {
    if (s == 1.0) return x;
    if (s == 2.0) return x * x;
    if (s == 3.0) return x * x * x;
    if (s == 4.0) {
        const double x2 = x * x;
        return x2 * x2;
    }
    if (s == 0.5) return std::sqrt(x);
    if (s == 1.5) return x * std::sqrt(x);
    return std::pow(x, s);
}

double weight_eval(Weighting w, double s, double lambda) {
    switch (w) {
        case Weighting::bessel:
            return 1.0 / pow_fast(1.0 + lambda, s);
        case Weighting::inverse_power:
            return 1.0 / (1.0 + pow_fast(lambda, s));
        case Weighting::riesz:
            return 1.0 / pow_fast(lambda, s);
    }
    return 0.0;
}

double zero_mode_term(const Manifold& manifold, Weighting w) {
    // All weightings give weight 1 at lambda = 0; the riesz convention pins
    // the constant-mode contribution to 1 instead of Pi_0 = 1/vol.
    if (w == Weighting::riesz) return 1.0;
    return 1.0 / manifold.volume();
}

// d_ell from the polynomial form (2 ell + d - 2) prod_{j=1}^{d-3} (ell + j) / (d-2)!.
double sphere_mult(int d, long ell) {
    if (ell == 0) return 1.0;
    double p = 2.0 * ell + d - 2.0;
    for (int j = 1; j <= d - 3; ++j) p *= (ell + j) / double(j);
    return p / (d - 2.0);
}

// Emits Pi_ell(m, m') for ell = 1, 2, ... together with lambda_ell.
// Cosine recurrence on the circle, normalized Gegenbauer recurrence on
// spheres; O(1) state per level, stable on [-1, 1].
class ProjectorStream {
public:
    ProjectorStream(const Manifold& manifold, const Point& m, const Point& m2)
        : circle_(manifold.kind() == ManifoldKind::circle) {
        if (circle_) {
            const double delta = m2.theta() - m.theta();
            twoc_ = 2.0 * std::cos(delta);
            prev_ = 1.0;
            cur_ = std::cos(delta);
        } else {
            d_ = manifold.ambient_dim();
            omega_ = manifold.volume();
            nu_ = d_ / 2.0 - 1.0;
            z_ = point_inner(manifold, m, m2);
            bm2_ = 1.0;
            bm1_ = z_;
            r_prev_ = 2.0 * nu_;
        }
    }

    /// Projector value at the current level, then advance. First call
    /// returns level 1.
    double next() {
        ++ell_;
        if (circle_) {
            const double value = cur_ / kPi;
            const double nxt = twoc_ * cur_ - prev_;
            prev_ = cur_;
            cur_ = nxt;
            return value;
        }
        double b;
        if (ell_ == 1) {
            b = z_;
        } else {
            const double r = (ell_ + 2.0 * nu_ - 1.0) / ell_;
            b = (2.0 * (ell_ + nu_ - 1.0) * z_ * bm1_ - (ell_ + 2.0 * nu_ - 2.0) * bm2_ / r_prev_) /
                (ell_ * r);
            bm2_ = bm1_;
            bm1_ = b;
            r_prev_ = r;
        }
        return sphere_mult(d_, ell_) / omega_ * b;
    }

    long ell() const { return ell_; }

    double lambda() const {
        if (circle_) return double(ell_) * double(ell_);
        return double(ell_) * (ell_ + d_ - 2.0);
    }

private:
    bool circle_;
    long ell_ = 0;
    // circle state
    double twoc_ = 0.0, prev_ = 0.0, cur_ = 0.0;
    // sphere state
    int d_ = 0;
    double omega_ = 0.0, nu_ = 0.0, z_ = 0.0;
    double bm2_ = 0.0, bm1_ = 0.0, r_prev_ = 0.0;
};

// Certified bound on sum_{ell > L} w_ell sup|Pi_ell| for the Sobolev-type
// weights; every weighting is majorized by lambda^{-s} <= ell^{-2s}, and
// d_ell <= d * ell^{d-2} with equality at ell = 1.
double sobolev_tail_bound(const Manifold& manifold, double s, long L) {
    if (L < 1) return kInf;
    if (manifold.kind() == ManifoldKind::circle) {
        const double p = 2.0 * s - 1.0;
        if (p <= 0.0) return kInf;
        return std::pow(double(L), -p) / (kPi * p);
    }
    const int d = manifold.ambient_dim();
    const double p = 2.0 * s - (d - 1.0);
    if (p <= 0.0) return kInf;
    return d / manifold.volume() * std::pow(double(L), -p) / p;
}

long sobolev_required_levels(const Manifold& manifold, double s, double eps, long l_max) {
    double estimate;
    if (manifold.kind() == ManifoldKind::circle) {
        const double p = 2.0 * s - 1.0;
        estimate = std::pow(1.0 / (kPi * p * eps), 1.0 / p);
    } else {
        const int d = manifold.ambient_dim();
        const double p = 2.0 * s - (d - 1.0);
        estimate = std::pow(d / manifold.volume() / (p * eps), 1.0 / p);
    }
    if (!(estimate < 1e18))
        throw truncation_error("sobolev kernel: level cap " + std::to_string(l_max) +
                               " cannot certify tail <= " + fmt_g(eps));
    long L = std::max<long>(4, static_cast<long>(std::ceil(estimate)));
    while (L <= l_max && sobolev_tail_bound(manifold, s, L) > eps) L *= 2;
    if (L > l_max)
        throw truncation_error("sobolev kernel: level cap " + std::to_string(l_max) +
                               " cannot certify tail <= " + fmt_g(eps));
    return L;
}

double heat_majorant(const Manifold& manifold, double t, long ell) {
    const double decay = std::exp(-t * double(ell) * double(ell));
    if (manifold.kind() == ManifoldKind::circle) return decay / kPi;
    const int d = manifold.ambient_dim();
    return d / manifold.volume() * std::pow(double(ell), d - 2.0) * decay;
}

double heat_tail_bound(const Manifold& manifold, double t, long L) {
    const double a1 = heat_majorant(manifold, t, L + 1);
    if (a1 == 0.0) return 0.0;
    // The majorant ratio decreases in ell, so the tail is geometric.
    const double ratio = heat_majorant(manifold, t, L + 2) / a1;
    if (ratio >= 1.0) return kInf;
    return a1 / (1.0 - ratio);
}

long heat_required_levels(const Manifold& manifold, double t, double eps, long l_max) {
    for (long L = 1; L <= l_max; L = std::max(L + 1, L + L / 8)) {
        if (heat_tail_bound(manifold, t, L) <= eps) return L;
    }
    throw truncation_error("heat kernel: level cap " + std::to_string(l_max) +
                           " cannot certify tail <= " + fmt_g(eps) + " at t = " + fmt_g(t));
}

bool on_diagonal(const Manifold& manifold, const Point& m, const Point& m2) {
    return geodesic_distance(manifold, m, m2) == 0.0;
}

void require_compact(const Manifold& manifold, const char* who) {
    if (!manifold.compact())
        throw domain_error(std::string(who) + ": compact manifolds only");
}

} // namespace

AbelPolicy AbelPolicy::standard() {
    AbelPolicy p;
    for (int j = 3; j <= 14; ++j) p.t_sequence.push_back(1.0 - std::pow(2.0, -j));
    return p;
}

KernelSpec KernelSpec::sobolev(double s, Weighting w) {
    KernelSpec spec;
    spec.family = Family::sobolev;
    spec.s = s;
    spec.weighting = w;
    return spec;
}

KernelSpec KernelSpec::heat(double t) {
    KernelSpec spec;
    spec.family = Family::heat;
    spec.t = t;
    return spec;
}

KernelSpec KernelSpec::power(double base_s, double r) {
    KernelSpec spec;
    spec.family = Family::power;
    spec.s = base_s;
    spec.r = r;
    return spec;
}

KernelValue sobolev_kernel(const Manifold& manifold, const KernelSpec& spec,
                           const Point& m, const Point& m2) {
    require_compact(manifold, "sobolev_kernel");
    const double s = spec.s;
    if (!(s > 0.0)) throw domain_error("sobolev_kernel: requires s > 0");
    const double threshold = manifold.dim() / 2.0;

    long L;
    if (spec.truncation.mode == TruncationPolicy::Mode::fixed_levels) {
        // An explicit level cut is a well-defined partial sum at any s; the
        // reported tail is infinite below the RKHS threshold.
        L = spec.truncation.levels;
    } else if (s <= threshold) {
        if (on_diagonal(manifold, m, m2))
            throw divergence_error("sobolev_kernel: diverges on the diagonal for s <= dim/2");
        if (!spec.abel)
            throw domain_error("sobolev_kernel: s <= dim/2 requires an Abel policy off-diagonal");
        const AbelEvaluation abel = abel_kernel(manifold, s, m, m2, *spec.abel, spec.weighting);
        return {abel.value, abel.residual};
    } else {
        L = sobolev_required_levels(manifold, s, spec.truncation.eps, spec.truncation.l_max);
    }

    ProjectorStream stream(manifold, m, m2);
    double value = zero_mode_term(manifold, spec.weighting);
    for (long ell = 1; ell <= L; ++ell) {
        const double pi_ell = stream.next();
        value += weight_eval(spec.weighting, s, stream.lambda()) * pi_ell;
    }
    return {value, sobolev_tail_bound(manifold, s, L)};
}

double sobolev_closed_circle(double s, double theta, double theta2) {
    const double delta = reduce_delta(theta, theta2);
    if (s == 1.0)
        return 1.0 + delta * delta / (4.0 * kPi) - delta / 2.0 + kPi / 6.0;
    if (s == 0.5) {
        if (delta == 0.0)
            throw divergence_error("sobolev_closed_circle: K_{1/2} is singular on the diagonal");
        // 2 (1 - cos d) = 4 sin^2(d/2); the log form stays accurate near 0.
        return 1.0 - std::log(2.0 * std::sin(delta / 2.0)) / kPi;
    }
    throw domain_error("sobolev_closed_circle: closed forms exist for s in {1/2, 1}");
}

double circle_half_kernel_log_sep(double log_delta) {
    if (!(log_delta < std::log(kPi)))
        throw domain_error("circle_half_kernel_log_sep: requires delta < pi");
    const double half = 0.5 * std::exp(log_delta);  // underflows harmlessly for tiny separations
    const double sinc = half < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
    return 1.0 - (log_delta + std::log(sinc)) / kPi;
}

double sobolev_euclidean(int n, double s, std::span<const double> x, std::span<const double> y) {
    if (n < 1) throw domain_error("sobolev_euclidean: requires n >= 1");
    if (x.size() != size_t(n) || y.size() != size_t(n))
        throw domain_error("sobolev_euclidean: point dimension mismatch");
    if (!(s > 0.0)) throw domain_error("sobolev_euclidean: requires s > 0");
    double rho2 = 0.0;
    for (int i = 0; i < n; ++i) rho2 += (x[i] - y[i]) * (x[i] - y[i]);
    const double rho = std::sqrt(rho2);
    const double mu = s - n / 2.0;  // order of the Bessel factor, K_{-mu} = K_mu
    const double prefactor =
        std::pow(2.0, 1.0 - s - n / 2.0) / (std::pow(kPi, n / 2.0) * gamma_fn(s));
    if (rho == 0.0) {
        // Off the RKHS regime the kernel blows up at coincident points; in
        // it, the limit of K_mu(rho) rho^mu is Gamma(mu) 2^{mu-1}, taken
        // only while the Bessel order stays below 1.
        if (mu <= 0.0)
            throw domain_error("sobolev_euclidean: diverges on the diagonal for s <= n/2");
        if (mu >= 1.0)
            throw domain_error("sobolev_euclidean: diagonal limit only taken for s - n/2 < 1");
        return prefactor * gamma_fn(mu) * std::pow(2.0, mu - 1.0);
    }
    return prefactor * bessel_k(std::abs(mu), rho) * std::pow(rho, mu);
}

KernelValue heat_kernel(const Manifold& manifold, double t, const Point& m, const Point& m2,
                        const TruncationPolicy& policy) {
    if (!(t > 0.0)) throw domain_error("heat_kernel: requires t > 0");
    if (manifold.kind() == ManifoldKind::euclidean) {
        const int n = manifold.ambient_dim();
        double rho2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = m.coords()[i] - m2.coords()[i];
            rho2 += d * d;
        }
        return {std::pow(4.0 * kPi * t, -n / 2.0) * std::exp(-rho2 / (4.0 * t)), 0.0};
    }

    long L;
    if (policy.mode == TruncationPolicy::Mode::fixed_levels)
        L = policy.levels;
    else
        L = heat_required_levels(manifold, t, policy.eps, policy.l_max);

    ProjectorStream stream(manifold, m, m2);
    double value = 1.0 / manifold.volume();
    for (long ell = 1; ell <= L; ++ell) {
        const double pi_ell = stream.next();
        value += std::exp(-t * stream.lambda()) * pi_ell;
    }
    return {value, heat_tail_bound(manifold, t, L)};
}

namespace {

// Majorant for the t-weighted level terms: c * ell^a * t^ell.
void abel_majorant_params(const Manifold& manifold, double s, double& c, double& a) {
    if (manifold.kind() == ManifoldKind::circle) {
        c = 1.0 / kPi;
        a = -2.0 * s;
    } else {
        const int d = manifold.ambient_dim();
        c = d / manifold.volume();
        a = d - 2.0 - 2.0 * s;
    }
}

double abel_tail_bound(double c, double a, double t, long L) {
    const double m1 = c * std::pow(double(L + 1), a) * std::pow(t, double(L + 1));
    const double ratio = t * std::pow(double(L + 2) / double(L + 1), std::max(a, 0.0));
    if (ratio >= 1.0) return kInf;
    return m1 / (1.0 - ratio);
}

} // namespace

double abel_partial(const Manifold& manifold, double s, const Point& m, const Point& m2,
                    double t, double eps, long l_max, Weighting weighting) {
    require_compact(manifold, "abel_partial");
    if (!(t > 0.0 && t < 1.0)) throw domain_error("abel_partial: requires t in (0, 1)");

    double c, a;
    abel_majorant_params(manifold, s, c, a);

    ProjectorStream stream(manifold, m, m2);
    double sum = zero_mode_term(manifold, weighting);
    double tpow = 1.0;
    for (long ell = 1; ell <= l_max; ++ell) {
        const double pi_ell = stream.next();
        tpow *= t;
        sum += weight_eval(weighting, s, stream.lambda()) * tpow * pi_ell;
        if ((ell & 31) == 0 && abel_tail_bound(c, a, t, ell) < eps) return sum;
    }
    if (abel_tail_bound(c, a, t, l_max) > eps)
        throw truncation_error("abel_partial: level cap cannot certify the t-weighted tail");
    return sum;
}

AbelEvaluation abel_kernel(const Manifold& manifold, double s, const Point& m, const Point& m2,
                           const AbelPolicy& policy, Weighting weighting) {
    require_compact(manifold, "abel_kernel");
    if (!(s > 0.0)) throw domain_error("abel_kernel: requires s > 0");
    if (on_diagonal(manifold, m, m2))
        throw domain_error("abel_kernel: requires m != m'");
    if (policy.t_sequence.empty())
        throw domain_error("abel_kernel: empty t sequence");
    for (size_t i = 0; i < policy.t_sequence.size(); ++i) {
        const double t = policy.t_sequence[i];
        if (!(t > 0.0 && t < 1.0) || (i > 0 && t <= policy.t_sequence[i - 1]))
            throw domain_error("abel_kernel: t sequence must increase strictly inside (0, 1)");
    }

    double c, a;
    abel_majorant_params(manifold, s, c, a);
    const size_t nt = policy.t_sequence.size();
    std::vector<double> sums(nt, zero_mode_term(manifold, weighting));
    std::vector<double> tpow(nt, 1.0);

    // One shared pass over the levels; each t drops out once its certified
    // tail falls below inner_eps (smaller t first, tails are monotone in t).
    ProjectorStream stream(manifold, m, m2);
    size_t active = 0;
    for (long ell = 1; ell <= policy.l_max && active < nt; ++ell) {
        const double pi_ell = stream.next();
        const double w = weight_eval(weighting, s, stream.lambda());
        for (size_t i = active; i < nt; ++i) {
            tpow[i] *= policy.t_sequence[i];
            sums[i] += w * tpow[i] * pi_ell;
        }
        if ((ell & 31) == 0) {
            while (active < nt &&
                   abel_tail_bound(c, a, policy.t_sequence[active], ell) < policy.inner_eps)
                ++active;
        }
    }
    if (active < nt)
        throw truncation_error("abel_kernel: level cap cannot certify the t-weighted tail");

    AbelEvaluation out;
    out.sequence.reserve(nt);
    for (size_t i = 0; i < nt; ++i) out.sequence.emplace_back(policy.t_sequence[i], sums[i]);

    // The tolerance reads as relative once the kernel magnitude exceeds 1,
    // so near-diagonal evaluations are held to the same number of digits.
    const double tol = policy.tolerance * std::max(1.0, std::abs(sums.back()));
    if (policy.extrapolation == AbelPolicy::Extrapolation::none) {
        out.value = sums.back();
        out.residual = nt >= 2 ? std::abs(sums[nt - 1] - sums[nt - 2]) : kInf;
        if (out.residual > tol)
            throw convergence_error("abel_kernel: raw Abel sequence not settled within tolerance");
        return out;
    }

    const AitkenOutcome aitken = iterated_aitken(sums, tol);
    out.value = aitken.value;
    out.residual = aitken.residual;
    if (!aitken.converged)
        throw convergence_error("abel_kernel: Aitken extrapolants differ by " +
                                fmt_g(aitken.residual) + " > tolerance " + fmt_g(tol));
    return out;
}

KernelValue kernel_power(const Manifold& manifold, double base_s, double r,
                         const Point& m, const Point& m2, const TruncationPolicy& policy) {
    require_compact(manifold, "kernel_power");
    if (!(r > 0.0 && r <= 1.0)) throw domain_error("kernel_power: requires r in (0, 1]");
    const double s_eff = base_s * r;
    if (policy.mode != TruncationPolicy::Mode::fixed_levels && s_eff <= manifold.dim() / 2.0) {
        if (on_diagonal(manifold, m, m2))
            throw divergence_error("kernel_power: power sum not summable on the diagonal");
        throw domain_error("kernel_power: base_s * r <= dim/2 is outside the kernel regime");
    }
    KernelSpec spec = KernelSpec::sobolev(s_eff, Weighting::bessel);
    spec.truncation = policy;
    return sobolev_kernel(manifold, spec, m, m2);
}

double kernel_eval(const Manifold& manifold, const KernelSpec& spec,
                   const Point& m, const Point& m2) {
    switch (spec.family) {
        case KernelSpec::Family::sobolev:
            return sobolev_kernel(manifold, spec, m, m2).value;
        case KernelSpec::Family::heat:
            return heat_kernel(manifold, spec.t, m, m2, spec.truncation).value;
        case KernelSpec::Family::power:
            return kernel_power(manifold, spec.s, spec.r, m, m2, spec.truncation).value;
    }
    return 0.0;
}

KernelValue scaled_circle_kernel(double circumference, const KernelSpec& spec, double u, double u2) {
    if (!(circumference > 0.0))
        throw domain_error("scaled_circle_kernel: requires a positive circumference");
    const double L = circumference;
    const double base = kTwoPi / L;  // fundamental frequency; lambda_k = (base k)^2

    double s_eff = 0.0;
    Weighting weighting = spec.weighting;
    bool heat = false;
    switch (spec.family) {
        case KernelSpec::Family::sobolev:
            s_eff = spec.s;
            break;
        case KernelSpec::Family::power:
            s_eff = spec.s * spec.r;
            weighting = Weighting::bessel;
            break;
        case KernelSpec::Family::heat:
            s_eff = 0.0;
            heat = true;
            break;
    }
    if (!heat && !(s_eff > 0.5))
        throw domain_error("scaled_circle_kernel: requires s > 1/2 on a one-dimensional manifold");

    // Certified tails transplant from the unit circle with the frequency
    // scale pulled out of the weight majorant.
    auto tail_at = [&](long K) {
        if (heat) {
            auto major = [&](long k) {
                return 2.0 / L * std::exp(-spec.t * base * base * double(k) * double(k));
            };
            const double a1 = major(K + 1);
            if (a1 == 0.0) return 0.0;
            const double ratio = major(K + 2) / a1;
            return ratio >= 1.0 ? kInf : a1 / (1.0 - ratio);
        }
        const double p = 2.0 * s_eff - 1.0;
        return 2.0 / L * std::pow(base, -2.0 * s_eff) * std::pow(double(K), -p) / p;
    };

    long K;
    if (spec.truncation.mode == TruncationPolicy::Mode::fixed_levels) {
        K = spec.truncation.levels;
    } else {
        K = 4;
        while (K <= spec.truncation.l_max && tail_at(K) > spec.truncation.eps) K *= 2;
        if (K > spec.truncation.l_max)
            throw truncation_error("scaled_circle_kernel: level cap cannot certify the tail");
    }

    const double phi = base * (u2 - u);
    const double twoc = 2.0 * std::cos(phi);
    double prev = 1.0, cur = std::cos(phi);
    double value = heat || weighting != Weighting::riesz ? 1.0 / L : 1.0;
    for (long k = 1; k <= K; ++k) {
        const double lambda = base * base * double(k) * double(k);
        const double w = heat ? std::exp(-spec.t * lambda) : weight_eval(weighting, s_eff, lambda);
        value += w * 2.0 / L * cur;
        const double nxt = twoc * cur - prev;
        prev = cur;
        cur = nxt;
    }
    return {value, tail_at(K)};
}

} // namespace manikern
