#ifndef MANIKERN_EXTRAPOLATION_HPP
#define MANIKERN_EXTRAPOLATION_HPP

#include <cmath>
#include <limits>
#include <vector>

namespace manikern {

struct AitkenOutcome {
    double value = 0.0;
    double residual = std::numeric_limits<double>::infinity();
    bool converged = false;
};

/// One Aitken delta-squared pass; shrinks the sequence by two.
inline std::vector<double> aitken_pass(const std::vector<double>& s) {
    std::vector<double> out;
    if (s.size() < 3) return out;
    out.reserve(s.size() - 2);
    for (size_t i = 0; i + 2 < s.size(); ++i) {
        const double d1 = s[i + 1] - s[i];
        const double d2 = s[i + 2] - s[i + 1];
        const double denom = d2 - d1;
        const double scale = std::abs(s[i + 2]) + std::abs(d2);
        if (std::abs(denom) < 1e-15 * scale + 1e-300)
            out.push_back(s[i + 2]);
        else
            out.push_back(s[i + 2] - d2 * d2 / denom);
    }
    return out;
}

/// Iterated Aitken extrapolation. Converged once consecutive stage limits
/// agree within tol.
inline AitkenOutcome iterated_aitken(std::vector<double> seq, double tol) {
    AitkenOutcome out;
    if (seq.empty()) return out;
    out.value = seq.back();
    if (seq.size() < 3) return out;
    double prev = seq.back();
    while (seq.size() >= 3) {
        seq = aitken_pass(seq);
        const double est = seq.back();
        const double res = std::abs(est - prev);
        if (res < out.residual) {
            out.residual = res;
            out.value = est;
        }
        if (res < tol) {
            out.value = est;
            out.residual = res;
            out.converged = true;
            return out;
        }
        prev = est;
    }
    return out;
}

} // namespace manikern

#endif
