#ifndef MANIKERN_FITTING_HPP
#define MANIKERN_FITTING_HPP

#include <cstddef>
#include <span>

namespace manikern {

/// Least-squares slope of y against x.
inline double fit_slope(std::span<const double> x, std::span<const double> y) {
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Residual sum of squares of the best-fit line of y against x.
inline double fit_residual(std::span<const double> x, std::span<const double> y) {
    const size_t n = x.size();
    const double slope = fit_slope(x, y);
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double rss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double pred = my + slope * (x[i] - mx);
        rss += (y[i] - pred) * (y[i] - pred);
    }
    return rss;
}

} // namespace manikern

#endif
