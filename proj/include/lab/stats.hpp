#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "lab/errors.hpp"

namespace lab {

struct MeanSe {
    double mean = 0.0;
    double se = 0.0; // standard error of the mean
    std::size_t n = 0;
};

inline MeanSe mean_se(std::span<const double> xs) {
    MeanSe out;
    out.n = xs.size();
    if (out.n == 0) return out;
    double m = 0.0;
    for (double x : xs) m += x;
    m /= static_cast<double>(out.n);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    out.mean = m;
    out.se = out.n > 1 ? std::sqrt(ss / (static_cast<double>(out.n) * (out.n - 1.0))) : 0.0;
    return out;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw validation_error("fit_line: need >= 2 matched points");
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw numerical_error("fit_line: degenerate abscissae");
    LineFit f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

struct BootstrapCi {
    double lo = 0.0;
    double hi = 0.0;
};

// Percentile bootstrap CI for the mean of xs (95% by default).
BootstrapCi bootstrap_ci_mean(std::span<const double> xs, std::mt19937_64& rng,
                              int resamples = 1000, double coverage = 0.95);

} // namespace lab
