#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "perphedge/errors.hpp"

namespace perphedge::stats {

inline double mean(std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

// Unbiased (n-1) sample variance.
inline double sample_variance(std::span<const double> xs) {
    detail::require(xs.size() >= 2, Errc::degenerate_sample, "variance needs at least 2 points");
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs) {
        const double d = x - m;
        s += d * d;
    }
    return s / static_cast<double>(xs.size() - 1);
}

inline double sample_covariance(std::span<const double> xs, std::span<const double> ys) {
    detail::require(xs.size() == ys.size(), Errc::degenerate_sample, "covariance length mismatch");
    detail::require(xs.size() >= 2, Errc::degenerate_sample, "covariance needs at least 2 points");
    const double mx = mean(xs);
    const double my = mean(ys);
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (xs[i] - mx) * (ys[i] - my);
    return s / static_cast<double>(xs.size() - 1);
}

inline double correlation(std::span<const double> xs, std::span<const double> ys) {
    const double vx = sample_variance(xs);
    const double vy = sample_variance(ys);
    detail::require(vx > 0.0 && vy > 0.0, Errc::degenerate_sample, "correlation of a constant series");
    return sample_covariance(xs, ys) / std::sqrt(vx * vy);
}

} // namespace perphedge::stats
