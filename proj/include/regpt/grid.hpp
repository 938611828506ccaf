#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "regpt/errors.hpp"

namespace regpt {

/// Uniform grid on a segment of the half-line r > 0.
struct RadialGrid {
    double r_min;
    double r_max;
    int n_points;

    RadialGrid(double r_min_, double r_max_, int n_points_)
        : r_min(r_min_), r_max(r_max_), n_points(n_points_) {
        if (!(r_min > 0.0) || !(r_min < r_max))
            throw DomainError("RadialGrid: require 0 < r_min < r_max");
        if (n_points < 2)
            throw DomainError("RadialGrid: require n_points >= 2");
    }

    double step() const { return (r_max - r_min) / (n_points - 1); }

    double point(int i) const { return r_min + step() * i; }
};

/// Composite Simpson rule over uniformly spaced samples. An even sample
/// count is closed with a 3/8 rule on the last three intervals, keeping
/// O(h^4) accuracy throughout.
inline double simpson(const std::vector<double>& f, double h) {
    const int n = static_cast<int>(f.size());
    if (n < 4)
        throw DomainError("simpson: need at least 4 samples");
    int m = (n % 2 == 1) ? n : n - 3; // odd-count prefix
    double sum = f[0] + f[m - 1];
    for (int i = 1; i < m - 1; i += 2) sum += 4.0 * f[i];
    for (int i = 2; i < m - 1; i += 2) sum += 2.0 * f[i];
    double total = sum * h / 3.0;
    if (n % 2 == 0)
        total += 3.0 * h / 8.0 * (f[n - 4] + 3.0 * f[n - 3] + 3.0 * f[n - 2] + f[n - 1]);
    return total;
}

/// Same integral on the stride-2 subsample; the difference against
/// simpson() estimates the quadrature resolution error.
inline double simpson_coarse(const std::vector<double>& f, double h) {
    std::vector<double> g;
    g.reserve(f.size() / 2 + 1);
    for (std::size_t i = 0; i < f.size(); i += 2) g.push_back(f[i]);
    return simpson(g, 2.0 * h);
}

} // namespace regpt
