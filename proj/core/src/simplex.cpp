#include "spectral/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace spectral {

SimplexPoint SimplexPoint::from_weights(std::vector<double> x, double tol) {
    if (x.empty()) throw std::invalid_argument("simplex point: empty weight vector");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || x[i] < 0.0)
            throw std::invalid_argument("simplex point: weight " + std::to_string(i + 1) +
                                        " is negative or non-finite");
        s += x[i];
    }
    if (std::abs(s - 1.0) > tol)
        throw std::invalid_argument("simplex point: weights sum to " + std::to_string(s) + ", not 1");
    return SimplexPoint(std::move(x));
}

SimplexPoint SimplexPoint::vertex(std::size_t n, std::size_t i) {
    if (i >= n) throw std::invalid_argument("simplex vertex index out of range");
    std::vector<double> x(n, 0.0);
    x[i] = 1.0;
    return SimplexPoint(std::move(x));
}

SimplexPoint SimplexPoint::uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("simplex point: n must be >= 1");
    return SimplexPoint(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

void project_in_place(std::span<double> x, std::vector<double>& scratch) {
    const std::size_t n = x.size();
    if (n == 0) throw std::invalid_argument("project: empty vector");
    for (double v : x)
        if (!std::isfinite(v)) throw std::invalid_argument("project: non-finite entry");

    // Largest k with x_(k) > tau_k, tau_k = (sum_{j<=k} x_(j) - 1) / k, over
    // the descending order.
    scratch.assign(x.begin(), x.end());
    std::sort(scratch.begin(), scratch.end(), std::greater<>());
    double cum = 0.0;
    double tau = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        cum += scratch[k];
        const double t = (cum - 1.0) / static_cast<double>(k + 1);
        if (scratch[k] - t > 0.0) tau = t;
        else break;
    }
    for (auto& v : x) v = std::max(v - tau, 0.0);
}

SimplexPoint project(std::span<const double> x) {
    std::vector<double> y(x.begin(), x.end());
    std::vector<double> scratch;
    project_in_place(y, scratch);
    return SimplexPoint(std::move(y));
}

}  // namespace spectral
