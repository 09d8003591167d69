#pragma once

#include <span>
#include <vector>

namespace spectral {

/// A point of the probability simplex {x : x_i >= 0, sum x_i = 1}.
class SimplexPoint {
public:
    /// Validates membership: entries finite and >= 0, |sum - 1| <= tol.
    /// Throws std::invalid_argument otherwise.
    static SimplexPoint from_weights(std::vector<double> x, double tol = 1e-12);
    /// Vertex e_i of the n-simplex.
    static SimplexPoint vertex(std::size_t n, std::size_t i);
    static SimplexPoint uniform(std::size_t n);

    std::span<const double> weights() const noexcept { return x_; }
    std::size_t size() const noexcept { return x_.size(); }
    double operator[](std::size_t i) const { return x_[i]; }
    const std::vector<double>& vector() const noexcept { return x_; }

    friend bool operator==(const SimplexPoint&, const SimplexPoint&) = default;

private:
    friend SimplexPoint project(std::span<const double> x);
    explicit SimplexPoint(std::vector<double> x) : x_(std::move(x)) {}
    std::vector<double> x_;
};

/// Euclidean projection onto the simplex (sort-and-threshold, O(n log n)).
/// Throws std::invalid_argument on empty or non-finite input.
SimplexPoint project(std::span<const double> x);

/// In-place variant used on hot paths; `scratch` is resized as needed.
void project_in_place(std::span<double> x, std::vector<double>& scratch);

}  // namespace spectral
