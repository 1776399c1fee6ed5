#pragma once

#include "chessboard/poly1d.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace chessboard {

// Weighted point cloud smoothed by an isotropic Gaussian kernel. Strict
// positivity of the bandwidth keeps every directional pushforward density
// positive, so medians and bisecting offsets are unique.
struct WeightedCloud {
    std::vector<std::vector<double>> points;
    std::vector<double> weights;
    double bandwidth = 0.0;

    std::size_t size() const { return points.size(); }
    std::size_t dim() const { return points.empty() ? 0 : points.front().size(); }
    double total_mass() const;
    void validate() const; // throws std::invalid_argument on a broken invariant
};

// 1-D Gaussian mixture: the law of <x, v> under a smoothed cloud.
struct Pushforward1D {
    std::vector<double> centers;
    std::vector<double> weights;
    double bandwidth = 0.0;

    double total_mass() const;
    double cdf(double x) const;
    // Mass of (lo, hi); accepts infinite endpoints.
    double mass_between(double lo, double hi) const;
    Pushforward1D shifted(double delta) const;
};

// Signals a query whose answer is an ambiguous set (constant polynomial
// exactly at the level).
struct DegenerateDirection : std::runtime_error {
    explicit DegenerateDirection(const std::string& what) : std::runtime_error(what) {}
};

// Projects the cloud onto a unit direction. The direction must be unit to
// 1e-12; dimensions must match.
Pushforward1D pushforward(const WeightedCloud& cloud, std::span<const double> v);

// Unique a with CDF(a) = total/2, located by monotone bisection to 1e-12
// of the total mass.
double median(const Pushforward1D& pf);

// Mass of { t : q(t) >= alpha }. Root isolation of q - alpha cuts the line
// into sign intervals; the Gaussian mixture mass of the nonnegative ones is
// accumulated through the error function.
double superlevel_mass(const Pushforward1D& pf, const Poly1& q, double alpha);

} // namespace chessboard
