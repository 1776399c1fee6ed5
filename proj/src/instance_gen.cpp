#include "chessboard/instance_gen.hpp"

#include "chessboard/detail/newton.hpp"

#include <cmath>
#include <numbers>

namespace chessboard::gen {

namespace {

double uniform01(std::uint64_t& state) {
    return static_cast<double>(detail::splitmix64(state) >> 11) * 0x1.0p-53;
}

double normal(std::uint64_t& state) {
    const double u1 = std::max(uniform01(state), 1e-300);
    const double u2 = uniform01(state);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace

WeightedCloud gaussian_cloud(std::uint64_t seed, std::size_t dim, std::size_t count,
                             double center_box, double spread, double bandwidth) {
    std::uint64_t state = seed ^ 0x6a09e667f3bcc909ull;
    std::vector<double> center(dim);
    for (auto& c : center) c = center_box * (2.0 * uniform01(state) - 1.0);
    WeightedCloud cloud;
    cloud.bandwidth = bandwidth;
    cloud.points.reserve(count);
    cloud.weights.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<double> p(dim);
        for (std::size_t c = 0; c < dim; ++c) p[c] = center[c] + spread * normal(state);
        cloud.points.push_back(std::move(p));
        cloud.weights.push_back(0.5 + uniform01(state));
    }
    return cloud;
}

std::vector<WeightedCloud> gaussian_instance(std::uint64_t seed, std::size_t dim,
                                             std::size_t n_measures, std::size_t points_each,
                                             double bandwidth) {
    std::vector<WeightedCloud> measures;
    measures.reserve(n_measures);
    std::uint64_t state = seed;
    for (std::size_t j = 0; j < n_measures; ++j) {
        const std::uint64_t sub = detail::splitmix64(state);
        measures.push_back(gaussian_cloud(sub, dim, points_each, 1.0, 0.6, bandwidth));
    }
    return measures;
}

WeightedCloud smoothed_uniform_1d(const std::vector<std::pair<double, double>>& intervals,
                                  double spacing, double bandwidth) {
    WeightedCloud cloud;
    cloud.bandwidth = bandwidth;
    for (const auto& [lo, hi] : intervals) {
        const int cells = std::max(1, static_cast<int>(std::ceil((hi - lo) / spacing)));
        const double h = (hi - lo) / cells;
        for (int i = 0; i < cells; ++i) {
            cloud.points.push_back({lo + (i + 0.5) * h});
            cloud.weights.push_back(h);
        }
    }
    return cloud;
}

std::vector<WeightedCloud> necklace_pair(double spacing, double bandwidth) {
    return {smoothed_uniform_1d({{0.0, 4.0}}, spacing, bandwidth),
            smoothed_uniform_1d({{0.0, 1.0}, {2.0, 3.0}}, spacing, bandwidth)};
}

} // namespace chessboard::gen
