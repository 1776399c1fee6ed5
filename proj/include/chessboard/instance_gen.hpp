#pragma once

#include "chessboard/measures.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace chessboard::gen {

// Deterministic Gaussian cloud: `count` points around a random center in
// [-center_box, center_box]^dim with the given spread.
WeightedCloud gaussian_cloud(std::uint64_t seed, std::size_t dim, std::size_t count,
                             double center_box, double spread, double bandwidth);

// n_measures independent clouds sharing one instance seed.
std::vector<WeightedCloud> gaussian_instance(std::uint64_t seed, std::size_t dim,
                                             std::size_t n_measures, std::size_t points_each,
                                             double bandwidth);

// Smoothed uniform measure on a union of intervals: grid midpoints carry
// the cell lengths as weights, so the total mass equals the total length.
WeightedCloud smoothed_uniform_1d(const std::vector<std::pair<double, double>>& intervals,
                                  double spacing, double bandwidth);

// The two-measure regression instance: uniform on [0,4] and uniform on
// [0,1] u [2,3], both smoothed.
std::vector<WeightedCloud> necklace_pair(double spacing = 0.01, double bandwidth = 0.01);

} // namespace chessboard::gen
