#pragma once

#include "chessboard/testmap.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace chessboard {

struct SolveConfig {
    int restarts = 64;
    int max_iterations = 80;
    double residual_tol = 1e-6;
    std::uint64_t seed = 0;
    double jacobian_step = 1e-6;
    int threads = 0; // 0: environment variable, then hardware parallelism
};

struct AttemptSummary {
    int index = 0;
    int iterations = 0;
    double residual = std::numeric_limits<double>::infinity();
    bool converged = false;
    bool validated = false;
};

struct SolveReport {
    bool success = false;
    int winning_restart = -1;
    BisectionResult result; // meaningful when success
    TestPoint solution;
    double best_residual = std::numeric_limits<double>::infinity();
    // Attempts with index <= winning_restart (every attempt on failure);
    // later ones may be skipped once a winner exists, so they are not
    // reported.
    std::vector<AttemptSummary> attempts;
    // Certifier verdict for the (d, k, m=0) triple of this instance.
    bool certified = false;
    int stirling_parity = 0;
    bool recommended_count = true; // n == d+k-1
    std::string warning;           // set when the count is off
};

// Multi-start damped Newton over S^(d-1) x S^(k-1). A failure report is not
// a disproof: the parity certificate only guarantees existence, and the
// search is heuristic.
SolveReport solve(std::span<const WeightedCloud> measures, int k, const SolveConfig& cfg);

struct ValidationReport {
    std::vector<double> imbalances;
    double max_relative_imbalance = 0.0;
    bool pass = false;
};

// Recomputes every imbalance from scratch out of the result's direction,
// cuts, and sign polynomial; passes iff the max relative imbalance stays
// within the tolerance.
ValidationReport validate(std::span<const WeightedCloud> measures, const BisectionResult& result,
                          double tol = 1e-6);

// Relative residual vector used by the solver: the test-map components
// divided by the corresponding measure masses. nullopt for infeasible
// (degenerate) test points.
std::optional<std::vector<double>> relative_residual(std::span<const WeightedCloud> measures,
                                                     const TestPoint& tp);

} // namespace chessboard
