#pragma once

#include "chessboard/solver.hpp"

#include <vector>

namespace chessboard {

// The built-in mass-assignment model: a cloud in the ambient space whose
// measure on a subspace V is the orthogonal projection of the cloud onto V,
// smoothed inside V with the same bandwidth.
struct ProjectionAssignment {
    WeightedCloud ambient;
};

// d orthonormal rows spanning a d-subspace of the ambient space. Results
// are reported up to the O(d) gauge of the row basis.
struct SubspaceFrame {
    std::vector<std::vector<double>> rows;

    std::size_t subspace_dim() const { return rows.size(); }
    std::size_t ambient_dim() const { return rows.empty() ? 0 : rows.front().size(); }
    void validate(double tol = 1e-10) const;

    static SubspaceFrame identity(std::size_t d, std::size_t ambient);
};

// Coordinates of the projected points in the frame basis; weights and
// bandwidth carried over.
WeightedCloud restrict_to(const ProjectionAssignment& assignment, const SubspaceFrame& frame);

struct AssignSearchReport {
    bool success = false;
    SubspaceFrame frame;
    BisectionResult result;
    TestPoint solution;
    double best_residual = std::numeric_limits<double>::infinity();
    int winning_restart = -1;
    std::vector<AttemptSummary> attempts;
    bool certified = false;
    int stirling_parity = 0;
    bool recommended_count = true;
    std::string warning;
};

// Joint multi-start search over (frame, direction, lift coefficients). With
// m = 0 the Grassmannian is a point and the search delegates to solve() on
// the identity frame. For m >= 1 the system is underdetermined and any
// validated zero is accepted.
AssignSearchReport assign_search(std::span<const ProjectionAssignment> assignments, int d, int k,
                                 const SolveConfig& cfg);

} // namespace chessboard
