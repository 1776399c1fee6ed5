#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace chessboard::detail {

// State on the search manifold: an optional orthonormal frame block (rows
// span a subspace of the ambient space) and two unit vectors.
struct ManifoldState {
    std::vector<std::vector<double>> frame; // empty when the frame is fixed
    std::vector<double> v;
    std::vector<double> n;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
void normalize(std::vector<double>& a);

// Orthonormal basis of the tangent space at a unit vector (dim-1 vectors);
// deterministic in the input.
std::vector<std::vector<double>> tangent_basis(const std::vector<double>& unit);

// Orthonormal rows completing `rows` to a basis of the ambient space,
// returned in coordinate order. Deterministic.
std::vector<std::vector<double>> complement_basis(const std::vector<std::vector<double>>& rows,
                                                  std::size_t ambient);

// Modified Gram-Schmidt on the rows, in place.
void orthonormalize_rows(std::vector<std::vector<double>>& rows);

std::size_t chart_dim(const ManifoldState& s);

// Moves along chart coordinates and re-projects onto the manifold: frame
// rows are perturbed by complement directions and re-orthonormalized, the
// unit vectors move in their tangent charts and are renormalized.
ManifoldState retract(const ManifoldState& s, std::span<const double> theta);

using ResidualFn = std::function<std::optional<std::vector<double>>(const ManifoldState&)>;

struct NewtonOptions {
    int max_iterations = 80;
    double residual_tol = 1e-6; // on the max norm of the residual
    double fd_step = 1e-6;      // central-difference step in chart coordinates
};

struct NewtonOutcome {
    ManifoldState state;
    std::vector<double> residual;
    double residual_inf = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Damped Gauss-Newton with Levenberg regularization and sphere/Stiefel
// retraction. Minimum-norm steps handle the underdetermined case. The
// residual callback may return nullopt for infeasible points (degenerate
// lift polynomials); such points are treated as line-search failures.
NewtonOutcome damped_gauss_newton(ManifoldState start, const ResidualFn& residual,
                                  const NewtonOptions& opts);

// Deterministic low-discrepancy sequence (Kronecker rotation with the
// generalized golden ratio) shifted by a seed.
class LowDiscrepancy {
public:
    LowDiscrepancy(std::size_t dim, std::uint64_t seed);
    std::vector<double> point(std::uint64_t index) const; // in [0,1)^dim
    // Standard normal draws through Box-Muller on consecutive pairs.
    std::vector<double> normals(std::uint64_t index, std::size_t count) const;

private:
    std::size_t dim_;
    std::vector<double> alphas_;
    std::vector<double> shifts_;
};

std::uint64_t splitmix64(std::uint64_t& state);

} // namespace chessboard::detail
