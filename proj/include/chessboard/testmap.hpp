#pragma once

#include "chessboard/measures.hpp"
#include "chessboard/poly1d.hpp"

#include <span>
#include <vector>

namespace chessboard {

// A point of the sphere product: a direction in R^d and lift coefficients
// in R^k, both unit vectors.
struct TestPoint {
    std::vector<double> direction;
    std::vector<double> lift_coeffs;

    void validate() const; // unit within 1e-12
};

// Everything the lifted geometry reduces to on the t-line: the reference
// offset a_v, the lift polynomial q(t) = n1*a_v + n1 t + n2 t^2 + ... +
// nk t^k, and the offset alpha at which the lifted hyperplane bisects the
// last measure.
struct LiftFrame {
    double reference_offset = 0.0;
    Poly1 lift_poly;
    double bisecting_alpha = 0.0;
};

struct BisectionResult {
    std::vector<double> direction;
    double reference_offset = 0.0;
    double alpha = 0.0;
    std::vector<double> p_coeffs;   // q - alpha; chessboard color at offset s
                                    // along v is the sign of p(s - a_v)
    std::vector<double> cuts;       // absolute offsets along v, ascending
    std::vector<double> imbalances; // signed white-minus-black mass, per measure
    double residual = 0.0;          // max |imbalance| / measure mass
};

// Midpoint of the smallest and largest per-measure directional medians; the
// whole interval between them consists of valid reference offsets.
double reference_offset(std::span<const WeightedCloud> measures, std::span<const double> v);

// Solves superlevel_mass(pf, q, alpha) = total/2 for alpha by monotone
// bisection to 1e-12 relative mass tolerance. Throws DegenerateDirection
// for constant q.
double bisecting_offset(const Pushforward1D& pf, const Poly1& q);

// Builds the frame for a test point: reference offset from all measures,
// lift polynomial from the coefficients, bisecting offset from the last
// measure.
LiftFrame build_lift_frame(std::span<const WeightedCloud> measures, const TestPoint& tp);

// The n-1 signed mass differences (superlevel minus sublevel of the lift
// polynomial at alpha) for all measures except the last.
std::vector<double> eval_test_map(std::span<const WeightedCloud> measures, const TestPoint& tp);
std::vector<double> eval_test_map(std::span<const WeightedCloud> measures, const TestPoint& tp,
                                  const LiftFrame& frame);

// Decodes a (near-)zero of the test map into cut positions and recomputes
// every imbalance independently by signed interval integration of the
// chessboard coloring. Throws std::runtime_error when the recomputed
// residual exceeds max_residual.
BisectionResult decode_zero(std::span<const WeightedCloud> measures, const TestPoint& tp,
                            const LiftFrame& frame, double max_residual = 1e-6);

// Signed chessboard imbalance of one measure given absolute cut offsets and
// the sign polynomial; shared by decode_zero and the solver's validator.
double chessboard_imbalance(const Pushforward1D& pf, std::span<const double> cuts,
                            const Poly1& p, double reference_offset);

} // namespace chessboard
