#pragma once

#include <vector>

namespace chessboard {

// Univariate real polynomial, c[0] + c[1] t + c[2] t^2 + ...
class Poly1 {
public:
    Poly1() = default;
    explicit Poly1(std::vector<double> coeffs);

    double operator()(double t) const; // Horner
    // Degree after trimming exact-zero leading coefficients; -1 for zero.
    int degree() const;
    bool is_constant() const { return degree() <= 0; }
    double constant_value() const { return coeffs_.empty() ? 0.0 : coeffs_[0]; }

    Poly1 derivative() const;
    Poly1 minus_constant(double c) const;

    const std::vector<double>& coeffs() const { return coeffs_; }

private:
    std::vector<double> coeffs_;
};

// All distinct real roots in ascending order, isolated by a Sturm chain of
// the square-free part and polished by bisection plus Newton steps. Leading
// coefficients below 1e-12 of the largest are dropped first; the root they
// would contribute lies far outside any mass support.
std::vector<double> real_roots(const Poly1& p, double polish_tol = 1e-13);

} // namespace chessboard
