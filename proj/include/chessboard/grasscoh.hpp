#pragma once

#include "chessboard/f2poly.hpp"

#include <vector>

namespace chessboard::grass {

// Generators-and-relations presentation of the mod-2 cohomology of the
// Grassmannian of d-planes in (d+m)-space: generators w_1..w_d (degree i)
// and wb_1..wb_m (degree j), relations
//   sum_{a+b=i} w_a * wb_b = 0   for i = 1..d+m
// with out-of-range symbols zero. When with_t, two free degree-1 generators
// t1, t2 are adjoined (coefficient extension, no new relations).
struct Presentation {
    f2::RingPtr ring;
    int d = 0;
    int m = 0;
    bool with_t = false;
    std::vector<f2::Poly> relations; // index i-1 holds the degree-i relation

    std::size_t w_index(int i) const;  // generator index of w_i, i = 1..d
    std::size_t wb_index(int j) const; // generator index of wb_j, j = 1..m
    std::size_t t_index(int which) const; // which = 1 or 2; requires with_t

    f2::Poly w(int i) const;  // w_0 = 1, w_i = 0 for i > d
    f2::Poly wb(int j) const; // wb_0 = 1, wb_j = 0 for j > m
    f2::Poly t(int which) const;
};

Presentation build_presentation(int d, int m, bool with_t);

// Quotient-ring engine: eliminates the wb generators through the triangular
// relations, then reduces the residual pure-w relations degree by degree via
// row reduction over F2. Immutable once built; normal forms are canonical.
class CohomologyRing {
public:
    CohomologyRing(int d, int m, bool with_t, int max_degree);
    // Same, but over a caller-supplied presentation (test hook: corrupted
    // relations propagate into the reduction tables).
    CohomologyRing(Presentation pres, int max_degree);

    const Presentation& presentation() const { return pres_; }
    int max_degree() const { return max_degree_; }

    // Canonical representative modulo the relation ideal. Accepts arbitrary
    // polynomials; components are reduced independently. Idempotent.
    f2::Poly normal_form(const f2::Poly& p) const;

    // Dimension of the quotient ring in a given w-degree (t generators do
    // not enter; they are free).
    int dimension(int degree) const;
    // Quotient basis monomials (pure w) of a given degree.
    const std::vector<f2::Monomial>& basis(int degree) const;

    // Substitutes every wb_j by its expansion in the w generators.
    f2::Poly eliminate_dual(const f2::Poly& p) const;
    // Expansion of wb_j in w generators (the dual-class recurrence).
    const f2::Poly& dual_class(int j) const;

private:
    Presentation pres_;
    int max_degree_;
    std::vector<f2::Poly> duals_;        // duals_[j] = expansion of wb_j, j = 0..m
    std::vector<f2::Poly> residual_;     // pure-w relations of degree m+1..m+d

    struct DegreeTable {
        std::vector<f2::Monomial> monomials; // pure-w monomials, grevlex desc
        std::vector<std::vector<std::uint16_t>> keys; // sorted exponent keys
        std::vector<std::size_t> perm;               // key rank -> column
        f2::BitMatrix mat{0};
        std::vector<f2::Monomial> basis;             // non-pivot columns
    };
    std::vector<DegreeTable> tables_; // index = w-degree

    void build_tables();
    std::size_t column_of(const DegreeTable& t, const f2::Monomial& m) const;
    f2::Poly reduce_w_monomial(const f2::Monomial& wmono, int wdeg) const;
};

// The product identity the Grassmann relations force:
//   (sum_i t1^(d-i) w_i) * (sum_j t1^(m-j) wb_j) = t1^(d+m).
bool check_product_identity(int d, int m);

// wb_m does not vanish in the quotient (m >= 1).
bool nonzero_top_dual_class(int d, int m);

} // namespace chessboard::grass
