#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chessboard::f2 {

// Generator list of a graded polynomial ring over F2. Immutable; polynomials
// hold a shared pointer to their ambient ring and refuse to mix ambients.
class Ring {
public:
    Ring(std::vector<std::string> names, std::vector<int> degrees);

    std::size_t gen_count() const { return degrees_.size(); }
    int gen_degree(std::size_t i) const { return degrees_[i]; }
    const std::string& gen_name(std::size_t i) const { return names_[i]; }
    // Index of a named generator, -1 if absent.
    int index_of(std::string_view name) const;

private:
    std::vector<std::string> names_;
    std::vector<int> degrees_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> names, std::vector<int> degrees);

// Exponent vector, one entry per ring generator.
struct Monomial {
    std::vector<std::uint16_t> exponents;

    static Monomial one(std::size_t gen_count) { return Monomial{std::vector<std::uint16_t>(gen_count, 0)}; }

    int degree(const Ring& ring) const;
    Monomial times(const Monomial& other) const;
    bool is_one() const;

    bool operator==(const Monomial&) const = default;
};

// Graded reverse lexicographic order with the ring's fixed generator order.
bool grevlex_less(const Ring& ring, const Monomial& a, const Monomial& b);

class Poly {
public:
    Poly() = default;
    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

    static Poly zero(RingPtr ring) { return Poly(std::move(ring)); }
    static Poly one(RingPtr ring);
    static Poly generator(RingPtr ring, std::size_t index);
    static Poly monomial(RingPtr ring, Monomial m);
    // Builds from an arbitrary term list; duplicates cancel mod 2.
    static Poly from_terms(RingPtr ring, std::vector<Monomial> terms);

    const RingPtr& ring() const { return ring_; }
    // Sorted grevlex-descending, no duplicates.
    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    // Weighted degree of the leading term; -1 for the zero polynomial.
    int degree() const;
    bool homogeneous() const;

    Poly operator+(const Poly& other) const;
    Poly operator*(const Poly& other) const;
    Poly& operator+=(const Poly& other) { *this = *this + other; return *this; }
    Poly& operator*=(const Poly& other) { *this = *this * other; return *this; }
    bool operator==(const Poly& other) const;

    Poly pow(int e) const;
    // Sum of the terms of exactly this weighted degree.
    Poly graded_component(int deg) const;
    // Replaces generator `gen` by `value` everywhere (value in the same ring).
    Poly substitute(std::size_t gen, const Poly& value) const;

    // Canonical text form, e.g. "t1^2*t2 + w1*t2^2". Zero prints "0".
    std::string str() const;

private:
    RingPtr ring_;
    std::vector<Monomial> terms_;

    void check_compatible(const Poly& other) const;
};

// Parses the canonical text form back into a polynomial.
Poly parse(RingPtr ring, std::string_view text);

// All monomials of the given weighted degree, grevlex-descending. The
// optional mask restricts which generators may appear (empty = all).
std::vector<Monomial> monomials_of_degree(const Ring& ring, int degree,
                                          const std::vector<char>& allowed = {});

// Dense F2 row space with echelon insertion; rows are bitsets over a fixed
// column count. Used for the per-degree linear algebra.
class BitMatrix {
public:
    explicit BitMatrix(std::size_t cols);

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }

    // Reduces `row` in place against the current pivots; returns the leading
    // column afterwards, or `npos` if the row vanished.
    std::size_t reduce(std::vector<std::uint64_t>& row) const;
    // Installs a row as a new pivot after reduction. Returns false if the
    // row was already in the span.
    bool insert(std::vector<std::uint64_t> row);
    bool contains(std::vector<std::uint64_t> row) const;

    // Back-substitutes so every pivot row has the only pivot bit in its own
    // column. Required before reading rows out as normal forms.
    void jordan_normalize();
    bool is_pivot(std::size_t col) const;
    // Row owning this pivot column; valid only for pivot columns.
    const std::vector<std::uint64_t>& pivot_row(std::size_t col) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::size_t cols_;
    std::size_t words_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<std::int32_t> pivot_of_col_; // -1 when the column is free

    static std::size_t leading_bit(const std::vector<std::uint64_t>& row);
};

// Degree-D slice of the homogeneous ideal generated by `gens`: spanned by
// { u*g : g in gens, u monomial of degree D - deg(g) }.
class GradedIdealSlice {
public:
    GradedIdealSlice(RingPtr ring, std::span<const Poly> gens, int degree);

    // Membership of a homogeneous target of the slice degree (zero counts
    // as a member).
    bool contains(const Poly& target) const;
    std::size_t dimension() const { return mat_.rank(); }
    std::size_t column_count() const { return columns_.size(); }

private:
    RingPtr ring_;
    int degree_;
    std::vector<Monomial> columns_;
    std::vector<std::vector<std::uint16_t>> column_keys_; // sorted, for lookup
    std::vector<std::size_t> column_perm_;                // key index -> column
    BitMatrix mat_;

    std::size_t column_of(const Monomial& m) const;
    std::vector<std::uint64_t> to_row(const Poly& p) const;
};

} // namespace chessboard::f2
