#include "chessboard/grasscoh.hpp"

#include <algorithm>
#include <stdexcept>

namespace chessboard::grass {

std::size_t Presentation::w_index(int i) const {
    if (i < 1 || i > d) throw std::invalid_argument("presentation: w index out of range");
    return static_cast<std::size_t>(i - 1);
}

std::size_t Presentation::wb_index(int j) const {
    if (j < 1 || j > m) throw std::invalid_argument("presentation: wb index out of range");
    return static_cast<std::size_t>(d + j - 1);
}

std::size_t Presentation::t_index(int which) const {
    if (!with_t || which < 1 || which > 2)
        throw std::invalid_argument("presentation: no such t generator");
    return static_cast<std::size_t>(d + m + which - 1);
}

f2::Poly Presentation::w(int i) const {
    if (i == 0) return f2::Poly::one(ring);
    if (i < 0 || i > d) return f2::Poly::zero(ring);
    return f2::Poly::generator(ring, w_index(i));
}

f2::Poly Presentation::wb(int j) const {
    if (j == 0) return f2::Poly::one(ring);
    if (j < 0 || j > m) return f2::Poly::zero(ring);
    return f2::Poly::generator(ring, wb_index(j));
}

f2::Poly Presentation::t(int which) const {
    return f2::Poly::generator(ring, t_index(which));
}

Presentation build_presentation(int d, int m, bool with_t) {
    if (d < 1 || m < 0) throw std::invalid_argument("presentation: need d >= 1, m >= 0");
    std::vector<std::string> names;
    std::vector<int> degrees;
    for (int i = 1; i <= d; ++i) {
        names.push_back("w" + std::to_string(i));
        degrees.push_back(i);
    }
    for (int j = 1; j <= m; ++j) {
        names.push_back("wb" + std::to_string(j));
        degrees.push_back(j);
    }
    if (with_t) {
        names.push_back("t1");
        names.push_back("t2");
        degrees.push_back(1);
        degrees.push_back(1);
    }
    Presentation pres;
    pres.ring = f2::make_ring(std::move(names), std::move(degrees));
    pres.d = d;
    pres.m = m;
    pres.with_t = with_t;
    for (int i = 1; i <= d + m; ++i) {
        f2::Poly rel = f2::Poly::zero(pres.ring);
        for (int a = 0; a <= i; ++a)
            rel += pres.w(a) * pres.wb(i - a);
        pres.relations.push_back(std::move(rel));
    }
    return pres;
}

CohomologyRing::CohomologyRing(int d, int m, bool with_t, int max_degree)
    : CohomologyRing(build_presentation(d, m, with_t), max_degree) {}

CohomologyRing::CohomologyRing(Presentation pres, int max_degree)
    : pres_(std::move(pres)), max_degree_(max_degree) {
    if (max_degree_ < 0) throw std::invalid_argument("cohomology: negative degree cap");
    build_tables();
}

void CohomologyRing::build_tables() {
    const int d = pres_.d, m = pres_.m;

    // dual classes from the triangular relations: the degree-j relation
    // solves for wb_j in terms of w's and lower wb's
    duals_.assign(static_cast<std::size_t>(m) + 1, f2::Poly::zero(pres_.ring));
    duals_[0] = f2::Poly::one(pres_.ring);
    for (int j = 1; j <= m; ++j) {
        f2::Poly rel = pres_.relations[static_cast<std::size_t>(j - 1)];
        // move the lone wb_j term across (characteristic 2: add it)
        f2::Poly expansion = rel + pres_.wb(j);
        // lower wb's recursively eliminated
        for (int l = j - 1; l >= 1; --l)
            expansion = expansion.substitute(pres_.wb_index(l), duals_[static_cast<std::size_t>(l)]);
        duals_[static_cast<std::size_t>(j)] = std::move(expansion);
    }

    residual_.clear();
    for (int i = m + 1; i <= d + m; ++i)
        residual_.push_back(eliminate_dual(pres_.relations[static_cast<std::size_t>(i - 1)]));

    // per-degree row reduction over the pure-w monomials
    std::vector<char> w_only(pres_.ring->gen_count(), 0);
    for (int i = 1; i <= d; ++i) w_only[pres_.w_index(i)] = 1;

    tables_.resize(static_cast<std::size_t>(max_degree_) + 1);
    for (int deg = 0; deg <= max_degree_; ++deg) {
        DegreeTable& table = tables_[static_cast<std::size_t>(deg)];
        table.monomials = f2::monomials_of_degree(*pres_.ring, deg, w_only);
        table.keys.reserve(table.monomials.size());
        for (const auto& mono : table.monomials) table.keys.push_back(mono.exponents);
        table.perm.resize(table.monomials.size());
        for (std::size_t i = 0; i < table.perm.size(); ++i) table.perm[i] = i;
        std::sort(table.perm.begin(), table.perm.end(), [&table](std::size_t a, std::size_t b) {
            return table.keys[a] < table.keys[b];
        });
        table.mat = f2::BitMatrix(table.monomials.size());

        for (const auto& rel : residual_) {
            if (rel.is_zero()) continue;
            const int rd = rel.degree();
            if (rd > deg) continue;
            for (const auto& u : f2::monomials_of_degree(*pres_.ring, deg - rd, w_only)) {
                const f2::Poly shifted = rel * f2::Poly::monomial(pres_.ring, u);
                std::vector<std::uint64_t> row((table.monomials.size() + 63) / 64, 0);
                for (const auto& t : shifted.terms()) {
                    const std::size_t c = column_of(table, t);
                    row[c / 64] ^= 1ull << (c % 64);
                }
                table.mat.insert(std::move(row));
            }
        }
        table.mat.jordan_normalize();
        for (std::size_t c = 0; c < table.monomials.size(); ++c)
            if (!table.mat.is_pivot(c)) table.basis.push_back(table.monomials[c]);
    }
}

std::size_t CohomologyRing::column_of(const DegreeTable& t, const f2::Monomial& m) const {
    auto it = std::lower_bound(t.perm.begin(), t.perm.end(), m.exponents,
                               [&t](std::size_t idx, const std::vector<std::uint16_t>& key) {
                                   return t.keys[idx] < key;
                               });
    if (it == t.perm.end() || t.keys[*it] != m.exponents)
        throw std::logic_error("cohomology: monomial missing from degree table");
    return *it;
}

f2::Poly CohomologyRing::eliminate_dual(const f2::Poly& p) const {
    f2::Poly out = p;
    for (int j = pres_.m; j >= 1; --j)
        out = out.substitute(pres_.wb_index(j), duals_[static_cast<std::size_t>(j)]);
    return out;
}

const f2::Poly& CohomologyRing::dual_class(int j) const {
    if (j < 0 || j > pres_.m) throw std::invalid_argument("cohomology: dual class out of range");
    return duals_[static_cast<std::size_t>(j)];
}

f2::Poly CohomologyRing::reduce_w_monomial(const f2::Monomial& wmono, int wdeg) const {
    if (wdeg > max_degree_)
        throw std::out_of_range("cohomology: degree above the configured cap");
    const DegreeTable& table = tables_[static_cast<std::size_t>(wdeg)];
    const std::size_t c = column_of(table, wmono);
    if (!table.mat.is_pivot(c))
        return f2::Poly::monomial(pres_.ring, wmono);
    // fully reduced pivot row: the remaining bits are basis columns
    const auto& row = table.mat.pivot_row(c);
    std::vector<f2::Monomial> terms;
    for (std::size_t col = 0; col < table.monomials.size(); ++col) {
        if (col == c) continue;
        if (row[col / 64] & (1ull << (col % 64)))
            terms.push_back(table.monomials[col]);
    }
    return f2::Poly::from_terms(pres_.ring, std::move(terms));
}

f2::Poly CohomologyRing::normal_form(const f2::Poly& p) const {
    const f2::Poly q = eliminate_dual(p);
    f2::Poly out = f2::Poly::zero(pres_.ring);
    for (const auto& term : q.terms()) {
        f2::Monomial wpart = term;
        f2::Monomial tpart = f2::Monomial::one(pres_.ring->gen_count());
        if (pres_.with_t) {
            for (int which = 1; which <= 2; ++which) {
                const std::size_t ti = pres_.t_index(which);
                tpart.exponents[ti] = wpart.exponents[ti];
                wpart.exponents[ti] = 0;
            }
        }
        const int wdeg = wpart.degree(*pres_.ring);
        const f2::Poly reduced = reduce_w_monomial(wpart, wdeg);
        out += reduced * f2::Poly::monomial(pres_.ring, tpart);
    }
    return out;
}

int CohomologyRing::dimension(int degree) const {
    if (degree < 0 || degree > max_degree_)
        throw std::out_of_range("cohomology: degree above the configured cap");
    return static_cast<int>(tables_[static_cast<std::size_t>(degree)].basis.size());
}

const std::vector<f2::Monomial>& CohomologyRing::basis(int degree) const {
    if (degree < 0 || degree > max_degree_)
        throw std::out_of_range("cohomology: degree above the configured cap");
    return tables_[static_cast<std::size_t>(degree)].basis;
}

bool check_product_identity(int d, int m) {
    CohomologyRing ring(d, m, /*with_t=*/true, /*max_degree=*/d + m);
    const Presentation& pres = ring.presentation();
    const f2::Poly t1 = pres.t(1);
    f2::Poly left = f2::Poly::zero(pres.ring);
    for (int i = 0; i <= d; ++i) left += t1.pow(d - i) * pres.w(i);
    f2::Poly right = f2::Poly::zero(pres.ring);
    for (int j = 0; j <= m; ++j) right += t1.pow(m - j) * pres.wb(j);
    const f2::Poly difference = left * right + t1.pow(d + m);
    return ring.normal_form(difference).is_zero();
}

bool nonzero_top_dual_class(int d, int m) {
    if (m < 1) throw std::invalid_argument("nonzero_top_dual_class: requires m >= 1");
    CohomologyRing ring(d, m, /*with_t=*/false, /*max_degree=*/m);
    return !ring.normal_form(ring.presentation().wb(m)).is_zero();
}

} // namespace chessboard::grass
