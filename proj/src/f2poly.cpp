#include "chessboard/f2poly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace chessboard::f2 {

Ring::Ring(std::vector<std::string> names, std::vector<int> degrees)
    : names_(std::move(names)), degrees_(std::move(degrees)) {
    if (names_.size() != degrees_.size())
        throw std::invalid_argument("ring: name/degree count mismatch");
    for (int d : degrees_)
        if (d < 1) throw std::invalid_argument("ring: generator degrees must be positive");
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j])
                throw std::invalid_argument("ring: duplicate generator name " + names_[i]);
}

int Ring::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return -1;
}

RingPtr make_ring(std::vector<std::string> names, std::vector<int> degrees) {
    return std::make_shared<const Ring>(std::move(names), std::move(degrees));
}

int Monomial::degree(const Ring& ring) const {
    int d = 0;
    for (std::size_t i = 0; i < exponents.size(); ++i)
        d += static_cast<int>(exponents[i]) * ring.gen_degree(i);
    return d;
}

Monomial Monomial::times(const Monomial& other) const {
    if (exponents.size() != other.exponents.size())
        throw std::invalid_argument("monomial: mismatched generator counts");
    Monomial out = *this;
    for (std::size_t i = 0; i < exponents.size(); ++i)
        out.exponents[i] = static_cast<std::uint16_t>(out.exponents[i] + other.exponents[i]);
    return out;
}

bool Monomial::is_one() const {
    for (auto e : exponents)
        if (e != 0) return false;
    return true;
}

bool grevlex_less(const Ring& ring, const Monomial& a, const Monomial& b) {
    const int da = a.degree(ring), db = b.degree(ring);
    if (da != db) return da < db;
    for (std::size_t i = a.exponents.size(); i-- > 0;) {
        if (a.exponents[i] != b.exponents[i])
            return a.exponents[i] > b.exponents[i];
    }
    return false;
}

void Poly::check_compatible(const Poly& other) const {
    if (!ring_ || !other.ring_)
        throw std::invalid_argument("poly: operation on ring-less polynomial");
    if (ring_ != other.ring_ && ring_->gen_count() != other.ring_->gen_count())
        throw std::invalid_argument("poly: mismatched generator counts");
}

Poly Poly::one(RingPtr ring) {
    Poly p(ring);
    p.terms_.push_back(Monomial::one(ring->gen_count()));
    return p;
}

Poly Poly::generator(RingPtr ring, std::size_t index) {
    if (index >= ring->gen_count())
        throw std::invalid_argument("poly: generator index out of range");
    Monomial m = Monomial::one(ring->gen_count());
    m.exponents[index] = 1;
    Poly p(ring);
    p.terms_.push_back(std::move(m));
    return p;
}

Poly Poly::monomial(RingPtr ring, Monomial m) {
    if (m.exponents.size() != ring->gen_count())
        throw std::invalid_argument("poly: monomial size does not match ring");
    Poly p(ring);
    p.terms_.push_back(std::move(m));
    return p;
}

Poly Poly::from_terms(RingPtr ring, std::vector<Monomial> terms) {
    for (const auto& t : terms)
        if (t.exponents.size() != ring->gen_count())
            throw std::invalid_argument("poly: term size does not match ring");
    const Ring& r = *ring;
    std::sort(terms.begin(), terms.end(),
              [&r](const Monomial& a, const Monomial& b) { return grevlex_less(r, b, a); });
    // adjacent equal pairs cancel over F2
    std::vector<Monomial> kept;
    kept.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i;
        while (j < terms.size() && terms[j] == terms[i]) ++j;
        if ((j - i) % 2 == 1) kept.push_back(terms[i]);
        i = j;
    }
    Poly p(std::move(ring));
    p.terms_ = std::move(kept);
    return p;
}

int Poly::degree() const {
    if (terms_.empty()) return -1;
    return terms_.front().degree(*ring_);
}

bool Poly::homogeneous() const {
    if (terms_.size() <= 1) return true;
    return terms_.front().degree(*ring_) == terms_.back().degree(*ring_);
}

Poly Poly::operator+(const Poly& other) const {
    check_compatible(other);
    const Ring& r = *ring_;
    Poly out(ring_);
    out.terms_.reserve(terms_.size() + other.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < other.terms_.size()) {
        if (terms_[i] == other.terms_[j]) {
            ++i; ++j; // cancels
        } else if (grevlex_less(r, other.terms_[j], terms_[i])) {
            out.terms_.push_back(terms_[i++]);
        } else {
            out.terms_.push_back(other.terms_[j++]);
        }
    }
    out.terms_.insert(out.terms_.end(), terms_.begin() + i, terms_.end());
    out.terms_.insert(out.terms_.end(), other.terms_.begin() + j, other.terms_.end());
    return out;
}

Poly Poly::operator*(const Poly& other) const {
    check_compatible(other);
    std::vector<Monomial> products;
    products.reserve(terms_.size() * other.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : other.terms_)
            products.push_back(a.times(b));
    return from_terms(ring_, std::move(products));
}

bool Poly::operator==(const Poly& other) const {
    return terms_ == other.terms_;
}

Poly Poly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("poly: negative power");
    Poly result = Poly::one(ring_);
    Poly base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

Poly Poly::graded_component(int deg) const {
    if (deg < 0) throw std::invalid_argument("poly: negative degree");
    Poly out(ring_);
    for (const auto& t : terms_)
        if (t.degree(*ring_) == deg) out.terms_.push_back(t);
    return out;
}

Poly Poly::substitute(std::size_t gen, const Poly& value) const {
    if (gen >= ring_->gen_count())
        throw std::invalid_argument("poly: generator index out of range");
    check_compatible(value);
    Poly out(ring_);
    for (const auto& t : terms_) {
        Monomial rest = t;
        const int e = rest.exponents[gen];
        rest.exponents[gen] = 0;
        Poly piece = Poly::monomial(ring_, std::move(rest));
        if (e > 0) piece = piece * value.pow(e);
        out += piece;
    }
    return out;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first_term = true;
    for (const auto& t : terms_) {
        if (!first_term) os << " + ";
        first_term = false;
        if (t.is_one()) {
            os << "1";
            continue;
        }
        bool first_factor = true;
        for (std::size_t i = 0; i < t.exponents.size(); ++i) {
            if (t.exponents[i] == 0) continue;
            if (!first_factor) os << "*";
            first_factor = false;
            os << ring_->gen_name(i);
            if (t.exponents[i] > 1) os << "^" << t.exponents[i];
        }
    }
    return os.str();
}

namespace {

void skip_ws(std::string_view s, std::size_t& pos) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
}

} // namespace

Poly parse(RingPtr ring, std::string_view text) {
    std::vector<Monomial> terms;
    std::size_t pos = 0;
    skip_ws(text, pos);
    if (pos < text.size() && text[pos] == '0' &&
        (pos + 1 == text.size() || text.find_first_not_of(" \t", pos + 1) == std::string_view::npos)) {
        return Poly::zero(ring);
    }
    while (pos < text.size()) {
        Monomial m = Monomial::one(ring->gen_count());
        while (true) {
            skip_ws(text, pos);
            if (pos < text.size() && text[pos] == '1') {
                ++pos;
            } else {
                std::size_t start = pos;
                while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) != 0))
                    ++pos;
                if (pos == start) throw std::invalid_argument("poly parse: expected factor");
                const int idx = ring->index_of(text.substr(start, pos - start));
                if (idx < 0)
                    throw std::invalid_argument("poly parse: unknown generator '" +
                                                std::string(text.substr(start, pos - start)) + "'");
                int exp = 1;
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    std::size_t estart = pos;
                    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                        ++pos;
                    if (pos == estart) throw std::invalid_argument("poly parse: expected exponent");
                    exp = std::stoi(std::string(text.substr(estart, pos - estart)));
                }
                m.exponents[idx] = static_cast<std::uint16_t>(m.exponents[idx] + exp);
            }
            skip_ws(text, pos);
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        terms.push_back(std::move(m));
        skip_ws(text, pos);
        if (pos < text.size()) {
            if (text[pos] != '+') throw std::invalid_argument("poly parse: expected '+'");
            ++pos;
        }
    }
    return Poly::from_terms(std::move(ring), std::move(terms));
}

namespace {

void enumerate_rec(const Ring& ring, const std::vector<char>& allowed, std::size_t gen,
                   int remaining, Monomial& scratch, std::vector<Monomial>& out) {
    if (gen == ring.gen_count()) {
        if (remaining == 0) out.push_back(scratch);
        return;
    }
    const bool usable = allowed.empty() || allowed[gen];
    const int gd = ring.gen_degree(gen);
    const int max_e = usable ? remaining / gd : 0;
    for (int e = 0; e <= max_e; ++e) {
        scratch.exponents[gen] = static_cast<std::uint16_t>(e);
        enumerate_rec(ring, allowed, gen + 1, remaining - e * gd, scratch, out);
    }
    scratch.exponents[gen] = 0;
}

} // namespace

std::vector<Monomial> monomials_of_degree(const Ring& ring, int degree,
                                          const std::vector<char>& allowed) {
    if (degree < 0) return {};
    std::vector<Monomial> out;
    Monomial scratch = Monomial::one(ring.gen_count());
    enumerate_rec(ring, allowed, 0, degree, scratch, out);
    std::sort(out.begin(), out.end(),
              [&ring](const Monomial& a, const Monomial& b) { return grevlex_less(ring, b, a); });
    return out;
}

BitMatrix::BitMatrix(std::size_t cols)
    : cols_(cols), words_((cols + 63) / 64), pivot_of_col_(cols, -1) {}

std::size_t BitMatrix::leading_bit(const std::vector<std::uint64_t>& row) {
    for (std::size_t w = 0; w < row.size(); ++w)
        if (row[w] != 0)
            return w * 64 + static_cast<std::size_t>(std::countr_zero(row[w]));
    return npos;
}

std::size_t BitMatrix::reduce(std::vector<std::uint64_t>& row) const {
    std::size_t lead = leading_bit(row);
    while (lead != npos && pivot_of_col_[lead] >= 0) {
        const auto& prow = rows_[static_cast<std::size_t>(pivot_of_col_[lead])];
        for (std::size_t w = 0; w < words_; ++w) row[w] ^= prow[w];
        lead = leading_bit(row);
    }
    return lead;
}

bool BitMatrix::insert(std::vector<std::uint64_t> row) {
    row.resize(words_, 0);
    const std::size_t lead = reduce(row);
    if (lead == npos) return false;
    pivot_of_col_[lead] = static_cast<std::int32_t>(rows_.size());
    rows_.push_back(std::move(row));
    return true;
}

bool BitMatrix::contains(std::vector<std::uint64_t> row) const {
    row.resize(words_, 0);
    return reduce(row) == npos;
}

void BitMatrix::jordan_normalize() {
    // eliminate every pivot column from all other rows, working upward
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < cols_; ++c)
        if (pivot_of_col_[c] >= 0) pivots.push_back(c);
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        const std::size_t c = *it;
        const auto& src = rows_[static_cast<std::size_t>(pivot_of_col_[c])];
        const std::size_t w = c / 64;
        const std::uint64_t bit = 1ull << (c % 64);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (static_cast<std::int32_t>(r) == pivot_of_col_[c]) continue;
            if (rows_[r][w] & bit)
                for (std::size_t k = 0; k < words_; ++k) rows_[r][k] ^= src[k];
        }
    }
}

bool BitMatrix::is_pivot(std::size_t col) const {
    return pivot_of_col_[col] >= 0;
}

const std::vector<std::uint64_t>& BitMatrix::pivot_row(std::size_t col) const {
    if (!is_pivot(col)) throw std::logic_error("bitmatrix: not a pivot column");
    return rows_[static_cast<std::size_t>(pivot_of_col_[col])];
}

GradedIdealSlice::GradedIdealSlice(RingPtr ring, std::span<const Poly> gens, int degree)
    : ring_(std::move(ring)), degree_(degree),
      columns_(monomials_of_degree(*ring_, degree)), mat_(columns_.size()) {
    column_keys_.reserve(columns_.size());
    for (const auto& m : columns_) column_keys_.push_back(m.exponents);
    column_perm_.resize(columns_.size());
    for (std::size_t i = 0; i < columns_.size(); ++i) column_perm_[i] = i;
    std::sort(column_perm_.begin(), column_perm_.end(), [this](std::size_t a, std::size_t b) {
        return column_keys_[a] < column_keys_[b];
    });

    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        if (!g.homogeneous())
            throw std::invalid_argument("ideal slice: generators must be homogeneous");
        const int gd = g.degree();
        if (gd > degree_) continue;
        for (const auto& u : monomials_of_degree(*ring_, degree_ - gd)) {
            const Poly shifted = g * Poly::monomial(ring_, u);
            mat_.insert(to_row(shifted));
        }
    }
}

std::size_t GradedIdealSlice::column_of(const Monomial& m) const {
    auto it = std::lower_bound(column_perm_.begin(), column_perm_.end(), m.exponents,
                               [this](std::size_t idx, const std::vector<std::uint16_t>& key) {
                                   return column_keys_[idx] < key;
                               });
    if (it == column_perm_.end() || column_keys_[*it] != m.exponents)
        throw std::logic_error("ideal slice: monomial outside the degree slice");
    return *it;
}

std::vector<std::uint64_t> GradedIdealSlice::to_row(const Poly& p) const {
    std::vector<std::uint64_t> row((columns_.size() + 63) / 64, 0);
    for (const auto& t : p.terms()) {
        const std::size_t c = column_of(t);
        row[c / 64] ^= 1ull << (c % 64);
    }
    return row;
}

bool GradedIdealSlice::contains(const Poly& target) const {
    if (target.is_zero()) return true;
    if (!target.homogeneous() || target.degree() != degree_)
        throw std::invalid_argument("ideal slice: target degree mismatch");
    return mat_.contains(to_row(target));
}

} // namespace chessboard::f2
