#pragma once

#include "chessboard/detail/newton.hpp"
#include "chessboard/f2poly.hpp"

namespace test_support {

inline chessboard::f2::Poly random_poly(const chessboard::f2::RingPtr& ring,
                                        std::uint64_t& state, int max_terms, int max_exp) {
    using namespace chessboard;
    std::vector<f2::Monomial> terms;
    const auto count = detail::splitmix64(state) % static_cast<std::uint64_t>(max_terms + 1);
    for (std::uint64_t t = 0; t < count; ++t) {
        f2::Monomial m = f2::Monomial::one(ring->gen_count());
        for (std::size_t g = 0; g < ring->gen_count(); ++g)
            m.exponents[g] = static_cast<std::uint16_t>(detail::splitmix64(state) %
                                                        static_cast<std::uint64_t>(max_exp + 1));
        terms.push_back(std::move(m));
    }
    return f2::Poly::from_terms(ring, std::move(terms));
}

} // namespace test_support
