#include "chessboard/parity.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace chessboard::parity {

namespace {
constexpr int kValueCap = 40; // S(40,k) < 2^128 with the recurrence intact
}

std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

u128 stirling2(int n, int k) {
    if (n < 0 || k < 0) throw std::invalid_argument("stirling2: negative arguments");
    if (n > kValueCap) throw std::overflow_error("stirling2: n above the exact-value cap");
    if (k > n) return 0;
    if (n == 0) return k == 0 ? 1 : 0;
    if (k == 0) return 0;
    // row-by-row table, S(r, c) for c = 0..k
    std::vector<u128> row(static_cast<std::size_t>(k) + 1, 0);
    row[0] = 1; // S(0,0)
    for (int r = 1; r <= n; ++r) {
        for (int c = std::min(r, k); c >= 1; --c)
            row[static_cast<std::size_t>(c)] =
                static_cast<u128>(c) * row[static_cast<std::size_t>(c)] +
                row[static_cast<std::size_t>(c) - 1];
        row[0] = 0; // S(r,0) = 0 for r >= 1
    }
    return row[static_cast<std::size_t>(k)];
}

int stirling2_parity(int n, int k) {
    if (n < 0 || k < 0) throw std::invalid_argument("stirling2_parity: negative arguments");
    if (k > n) return 0;
    if (n == 0) return k == 0 ? 1 : 0;
    if (k == 0) return 0;
    std::vector<unsigned char> row(static_cast<std::size_t>(k) + 1, 0);
    row[0] = 1;
    for (int r = 1; r <= n; ++r) {
        for (int c = std::min(r, k); c >= 1; --c) {
            const unsigned char self = (c % 2 == 1) ? row[static_cast<std::size_t>(c)] : 0;
            row[static_cast<std::size_t>(c)] =
                static_cast<unsigned char>((self ^ row[static_cast<std::size_t>(c) - 1]) & 1);
        }
        row[0] = 0;
    }
    return row[static_cast<std::size_t>(k)];
}

int binom_parity(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    return ((k & ~n) == 0) ? 1 : 0;
}

int stirling_parity_fast(int n, int k) {
    if (k < 1 || n < k) throw std::invalid_argument("stirling_parity_fast: requires n >= k >= 1");
    const int a = (k + 1) / 2; // ceil(k/2)
    const std::int64_t top = static_cast<std::int64_t>(n) + a - k - 1;
    const std::int64_t bottom = a - 1;
    return binom_parity(static_cast<std::uint64_t>(top), static_cast<std::uint64_t>(bottom));
}

ParityReport make_report(int n, int k) {
    ParityReport rep;
    rep.n = n;
    rep.k = k;
    if (n <= kValueCap) {
        const u128 v = stirling2(n, k);
        rep.value_available = true;
        rep.stirling_value = u128_to_string(v);
        rep.stirling_parity = static_cast<int>(v & 1);
    } else {
        rep.stirling_parity = stirling2_parity(n, k);
    }
    rep.binom_parity = (n >= k && k >= 1) ? stirling_parity_fast(n, k) : rep.stirling_parity;
    return rep;
}

} // namespace chessboard::parity
