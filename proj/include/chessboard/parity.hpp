#pragma once

#include <cstdint>
#include <string>

namespace chessboard::parity {

using u128 = unsigned __int128;

std::string u128_to_string(u128 v);

// Stirling number of the second kind via the exact recurrence
// S(n,k) = k*S(n-1,k) + S(n-1,k-1). Guarded by a size cap (n <= 40) so the
// 128-bit accumulator cannot overflow.
u128 stirling2(int n, int k);

// S(n,k) mod 2 by the same recurrence carried out in F2; no size cap.
int stirling2_parity(int n, int k);

// C(n,k) mod 2 by the Lucas criterion: odd iff the base-2 digits of k are
// dominated by those of n.
int binom_parity(std::uint64_t n, std::uint64_t k);

// Parity of S(n,k) through the binomial bridge
// C(n + ceil(k/2) - k - 1, ceil(k/2) - 1) mod 2. Requires n >= k >= 1.
int stirling_parity_fast(int n, int k);

struct ParityReport {
    int n = 0;
    int k = 0;
    bool value_available = false; // false above the size cap
    std::string stirling_value;   // decimal, empty when unavailable
    int stirling_parity = 0;
    int binom_parity = 0;         // the bridge binomial's parity
};

ParityReport make_report(int n, int k);

} // namespace chessboard::parity
