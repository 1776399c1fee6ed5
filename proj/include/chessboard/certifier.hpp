#pragma once

#include "chessboard/grasscoh.hpp"

#include <array>
#include <string>
#include <vector>

namespace chessboard::cert {

struct IndexProblem {
    int d = 0;
    int k = 0;
    int m = 0;
    int a = 0;          // ceil(k/2), exponent of the (t1+t2) factor
    int b = 0;          // floor(k/2), exponent of the t2 factor
    int mass_count = 0; // n = d + m + k - 1
    int target_exp = 0; // d + m + k - 2
};

IndexProblem make_problem(int d, int k, int m);

struct Certificate {
    IndexProblem problem;
    bool member = false;     // t2^target_exp lies in the combined ideal
    bool certified = false;  // = !member: bisection guaranteed
    int stirling_parity = 0; // S(n, k) mod 2
    bool consistent = false; // certified == (stirling_parity == 1)
    // Memberships of the three transformed problems, then the bare
    // monomial form of the third one (expected: three copies of `member`
    // followed by 0).
    std::array<bool, 4> step_chain{};
};

struct CertifierOptions {
    int max_degree = 16; // slice-degree cap; guards memory
    int threads = 0;     // grid sweeps only; 0 = environment, then hardware
};

// Exact membership of t2^(d+m+k-2) in the ideal generated by the Grassmann
// relations together with sum_i t1^(d-i) w_i and (t1+t2)^ceil(k/2) *
// t2^floor(k/2), decided by row reduction on the full degree slice.
bool ideal_member(int d, int k, int m, const CertifierOptions& opts = {});

// Membership for the transformed problems of the equivalence chain:
// step 1 drops the t2^floor(k/2) factor and lowers the target, step 2
// applies the involution t2 -> t1+t2, step 3 replaces the binomial target
// by its sole surviving monomial scaled by the bridge binomial mod 2.
bool step_transform_member(int d, int k, int m, int step, const CertifierOptions& opts = {});

Certificate certify(int d, int k, int m, const CertifierOptions& opts = {});

// Grid sweep over d in [1,d_max], k in [1,k_max], m in [0,m_max],
// ordered lexicographically by (d, k, m).
std::vector<Certificate> parity_table(int d_max, int k_max, int m_max,
                                      const CertifierOptions& opts = {});

// CSV payload: header d,k,m,n,member,certified,stirling_parity,consistent.
std::string to_csv(const std::vector<Certificate>& table);

} // namespace chessboard::cert
