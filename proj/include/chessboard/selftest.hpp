#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace chessboard::selftest {

// Test hook: corrupts the Grassmann relations before the cohomology checks
// run, so the suite must catch the damage.
enum class Fault { none, corrupt_relation };

struct Options {
    bool quick = false;
    Fault fault = Fault::none;
    std::uint64_t seed = 0x5eedc0de;
    int threads = 0;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

// The full invariant suite: ring axioms, Poincare dimensions against the
// box-partition oracle, the product identity, the certifier/Stirling grid,
// the parity bridge, and the equivariance battery.
Report run(const Options& opts);

} // namespace chessboard::selftest
