#include "chessboard/selftest.hpp"

#include "chessboard/certifier.hpp"
#include "chessboard/detail/newton.hpp"
#include "chessboard/grasscoh.hpp"
#include "chessboard/instance_gen.hpp"
#include "chessboard/parallel.hpp"
#include "chessboard/parity.hpp"
#include "chessboard/testmap.hpp"

#include <atomic>
#include <cmath>
#include <sstream>

namespace chessboard::selftest {

bool Report::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

namespace {

using detail::splitmix64;

double uniform01(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

f2::Poly random_poly(const f2::RingPtr& ring, std::uint64_t& state, int max_terms, int max_exp) {
    std::vector<f2::Monomial> terms;
    const int count = static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(max_terms + 1));
    for (int t = 0; t < count; ++t) {
        f2::Monomial m = f2::Monomial::one(ring->gen_count());
        for (std::size_t g = 0; g < ring->gen_count(); ++g)
            m.exponents[g] =
                static_cast<std::uint16_t>(splitmix64(state) % static_cast<std::uint64_t>(max_exp + 1));
        terms.push_back(std::move(m));
    }
    return f2::Poly::from_terms(ring, std::move(terms));
}

// partitions of `weight` with at most `rows` parts, each at most `cols`
long long box_partitions(int rows, int cols, int weight) {
    if (weight == 0) return 1;
    if (weight < 0 || rows == 0) return 0;
    long long total = 0;
    for (int first = 1; first <= cols; ++first)
        total += box_partitions(rows - 1, first, weight - first);
    return total;
}

CheckResult check_ring_axioms(std::uint64_t seed) {
    CheckResult res{"ring-axioms", true, ""};
    const auto pres = grass::build_presentation(2, 2, true);
    std::uint64_t state = seed;
    for (int trial = 0; trial < 60 && res.pass; ++trial) {
        const f2::Poly p = random_poly(pres.ring, state, 5, 2);
        const f2::Poly q = random_poly(pres.ring, state, 5, 2);
        const f2::Poly r = random_poly(pres.ring, state, 5, 2);
        if (!((p + q) + r == p + (q + r))) { res.pass = false; res.detail = "associativity of +"; }
        else if (!(p * q == q * p)) { res.pass = false; res.detail = "commutativity of *"; }
        else if (!((p * q) * r == p * (q * r))) { res.pass = false; res.detail = "associativity of *"; }
        else if (!(p * (q + r) == p * q + p * r)) { res.pass = false; res.detail = "distributivity"; }
        else if (!((p + p).is_zero())) { res.pass = false; res.detail = "p+p=0"; }
        else if (!((p + q) * (p + q) == p * p + q * q)) { res.pass = false; res.detail = "Frobenius"; }
        else {
            f2::Poly sum = f2::Poly::zero(pres.ring);
            for (int deg = 0; deg <= std::max(0, p.degree()); ++deg)
                sum += p.graded_component(deg);
            if (!(sum == p)) { res.pass = false; res.detail = "graded components do not sum back"; }
        }
    }
    return res;
}

grass::Presentation presentation_with_fault(int d, int m, bool with_t, Fault fault) {
    grass::Presentation pres = grass::build_presentation(d, m, with_t);
    if (fault == Fault::corrupt_relation && d >= 1 && m >= 1 && pres.relations.size() >= 2) {
        // drop the mixed term from the degree-2 relation; stays homogeneous
        pres.relations[1] += pres.w(1) * pres.wb(1);
    }
    return pres;
}

CheckResult check_poincare(bool quick, Fault fault) {
    CheckResult res{"poincare-dimensions", true, ""};
    const int dmax = quick ? 3 : 4;
    const int mmax = quick ? 2 : 3;
    for (int d = 1; d <= dmax && res.pass; ++d)
        for (int m = 0; m <= mmax && res.pass; ++m) {
            grass::CohomologyRing ring(presentation_with_fault(d, m, false, fault), d * m + 2);
            for (int deg = 0; deg <= d * m + 2; ++deg) {
                const long long expect = box_partitions(d, m, deg);
                if (ring.dimension(deg) != expect) {
                    res.pass = false;
                    std::ostringstream os;
                    os << "dim mismatch at d=" << d << " m=" << m << " degree=" << deg
                       << ": got " << ring.dimension(deg) << ", partition count " << expect;
                    res.detail = os.str();
                    break;
                }
            }
        }
    return res;
}

CheckResult check_product_identity(bool quick, Fault fault) {
    CheckResult res{"product-identity", true, ""};
    const int dmax = quick ? 3 : 4;
    const int mmax = quick ? 2 : 3;
    for (int d = 1; d <= dmax && res.pass; ++d)
        for (int m = 0; m <= mmax && res.pass; ++m) {
            grass::CohomologyRing ring(presentation_with_fault(d, m, true, fault), d + m);
            const grass::Presentation& pres = ring.presentation();
            const f2::Poly t1 = pres.t(1);
            f2::Poly left = f2::Poly::zero(pres.ring);
            for (int i = 0; i <= d; ++i) left += t1.pow(d - i) * pres.w(i);
            f2::Poly right = f2::Poly::zero(pres.ring);
            for (int j = 0; j <= m; ++j) right += t1.pow(m - j) * pres.wb(j);
            if (!ring.normal_form(left * right + t1.pow(d + m)).is_zero()) {
                res.pass = false;
                std::ostringstream os;
                os << "product identity fails at d=" << d << " m=" << m;
                res.detail = os.str();
            } else if (m >= 1 && ring.normal_form(pres.wb(m)).is_zero()) {
                res.pass = false;
                std::ostringstream os;
                os << "top dual class vanishes at d=" << d << " m=" << m;
                res.detail = os.str();
            }
        }
    return res;
}

CheckResult check_certifier_grid(bool quick, int threads) {
    CheckResult res{"certifier-stirling-agreement", true, ""};
    const int dmax = quick ? 3 : 4;
    const int mmax = quick ? 1 : 3;
    const int kmax = quick ? 4 : 6;
    struct Triple { int d, k, m; };
    std::vector<Triple> triples;
    for (int d = 1; d <= dmax; ++d)
        for (int k = 1; k <= kmax; ++k)
            for (int m = 0; m <= mmax; ++m) triples.push_back({d, k, m});
    std::vector<std::string> failures(triples.size());
    parallel_for(triples.size(), resolve_threads(threads), [&](std::size_t i) {
        const auto [d, k, m] = triples[i];
        const auto c = cert::certify(d, k, m);
        std::ostringstream os;
        if (!c.consistent)
            os << "membership/parity disagreement at d=" << d << " k=" << k << " m=" << m;
        else if (c.step_chain[0] != c.member || c.step_chain[1] != c.member ||
                 c.step_chain[2] != c.member)
            os << "transformed-problem verdict differs at d=" << d << " k=" << k << " m=" << m;
        else if (c.step_chain[3])
            os << "bare monomial form claims membership at d=" << d << " k=" << k << " m=" << m;
        failures[i] = os.str();
    });
    for (const auto& f : failures)
        if (!f.empty()) { res.pass = false; res.detail = f; break; }
    return res;
}

CheckResult check_parity_bridge(bool quick) {
    CheckResult res{"parity-bridge", true, ""};
    const int nmax = quick ? 16 : 24;
    for (int n = 1; n <= nmax && res.pass; ++n)
        for (int k = 1; k <= n && res.pass; ++k) {
            const int exact = static_cast<int>(parity::stirling2(n, k) & 1);
            if (parity::stirling_parity_fast(n, k) != exact ||
                parity::stirling2_parity(n, k) != exact) {
                res.pass = false;
                std::ostringstream os;
                os << "bridge breaks at n=" << n << " k=" << k;
                res.detail = os.str();
            }
        }
    return res;
}

CheckResult check_equivariance(bool quick, std::uint64_t seed) {
    CheckResult res{"equivariance-battery", true, ""};
    const int instances = quick ? 20 : 100;
    std::uint64_t state = seed ^ 0x2545f4914f6cdd1dull;
    for (int inst = 0; inst < instances && res.pass; ++inst) {
        const int d = 1 + static_cast<int>(splitmix64(state) % 3);
        const int k = 1 + static_cast<int>(splitmix64(state) % 4);
        const int n = 2 + static_cast<int>(splitmix64(state) % 5);
        const auto measures = gen::gaussian_instance(splitmix64(state), static_cast<std::size_t>(d),
                                                     static_cast<std::size_t>(n), 12, 0.3);
        auto unit = [&state](int dim) {
            std::vector<double> u(static_cast<std::size_t>(dim));
            double norm2 = 0.0;
            for (auto& x : u) {
                const double g1 = std::max(uniform01(state), 1e-12);
                const double g2 = uniform01(state);
                x = std::sqrt(-2.0 * std::log(g1)) * std::cos(6.283185307179586 * g2);
                norm2 += x * x;
            }
            const double nn = std::sqrt(norm2);
            for (auto& x : u) x /= (nn > 1e-9 ? nn : 1.0);
            if (!(nn > 1e-9)) u[0] = 1.0;
            return u;
        };
        const TestPoint tp{unit(d), unit(k)};
        const std::vector<double> base = eval_test_map(measures, tp);

        TestPoint flipped = tp;
        for (auto& x : flipped.lift_coeffs) x = -x;
        const std::vector<double> f_flip = eval_test_map(measures, flipped);

        TestPoint mirrored;
        mirrored.direction = tp.direction;
        for (auto& x : mirrored.direction) x = -x;
        mirrored.lift_coeffs = tp.lift_coeffs;
        for (std::size_t j = 0; j < mirrored.lift_coeffs.size(); ++j)
            if ((j + 1) % 2 == 1) mirrored.lift_coeffs[j] = -mirrored.lift_coeffs[j];
        const std::vector<double> f_mirror = eval_test_map(measures, mirrored);

        for (std::size_t j = 0; j < base.size(); ++j) {
            if (std::fabs(f_flip[j] + base[j]) > 1e-9 || std::fabs(f_mirror[j] - base[j]) > 1e-9) {
                res.pass = false;
                std::ostringstream os;
                os << "equivariance identity fails on instance " << inst << " (d=" << d
                   << " k=" << k << " n=" << n << ")";
                res.detail = os.str();
                break;
            }
        }
    }
    return res;
}

} // namespace

Report run(const Options& opts) {
    Report report;
    report.checks.push_back(check_ring_axioms(opts.seed));
    report.checks.push_back(check_poincare(opts.quick, opts.fault));
    report.checks.push_back(check_product_identity(opts.quick, opts.fault));
    report.checks.push_back(check_certifier_grid(opts.quick, opts.threads));
    report.checks.push_back(check_parity_bridge(opts.quick));
    report.checks.push_back(check_equivariance(opts.quick, opts.seed));
    return report;
}

} // namespace chessboard::selftest
