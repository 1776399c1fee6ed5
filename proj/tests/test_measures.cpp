#include "chessboard/measures.hpp"

#include <doctest.h>

#include "chessboard/detail/newton.hpp"
#include "chessboard/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

using namespace chessboard;

namespace {

Pushforward1D standard_gaussian() {
    Pushforward1D pf;
    pf.centers = {0.0};
    pf.weights = {1.0};
    pf.bandwidth = 1.0;
    return pf;
}

} // namespace

TEST_CASE("pushforward projects centers onto the direction") {
    WeightedCloud cloud;
    cloud.points = {{0.0, 0.0}, {3.0, 4.0}};
    cloud.weights = {1.0, 1.0};
    cloud.bandwidth = 0.5;
    const std::vector<double> v = {0.6, 0.8};
    const auto pf = pushforward(cloud, v);
    REQUIRE(pf.centers.size() == 2);
    CHECK(pf.centers[0] == doctest::Approx(0.0));
    CHECK(pf.centers[1] == doctest::Approx(5.0));
    CHECK(pf.total_mass() == doctest::Approx(cloud.total_mass()));

    SUBCASE("single point at the origin") {
        WeightedCloud one;
        one.points = {{0.0, 0.0}};
        one.weights = {2.0};
        one.bandwidth = 0.1;
        const auto p1 = pushforward(one, v);
        CHECK(p1.centers[0] == doctest::Approx(0.0));
    }
    SUBCASE("non-unit directions are rejected") {
        const std::vector<double> bad = {0.6, 0.9};
        CHECK_THROWS_AS((void)pushforward(cloud, bad), std::invalid_argument);
    }
    SUBCASE("symmetric clouds push forward symmetrically") {
        WeightedCloud sym;
        sym.points = {{1.0, 2.0}, {-1.0, -2.0}};
        sym.weights = {1.0, 1.0};
        sym.bandwidth = 0.3;
        const auto p2 = pushforward(sym, v);
        CHECK(p2.centers[0] == doctest::Approx(-p2.centers[1]));
    }
}

TEST_CASE("medians of symmetric mixtures sit at the symmetry point") {
    Pushforward1D pf;
    pf.centers = {0.0, 5.0};
    pf.weights = {1.0, 1.0};
    pf.bandwidth = 0.7;
    CHECK(median(pf) == doctest::Approx(2.5).epsilon(1e-10));

    Pushforward1D single;
    single.centers = {2.0};
    single.weights = {3.0};
    single.bandwidth = 0.4;
    CHECK(median(single) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("median reflects with the cloud") {
    std::uint64_t state = 77;
    for (int trial = 0; trial < 10; ++trial) {
        auto cloud = gen::gaussian_cloud(detail::splitmix64(state), 2, 8, 1.0, 0.8, 0.3);
        WeightedCloud reflected = cloud;
        for (auto& p : reflected.points)
            for (auto& x : p) x = -x;
        const std::vector<double> v = {1.0, 0.0};
        CHECK(median(pushforward(cloud, v)) ==
              doctest::Approx(-median(pushforward(reflected, v))).epsilon(1e-9));
    }
}

TEST_CASE("superlevel masses through root isolation") {
    const auto pf = standard_gaussian();

    SUBCASE("half space at the median") {
        const double m = median(pf);
        CHECK(superlevel_mass(pf, Poly1({0.0, 1.0}), m) == doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("whole line when the level misses the range") {
        CHECK(superlevel_mass(pf, Poly1({0.0, 0.0, 1.0}), 0.0) ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(superlevel_mass(pf, Poly1({0.0, 0.0, 1.0}), -1.0) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("squared Gaussian quartile") {
        // Phi(0.67448975) = 0.75, so |t| >= 0.67448975 carries half the mass
        const double alpha = 0.67448975 * 0.67448975;
        CHECK(superlevel_mass(pf, Poly1({0.0, 0.0, 1.0}), alpha) ==
              doctest::Approx(0.5).epsilon(1e-7));
    }
    SUBCASE("degenerate constant at the level") {
        CHECK_THROWS_AS((void)superlevel_mass(pf, Poly1({2.0}), 2.0), DegenerateDirection);
        CHECK(superlevel_mass(pf, Poly1({2.0}), 1.0) == doctest::Approx(1.0));
        CHECK(superlevel_mass(pf, Poly1({2.0}), 3.0) == doctest::Approx(0.0));
    }
}

TEST_CASE("superlevel complementarity and monotonicity") {
    Pushforward1D pf;
    pf.centers = {-1.0, 0.5, 2.0};
    pf.weights = {1.0, 2.0, 0.5};
    pf.bandwidth = 0.6;
    const double total = pf.total_mass();

    const Poly1 q({0.3, -1.0, 0.0, 1.0}); // t^3 - t + 0.3
    std::vector<double> negq;
    for (double c : q.coeffs()) negq.push_back(-c);

    double prev = total + 1.0;
    for (double alpha = -3.0; alpha <= 3.0; alpha += 0.37) {
        const double up = superlevel_mass(pf, q, alpha);
        const double down = superlevel_mass(pf, Poly1(negq), -alpha);
        CHECK(up + down == doctest::Approx(total).epsilon(1e-10));
        CHECK(up <= prev + 1e-12);
        prev = up;
    }
}

namespace {

// adaptive Simpson quadrature, independent of the erf-based mass path
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fb,
               double fm, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
    if (depth > 24 || std::fabs(left + right - whole) < 15 * eps)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, fm, flm, eps / 2, depth + 1) +
           simpson(f, m, b, fm, fb, frm, eps / 2, depth + 1);
}

double quadrature_superlevel(const Pushforward1D& pf, const Poly1& q, double alpha) {
    auto density_on_superlevel = [&](double t) {
        if (q(t) < alpha) return 0.0;
        double s = 0.0;
        for (std::size_t i = 0; i < pf.centers.size(); ++i) {
            const double z = (t - pf.centers[i]) / pf.bandwidth;
            s += pf.weights[i] * std::exp(-0.5 * z * z) /
                 (pf.bandwidth * std::sqrt(2.0 * 3.14159265358979323846));
        }
        return s;
    };
    const double lo = *std::min_element(pf.centers.begin(), pf.centers.end()) - 12 * pf.bandwidth;
    const double hi = *std::max_element(pf.centers.begin(), pf.centers.end()) + 12 * pf.bandwidth;
    // integrate piecewise between the level-set boundaries to keep Simpson happy
    std::vector<double> pts = {lo};
    for (double r : real_roots(q.minus_constant(alpha)))
        if (r > lo && r < hi) pts.push_back(r);
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i] + 1e-12, b = pts[i + 1] - 1e-12;
        if (b <= a) continue;
        const double fa = density_on_superlevel(a), fb = density_on_superlevel(b);
        const double fm = density_on_superlevel(0.5 * (a + b));
        total += simpson(density_on_superlevel, a, b, fa, fb, fm, 1e-12, 0);
    }
    return total;
}

} // namespace

TEST_CASE("superlevel masses agree with adaptive quadrature") {
    std::uint64_t state = 0x51e51e;
    auto next = [&state]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    };
    for (int trial = 0; trial < 25; ++trial) {
        Pushforward1D pf;
        const int comps = 1 + static_cast<int>(state % 4);
        for (int c = 0; c < comps; ++c) {
            pf.centers.push_back(4.0 * next() - 2.0);
            pf.weights.push_back(0.5 + next());
        }
        pf.bandwidth = 0.2 + 0.5 * next();
        const int deg = 1 + static_cast<int>(state % 4);
        std::vector<double> coeffs;
        for (int i = 0; i <= deg; ++i) coeffs.push_back(2.0 * next() - 1.0);
        if (std::fabs(coeffs.back()) < 0.1) coeffs.back() = 0.5;
        const Poly1 q(coeffs);
        const double alpha = 2.0 * next() - 1.0;
        const double via_roots = superlevel_mass(pf, q, alpha);
        const double via_quadrature = quadrature_superlevel(pf, q, alpha);
        INFO("trial ", trial);
        CHECK(via_roots == doctest::Approx(via_quadrature).epsilon(1e-7).scale(1.0));
    }
}

TEST_CASE("cloud validation rejects broken invariants") {
    WeightedCloud cloud;
    cloud.points = {{1.0}};
    cloud.weights = {1.0};
    cloud.bandwidth = 0.0;
    CHECK_THROWS_AS(cloud.validate(), std::invalid_argument);
    cloud.bandwidth = 0.1;
    CHECK_NOTHROW(cloud.validate());
    cloud.weights = {-1.0};
    CHECK_THROWS_AS(cloud.validate(), std::invalid_argument);
    cloud.weights = {1.0, 2.0};
    CHECK_THROWS_AS(cloud.validate(), std::invalid_argument);
}
