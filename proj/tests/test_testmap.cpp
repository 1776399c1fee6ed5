#include "chessboard/testmap.hpp"

#include <doctest.h>

#include "chessboard/detail/newton.hpp"
#include "chessboard/instance_gen.hpp"
#include "support/piecewise_uniform.hpp"

#include <algorithm>
#include <cmath>

using namespace chessboard;

namespace {

Pushforward1D standard_gaussian() {
    Pushforward1D pf;
    pf.centers = {0.0};
    pf.weights = {1.0};
    pf.bandwidth = 1.0;
    return pf;
}

std::vector<double> unit_from(std::vector<double> u) {
    double n = 0.0;
    for (double x : u) n += x * x;
    n = std::sqrt(n);
    for (double& x : u) x /= n;
    return u;
}

double u01(std::uint64_t& state) {
    return static_cast<double>(detail::splitmix64(state) >> 11) * 0x1.0p-53;
}

std::vector<double> random_unit(std::uint64_t& state, int dim) {
    std::vector<double> u(static_cast<std::size_t>(dim));
    for (auto& x : u) {
        const double g1 = std::max(u01(state), 1e-12);
        const double g2 = u01(state);
        x = std::sqrt(-2.0 * std::log(g1)) * std::cos(6.283185307179586 * g2);
    }
    return unit_from(std::move(u));
}

} // namespace

TEST_CASE("reference offsets average the extreme medians") {
    WeightedCloud a = gen::gaussian_cloud(1, 2, 6, 0.0, 0.5, 0.3);
    const std::vector<double> v = {1.0, 0.0};

    SUBCASE("single measure: its own median") {
        std::vector<WeightedCloud> one = {a};
        CHECK(reference_offset(one, v) ==
              doctest::Approx(median(pushforward(a, v))).epsilon(1e-10));
    }
    SUBCASE("two shifted copies: the midpoint") {
        WeightedCloud b = a;
        for (auto& p : b.points) p[0] += 2.0;
        std::vector<WeightedCloud> two = {a, b};
        const double med_a = median(pushforward(a, v));
        CHECK(reference_offset(two, v) == doctest::Approx(med_a + 1.0).epsilon(1e-9));
    }
    SUBCASE("centrally symmetric family: zero in every direction") {
        WeightedCloud sym;
        sym.points = {{1.0, 0.5}, {-1.0, -0.5}, {0.3, -0.8}, {-0.3, 0.8}};
        sym.weights = {1.0, 1.0, 2.0, 2.0};
        sym.bandwidth = 0.4;
        std::vector<WeightedCloud> fam = {sym, sym};
        std::uint64_t state = 5;
        for (int trial = 0; trial < 5; ++trial) {
            const auto dir = random_unit(state, 2);
            CHECK(reference_offset(fam, dir) == doctest::Approx(0.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("bisecting offsets solve the half-mass equation") {
    const auto pf = standard_gaussian();

    SUBCASE("linear lift recovers the median") {
        const Poly1 q({0.0, 1.0});
        CHECK(bisecting_offset(pf, q) == doctest::Approx(median(pf)).epsilon(1e-9));
    }
    SUBCASE("squared lift hits the squared quartile") {
        const Poly1 q({0.0, 0.0, 1.0});
        CHECK(bisecting_offset(pf, q) == doctest::Approx(0.45494).epsilon(1e-5));
    }
    SUBCASE("negating the lift negates the offset") {
        const Poly1 q({0.1, 0.7, 0.0, 0.4});
        std::vector<double> neg;
        for (double c : q.coeffs()) neg.push_back(-c);
        CHECK(bisecting_offset(pf, Poly1(neg)) ==
              doctest::Approx(-bisecting_offset(pf, q)).epsilon(1e-9));
    }
    SUBCASE("constant lift is degenerate") {
        CHECK_THROWS_AS((void)bisecting_offset(pf, Poly1({1.0})), DegenerateDirection);
    }
}

TEST_CASE("identical measures evaluate to the zero vector") {
    const auto cloud = gen::gaussian_cloud(11, 2, 10, 0.5, 0.7, 0.25);
    std::vector<WeightedCloud> measures = {cloud, cloud, cloud};
    std::uint64_t state = 21;
    const TestPoint tp{random_unit(state, 2), random_unit(state, 2)};
    for (double f : eval_test_map(measures, tp))
        CHECK(f == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("equivariance identities hold on random instances") {
    std::uint64_t state = 0x5eed;
    int checked = 0;
    for (int inst = 0; inst < 30; ++inst) {
        const int d = 1 + static_cast<int>(detail::splitmix64(state) % 3);
        const int k = 1 + static_cast<int>(detail::splitmix64(state) % 4);
        const int n = 2 + static_cast<int>(detail::splitmix64(state) % 5);
        const auto measures = gen::gaussian_instance(detail::splitmix64(state),
                                                     static_cast<std::size_t>(d),
                                                     static_cast<std::size_t>(n), 10, 0.3);
        const TestPoint tp{random_unit(state, d), random_unit(state, k)};
        const auto base = eval_test_map(measures, tp);

        TestPoint flipped = tp;
        for (auto& x : flipped.lift_coeffs) x = -x;
        const auto f_flip = eval_test_map(measures, flipped);

        TestPoint mirrored = tp;
        for (auto& x : mirrored.direction) x = -x;
        for (std::size_t j = 0; j < mirrored.lift_coeffs.size(); ++j)
            if ((j + 1) % 2 == 1) mirrored.lift_coeffs[j] = -mirrored.lift_coeffs[j];
        const auto f_mirror = eval_test_map(measures, mirrored);

        for (std::size_t j = 0; j < base.size(); ++j) {
            CHECK(f_flip[j] == doctest::Approx(-base[j]).epsilon(1e-9).scale(1.0));
            CHECK(f_mirror[j] == doctest::Approx(base[j]).epsilon(1e-9).scale(1.0));
            ++checked;
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("components match the signed interval integration route") {
    std::uint64_t state = 0xfeed;
    for (int inst = 0; inst < 20; ++inst) {
        const int n = 3;
        const auto measures = gen::gaussian_instance(detail::splitmix64(state), 2, n, 8, 0.35);
        const TestPoint tp{random_unit(state, 2), random_unit(state, 3)};
        const LiftFrame frame = build_lift_frame(measures, tp);
        const auto components = eval_test_map(measures, tp, frame);

        const Poly1 p = frame.lift_poly.minus_constant(frame.bisecting_alpha);
        std::vector<double> cuts;
        for (double t : real_roots(p)) cuts.push_back(frame.reference_offset + t);
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t j = 0; j + 1 < measures.size(); ++j) {
            const auto pf = pushforward(measures[j], tp.direction);
            const double via_intervals =
                chessboard_imbalance(pf, cuts, p, frame.reference_offset);
            CHECK(via_intervals == doctest::Approx(components[j]).epsilon(1e-10).scale(1.0));
        }
    }
}

TEST_CASE("decoded zeros land on the exact necklace cuts") {
    // exact oracle first: cuts {0.5, 2.5} balance both unsmoothed measures
    test_support::PiecewiseUniform mu1({{0.0, 4.0}});
    test_support::PiecewiseUniform mu2({{0.0, 1.0}, {2.0, 3.0}});
    {
        const Poly1 p_abs({-1.25, 3.0, -1.0}); // -(s-0.5)(s-2.5) up to scale
        CHECK(mu1.chessboard_imbalance({0.5, 2.5}, p_abs) == doctest::Approx(0.0));
        CHECK(mu2.chessboard_imbalance({0.5, 2.5}, p_abs) == doctest::Approx(0.0));
    }

    // smoothed instance: build the ideal test point by hand
    const auto measures = gen::necklace_pair(0.01, 0.01);
    const double c = 1.0 / std::sqrt(1.25);
    const TestPoint tp{{1.0}, {0.5 * c, c}};
    const LiftFrame frame = build_lift_frame(measures, tp);
    CHECK(frame.reference_offset == doctest::Approx(1.75).epsilon(1e-6));

    const auto components = eval_test_map(measures, tp, frame);
    REQUIRE(components.size() == 1);
    CHECK(std::fabs(components[0]) < 5e-3); // smoothing shifts it slightly

    const auto result = decode_zero(measures, tp, frame, /*max_residual=*/5e-3);
    REQUIRE(result.cuts.size() == 2);
    CHECK(result.cuts[0] == doctest::Approx(0.5).epsilon(0.02));
    CHECK(result.cuts[1] == doctest::Approx(2.5).epsilon(0.02));
    CHECK(result.imbalances.size() == measures.size());
}

TEST_CASE("decode recomputes imbalances within 1e-10 of the map components") {
    std::uint64_t state = 0xdead;
    for (int inst = 0; inst < 10; ++inst) {
        const auto measures = gen::gaussian_instance(detail::splitmix64(state), 2, 3, 10, 0.3);
        const TestPoint tp{random_unit(state, 2), random_unit(state, 2)};
        const LiftFrame frame = build_lift_frame(measures, tp);
        const auto components = eval_test_map(measures, tp, frame);
        const auto result = decode_zero(measures, tp, frame, /*max_residual=*/10.0);
        CHECK(result.cuts.size() <= tp.lift_coeffs.size());
        for (std::size_t j = 0; j + 1 < measures.size(); ++j)
            CHECK(result.imbalances[j] ==
                  doctest::Approx(components[j]).epsilon(1e-10).scale(1.0));
        // the last measure is bisected by construction
        CHECK(result.imbalances.back() == doctest::Approx(0.0).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("single symmetric measure with one cut through its median") {
    WeightedCloud sym;
    sym.points = {{1.0, 0.0}, {-1.0, 0.0}};
    sym.weights = {1.0, 1.0};
    sym.bandwidth = 0.5;
    std::vector<WeightedCloud> measures = {sym};
    const TestPoint tp{{1.0, 0.0}, {1.0}};
    const LiftFrame frame = build_lift_frame(measures, tp);
    const auto result = decode_zero(measures, tp, frame, 1e-9);
    REQUIRE(result.cuts.size() == 1);
    CHECK(result.cuts[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(result.residual <= 1e-9);
}

TEST_CASE("rootless sign polynomials cannot validate against positive measures") {
    const auto measures = gen::gaussian_instance(3, 2, 2, 6, 0.3);
    const TestPoint tp{{1.0, 0.0}, {0.0, 1.0}}; // q(t) = t^2
    LiftFrame frame;
    frame.reference_offset = reference_offset(measures, tp.direction);
    frame.lift_poly = Poly1({0.0, 0.0, 1.0});
    frame.bisecting_alpha = -1.0; // q - alpha = t^2 + 1: empty cut set
    CHECK_THROWS_AS((void)decode_zero(measures, tp, frame, 1e-6), std::runtime_error);
}
