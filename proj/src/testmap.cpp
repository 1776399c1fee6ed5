#include "chessboard/testmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace chessboard {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_unit(std::span<const double> v, const char* what) {
    double norm2 = 0.0;
    for (double x : v) norm2 += x * x;
    if (v.empty() || std::fabs(std::sqrt(norm2) - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(what) + " must be a unit vector");
}

Poly1 lift_polynomial(std::span<const double> n, double a_v) {
    std::vector<double> c(n.size() + 1, 0.0);
    c[0] = n[0] * a_v;
    for (std::size_t j = 0; j < n.size(); ++j) c[j + 1] = n[j];
    return Poly1(std::move(c));
}

} // namespace

void TestPoint::validate() const {
    check_unit(direction, "test point direction");
    check_unit(lift_coeffs, "test point lift coefficients");
}

double reference_offset(std::span<const WeightedCloud> measures, std::span<const double> v) {
    if (measures.empty()) throw std::invalid_argument("reference_offset: no measures");
    double lo = kInf, hi = -kInf;
    for (const auto& cloud : measures) {
        const double med = median(pushforward(cloud, v));
        lo = std::min(lo, med);
        hi = std::max(hi, med);
    }
    return 0.5 * (lo + hi);
}

double bisecting_offset(const Pushforward1D& pf, const Poly1& q) {
    if (q.is_constant())
        throw DegenerateDirection("bisecting_offset: constant lift polynomial");
    const double total = pf.total_mass();
    const double half = 0.5 * total;
    // superlevel mass is non-increasing in alpha; expand a bracket first
    double center = q(median(pf));
    double lo = center, hi = center;
    double step = 1.0;
    while (superlevel_mass(pf, q, lo) < half) { lo -= step; step *= 2; }
    step = 1.0;
    while (superlevel_mass(pf, q, hi) > half) { hi += step; step *= 2; }
    for (int iter = 0; iter < 400; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double m = superlevel_mass(pf, q, mid);
        if (std::fabs(m - half) <= 1e-12 * total) return mid;
        (m > half ? lo : hi) = mid;
        if (hi - lo <= 1e-15 * std::max(1.0, std::fabs(lo) + std::fabs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

LiftFrame build_lift_frame(std::span<const WeightedCloud> measures, const TestPoint& tp) {
    if (measures.empty())
        throw std::invalid_argument("lift frame: need at least one measure");
    tp.validate();
    LiftFrame frame;
    frame.reference_offset = reference_offset(measures, tp.direction);
    frame.lift_poly = lift_polynomial(tp.lift_coeffs, frame.reference_offset);
    const Pushforward1D last =
        pushforward(measures.back(), tp.direction).shifted(-frame.reference_offset);
    frame.bisecting_alpha = bisecting_offset(last, frame.lift_poly);
    return frame;
}

std::vector<double> eval_test_map(std::span<const WeightedCloud> measures, const TestPoint& tp,
                                  const LiftFrame& frame) {
    if (measures.empty())
        throw std::invalid_argument("test map: need at least one measure");
    std::vector<double> components;
    components.reserve(measures.size() - 1);
    for (std::size_t j = 0; j + 1 < measures.size(); ++j) {
        const Pushforward1D pf =
            pushforward(measures[j], tp.direction).shifted(-frame.reference_offset);
        const double total = pf.total_mass();
        const double super = superlevel_mass(pf, frame.lift_poly, frame.bisecting_alpha);
        components.push_back(2.0 * super - total);
    }
    return components;
}

std::vector<double> eval_test_map(std::span<const WeightedCloud> measures, const TestPoint& tp) {
    return eval_test_map(measures, tp, build_lift_frame(measures, tp));
}

double chessboard_imbalance(const Pushforward1D& pf, std::span<const double> cuts,
                            const Poly1& p, double reference_offset) {
    double imbalance = 0.0;
    for (std::size_t i = 0; i <= cuts.size(); ++i) {
        const double lo = (i == 0) ? -kInf : cuts[i - 1];
        const double hi = (i == cuts.size()) ? kInf : cuts[i];
        double probe;
        if (lo == -kInf && hi == kInf) probe = reference_offset;
        else if (lo == -kInf) probe = hi - 1.0;
        else if (hi == kInf) probe = lo + 1.0;
        else probe = 0.5 * (lo + hi);
        const double sign = p(probe - reference_offset) >= 0.0 ? 1.0 : -1.0;
        imbalance += sign * pf.mass_between(lo, hi);
    }
    return imbalance;
}

BisectionResult decode_zero(std::span<const WeightedCloud> measures, const TestPoint& tp,
                            const LiftFrame& frame, double max_residual) {
    tp.validate();
    BisectionResult result;
    result.direction = tp.direction;
    result.reference_offset = frame.reference_offset;
    result.alpha = frame.bisecting_alpha;
    const Poly1 p = frame.lift_poly.minus_constant(frame.bisecting_alpha);
    result.p_coeffs = p.coeffs();

    const std::size_t k = tp.lift_coeffs.size();
    std::vector<double> roots = real_roots(p);
    if (roots.size() > k)
        throw std::logic_error("decode_zero: more cuts than the lift degree allows");
    result.cuts.reserve(roots.size());
    for (double t : roots) result.cuts.push_back(frame.reference_offset + t);
    std::sort(result.cuts.begin(), result.cuts.end());

    result.residual = 0.0;
    result.imbalances.reserve(measures.size());
    for (const auto& cloud : measures) {
        const Pushforward1D pf = pushforward(cloud, tp.direction);
        const double imb = chessboard_imbalance(pf, result.cuts, p, frame.reference_offset);
        result.imbalances.push_back(imb);
        result.residual = std::max(result.residual, std::fabs(imb) / pf.total_mass());
    }
    if (result.residual > max_residual)
        throw std::runtime_error("decode_zero: residual above tolerance");
    return result;
}

} // namespace chessboard
