#include "chessboard/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chessboard {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}
} // namespace

double WeightedCloud::total_mass() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

void WeightedCloud::validate() const {
    if (points.size() != weights.size())
        throw std::invalid_argument("cloud: point/weight count mismatch");
    if (points.empty()) throw std::invalid_argument("cloud: empty");
    if (!(bandwidth > 0.0)) throw std::invalid_argument("cloud: bandwidth must be positive");
    const std::size_t d = points.front().size();
    if (d == 0) throw std::invalid_argument("cloud: zero-dimensional points");
    for (const auto& p : points)
        if (p.size() != d) throw std::invalid_argument("cloud: ragged point dimensions");
    for (double w : weights)
        if (!(w > 0.0)) throw std::invalid_argument("cloud: weights must be positive");
}

double Pushforward1D::total_mass() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

double Pushforward1D::cdf(double x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < centers.size(); ++i)
        s += weights[i] * normal_cdf((x - centers[i]) / bandwidth);
    return s;
}

double Pushforward1D::mass_between(double lo, double hi) const {
    if (hi <= lo) return 0.0;
    const double upper = (hi == kInf) ? total_mass() : cdf(hi);
    const double lower = (lo == -kInf) ? 0.0 : cdf(lo);
    return std::max(0.0, upper - lower);
}

Pushforward1D Pushforward1D::shifted(double delta) const {
    Pushforward1D out = *this;
    for (double& c : out.centers) c += delta;
    return out;
}

Pushforward1D pushforward(const WeightedCloud& cloud, std::span<const double> v) {
    cloud.validate();
    if (v.size() != cloud.dim())
        throw std::invalid_argument("pushforward: direction dimension mismatch");
    double norm2 = 0.0;
    for (double x : v) norm2 += x * x;
    if (std::fabs(std::sqrt(norm2) - 1.0) > 1e-12)
        throw std::invalid_argument("pushforward: direction must be a unit vector");
    Pushforward1D pf;
    pf.bandwidth = cloud.bandwidth;
    pf.weights = cloud.weights;
    pf.centers.reserve(cloud.size());
    for (const auto& p : cloud.points) {
        double dot = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) dot += p[i] * v[i];
        pf.centers.push_back(dot);
    }
    return pf;
}

double median(const Pushforward1D& pf) {
    const double total = pf.total_mass();
    if (!(total > 0.0)) throw std::invalid_argument("median: total mass must be positive");
    const double half = 0.5 * total;
    auto [cmin, cmax] = std::minmax_element(pf.centers.begin(), pf.centers.end());
    double lo = *cmin, hi = *cmax;
    double step = std::max(1.0, pf.bandwidth);
    while (pf.cdf(lo) > half) lo -= step, step *= 2;
    step = std::max(1.0, pf.bandwidth);
    while (pf.cdf(hi) < half) hi += step, step *= 2;
    for (int iter = 0; iter < 400; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double c = pf.cdf(mid);
        if (std::fabs(c - half) <= 1e-12 * total) return mid;
        (c < half ? lo : hi) = mid;
        if (hi - lo <= 1e-15 * std::max(1.0, std::fabs(lo) + std::fabs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

double superlevel_mass(const Pushforward1D& pf, const Poly1& q, double alpha) {
    const Poly1 r = q.minus_constant(alpha);
    if (r.is_constant()) {
        const double v = r.constant_value();
        if (v > 0.0) return pf.total_mass();
        if (v < 0.0) return 0.0;
        throw DegenerateDirection("superlevel_mass: constant polynomial at the query level");
    }
    const std::vector<double> roots = real_roots(r);
    if (roots.empty())
        return r(0.0) >= 0.0 ? pf.total_mass() : 0.0;

    double mass = 0.0;
    for (std::size_t i = 0; i <= roots.size(); ++i) {
        const double lo = (i == 0) ? -kInf : roots[i - 1];
        const double hi = (i == roots.size()) ? kInf : roots[i];
        double probe;
        if (lo == -kInf) probe = hi - 1.0;
        else if (hi == kInf) probe = lo + 1.0;
        else probe = 0.5 * (lo + hi);
        if (r(probe) >= 0.0) mass += pf.mass_between(lo, hi);
    }
    return mass;
}

} // namespace chessboard
