#include "chessboard/poly1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chessboard {

Poly1::Poly1(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Poly1::operator()(double t) const {
    double acc = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + coeffs_[i];
    return acc;
}

int Poly1::degree() const {
    return static_cast<int>(coeffs_.size()) - 1;
}

Poly1 Poly1::derivative() const {
    if (coeffs_.size() <= 1) return Poly1{};
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        d[i - 1] = coeffs_[i] * static_cast<double>(i);
    return Poly1(std::move(d));
}

Poly1 Poly1::minus_constant(double c) const {
    std::vector<double> out = coeffs_;
    if (out.empty()) out.push_back(0.0);
    out[0] -= c;
    return Poly1(std::move(out));
}

namespace {

using Coeffs = std::vector<double>;

double max_abs(const Coeffs& c) {
    double m = 0.0;
    for (double x : c) m = std::max(m, std::fabs(x));
    return m;
}

void normalize(Coeffs& c) {
    const double m = max_abs(c);
    if (m > 0.0)
        for (double& x : c) x /= m;
}

// drops numerically irrelevant leading coefficients
Coeffs trim(const Coeffs& in, double rel_tol) {
    Coeffs c = in;
    const double m = max_abs(c);
    while (!c.empty() && std::fabs(c.back()) <= rel_tol * m) c.pop_back();
    return c;
}

double eval(const Coeffs& c, double t) {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
    return acc;
}

// remainder of u / v (in place degree reduction)
Coeffs remainder(Coeffs u, const Coeffs& v) {
    const std::size_t dv = v.size() - 1;
    while (u.size() >= v.size() && !u.empty()) {
        const double factor = u.back() / v.back();
        const std::size_t shift = u.size() - v.size();
        for (std::size_t i = 0; i < v.size(); ++i) u[shift + i] -= factor * v[i];
        u.pop_back();
        // strip cancellation residue at the top
        while (u.size() > dv && std::fabs(u.back()) <= 1e-14 * max_abs(u)) u.pop_back();
    }
    while (!u.empty() && std::fabs(u.back()) <= 1e-14 * std::max(1.0, max_abs(u))) u.pop_back();
    return u;
}

Coeffs quotient(const Coeffs& u_in, const Coeffs& v) {
    Coeffs u = u_in;
    if (u.size() < v.size()) return {};
    Coeffs q(u.size() - v.size() + 1, 0.0);
    while (u.size() >= v.size() && !u.empty()) {
        const double factor = u.back() / v.back();
        q[u.size() - v.size()] = factor;
        for (std::size_t i = 0; i < v.size(); ++i) u[u.size() - v.size() + i] -= factor * v[i];
        u.pop_back();
    }
    return q;
}

std::vector<Coeffs> sturm_chain(const Coeffs& p) {
    std::vector<Coeffs> chain;
    chain.push_back(p);
    if (p.size() <= 1) return chain;
    Coeffs d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<double>(i);
    normalize(d);
    chain.push_back(d);
    while (chain.back().size() > 1) {
        Coeffs r = remainder(chain[chain.size() - 2], chain.back());
        if (r.empty() || max_abs(r) <= 1e-13) break;
        for (double& x : r) x = -x;
        normalize(r);
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_changes(const std::vector<Coeffs>& chain, double x) {
    int changes = 0;
    int prev = 0;
    for (const auto& c : chain) {
        const double v = eval(c, x);
        const int s = (v > 0.0) - (v < 0.0);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

// distinct roots in (a, b]
int roots_between(const std::vector<Coeffs>& chain, double a, double b) {
    return sign_changes(chain, a) - sign_changes(chain, b);
}

double polish_root(const Coeffs& p, const Coeffs& dp, double lo, double hi, double tol) {
    double flo = eval(p, lo);
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        if (hi - lo <= tol * std::max(1.0, std::max(std::fabs(lo), std::fabs(hi)))) break;
        x = 0.5 * (lo + hi);
        // Newton first; fall back to bisection when it leaves the bracket
        const double fx = eval(p, x);
        const double dfx = eval(dp, x);
        if (dfx != 0.0) {
            const double xn = x - fx / dfx;
            if (xn > lo && xn < hi) {
                const double fxn = eval(p, xn);
                if ((fxn > 0) == (flo > 0)) { lo = xn; flo = fxn; } else { hi = xn; }
                continue;
            }
        }
        if (fx == 0.0) return x;
        if ((fx > 0) == (flo > 0)) { lo = x; flo = fx; } else { hi = x; }
    }
    return 0.5 * (lo + hi);
}

void isolate(const std::vector<Coeffs>& chain, const Coeffs& sf, const Coeffs& dsf,
             double a, double b, int count, double tol, int depth, std::vector<double>& out) {
    if (count <= 0) return;
    if (count == 1 || depth > 120 ||
        b - a <= tol * std::max(1.0, std::max(std::fabs(a), std::fabs(b)))) {
        // a simple root of the square-free part changes sign on (a, b)
        double fa = eval(sf, a);
        double fb = eval(sf, b);
        if (fa == 0.0) { out.push_back(a); return; }
        if (fb == 0.0) { out.push_back(b); return; }
        if ((fa > 0) == (fb > 0)) {
            // cluster unresolved at double precision; report the midpoint
            out.push_back(0.5 * (a + b));
            return;
        }
        out.push_back(polish_root(sf, dsf, a, b, tol));
        return;
    }
    const double mid = 0.5 * (a + b);
    const int left = roots_between(chain, a, mid);
    isolate(chain, sf, dsf, a, mid, left, tol, depth + 1, out);
    isolate(chain, sf, dsf, mid, b, count - left, tol, depth + 1, out);
}

} // namespace

std::vector<double> real_roots(const Poly1& p, double polish_tol) {
    Coeffs c = trim(p.coeffs(), 1e-12);
    if (c.size() <= 1) return {};
    normalize(c);
    if (c.size() == 2) return {-c[0] / c[1]};

    // square-free part through the Euclidean gcd with the derivative
    Coeffs d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    Coeffs g = c, h = d;
    normalize(h);
    while (h.size() > 1) {
        Coeffs r = remainder(g, h);
        if (r.empty() || max_abs(r) <= 1e-12) break;
        normalize(r);
        g = std::move(h);
        h = std::move(r);
    }
    Coeffs sf = c;
    if (h.size() > 1) { // nontrivial gcd: divide it out
        sf = quotient(c, h);
        sf = trim(sf, 1e-13);
        normalize(sf);
        if (sf.size() <= 1) sf = c;
    }
    Coeffs dsf(sf.size() - 1);
    for (std::size_t i = 1; i < sf.size(); ++i) dsf[i - 1] = sf[i] * static_cast<double>(i);

    double bound = 0.0;
    for (std::size_t i = 0; i + 1 < sf.size(); ++i)
        bound = std::max(bound, std::fabs(sf[i] / sf.back()));
    bound = 1.0000001 * (1.0 + bound) + 1.0;

    const auto chain = sturm_chain(sf);
    const int total = roots_between(chain, -bound, bound);
    std::vector<double> roots;
    isolate(chain, sf, dsf, -bound, bound, total, polish_tol, 0, roots);
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace chessboard
