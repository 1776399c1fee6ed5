#include "chessboard/detail/newton.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace chessboard::detail {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> a) {
    return std::sqrt(dot(a, a));
}

void normalize(std::vector<double>& a) {
    const double n = norm(a);
    if (!(n > 1e-14)) throw std::runtime_error("normalize: vanishing vector");
    for (double& x : a) x /= n;
}

std::vector<std::vector<double>> tangent_basis(const std::vector<double>& unit) {
    const std::size_t d = unit.size();
    std::vector<std::vector<double>> basis;
    if (d <= 1) return basis;
    std::size_t skip = 0;
    for (std::size_t i = 1; i < d; ++i)
        if (std::fabs(unit[i]) > std::fabs(unit[skip])) skip = i;
    for (std::size_t j = 0; j < d && basis.size() + 1 < d; ++j) {
        if (j == skip) continue;
        std::vector<double> e(d, 0.0);
        e[j] = 1.0;
        const double proj = dot(e, unit);
        for (std::size_t i = 0; i < d; ++i) e[i] -= proj * unit[i];
        for (const auto& prev : basis) {
            const double p = dot(e, prev);
            for (std::size_t i = 0; i < d; ++i) e[i] -= p * prev[i];
        }
        normalize(e);
        basis.push_back(std::move(e));
    }
    return basis;
}

std::vector<std::vector<double>> complement_basis(const std::vector<std::vector<double>>& rows,
                                                  std::size_t ambient) {
    std::vector<std::vector<double>> held = rows;
    std::vector<std::vector<double>> out;
    const std::size_t need = ambient - rows.size();
    for (std::size_t j = 0; j < ambient && out.size() < need; ++j) {
        std::vector<double> e(ambient, 0.0);
        e[j] = 1.0;
        for (const auto& h : held) {
            const double p = dot(e, h);
            for (std::size_t i = 0; i < ambient; ++i) e[i] -= p * h[i];
        }
        if (norm(e) < 1e-6) continue;
        normalize(e);
        held.push_back(e);
        out.push_back(std::move(e));
    }
    if (out.size() != need) throw std::runtime_error("complement_basis: completion failed");
    return out;
}

void orthonormalize_rows(std::vector<std::vector<double>>& rows) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t s = 0; s < r; ++s) {
            const double p = dot(rows[r], rows[s]);
            for (std::size_t i = 0; i < rows[r].size(); ++i) rows[r][i] -= p * rows[s][i];
        }
        normalize(rows[r]);
    }
}

std::size_t chart_dim(const ManifoldState& s) {
    std::size_t dim = (s.v.size() - 1) + (s.n.size() - 1);
    if (!s.frame.empty())
        dim += s.frame.size() * (s.frame.front().size() - s.frame.size());
    return dim;
}

ManifoldState retract(const ManifoldState& s, std::span<const double> theta) {
    ManifoldState out = s;
    std::size_t off = 0;
    if (!s.frame.empty()) {
        const std::size_t d = s.frame.size();
        const std::size_t ambient = s.frame.front().size();
        const std::size_t m = ambient - d;
        const auto comp = complement_basis(s.frame, ambient);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < m; ++b) {
                const double c = theta[off + a * m + b];
                for (std::size_t i = 0; i < ambient; ++i)
                    out.frame[a][i] += c * comp[b][i];
            }
        orthonormalize_rows(out.frame);
        off += d * m;
    }
    const auto vbasis = tangent_basis(s.v);
    for (std::size_t i = 0; i < vbasis.size(); ++i)
        for (std::size_t c = 0; c < out.v.size(); ++c)
            out.v[c] += theta[off + i] * vbasis[i][c];
    normalize(out.v);
    off += vbasis.size();
    const auto nbasis = tangent_basis(s.n);
    for (std::size_t i = 0; i < nbasis.size(); ++i)
        for (std::size_t c = 0; c < out.n.size(); ++c)
            out.n[c] += theta[off + i] * nbasis[i][c];
    normalize(out.n);
    return out;
}

namespace {

double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

double two_norm(std::span<const double> v) {
    return norm(v);
}

// solves the symmetric positive definite system A y = b by Gaussian
// elimination with partial pivoting; A is row-major square
bool solve_dense(std::vector<double> A, std::vector<double> b, std::size_t n,
                 std::vector<double>& y) {
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(A[r * n + c]) > std::fabs(A[piv * n + c])) piv = r;
        if (std::fabs(A[piv * n + c]) < 1e-300) return false;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A[c * n + j], A[piv * n + j]);
            std::swap(b[c], b[piv]);
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = A[r * n + c] / A[c * n + c];
            if (f == 0.0) continue;
            for (std::size_t j = c; j < n; ++j) A[r * n + j] -= f * A[c * n + j];
            b[r] -= f * b[c];
        }
    }
    y.assign(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t j = r + 1; j < n; ++j) s -= A[r * n + j] * y[j];
        y[r] = s / A[r * n + r];
    }
    return true;
}

} // namespace

NewtonOutcome damped_gauss_newton(ManifoldState start, const ResidualFn& residual,
                                  const NewtonOptions& opts) {
    NewtonOutcome out;
    out.state = std::move(start);
    out.residual_inf = std::numeric_limits<double>::infinity();

    auto r0 = residual(out.state);
    if (!r0) return out; // infeasible start
    out.residual = *r0;
    out.residual_inf = inf_norm(out.residual);

    const std::size_t neq = out.residual.size();
    const std::size_t nun = chart_dim(out.state);
    double lambda = 1e-10;

    for (out.iterations = 0; out.iterations < opts.max_iterations; ++out.iterations) {
        if (out.residual_inf <= opts.residual_tol) {
            out.converged = true;
            return out;
        }

        // central-difference Jacobian in chart coordinates
        std::vector<double> J(neq * nun, 0.0);
        std::vector<double> theta(nun, 0.0);
        bool fd_ok = true;
        for (std::size_t c = 0; c < nun && fd_ok; ++c) {
            theta[c] = opts.fd_step;
            auto plus = residual(retract(out.state, theta));
            theta[c] = -opts.fd_step;
            auto minus = residual(retract(out.state, theta));
            theta[c] = 0.0;
            if (!plus || !minus) { fd_ok = false; break; }
            for (std::size_t r = 0; r < neq; ++r)
                J[r * nun + c] = ((*plus)[r] - (*minus)[r]) / (2.0 * opts.fd_step);
        }
        if (!fd_ok) return out;

        const double fnorm = two_norm(out.residual);
        bool stepped = false;
        for (int reg = 0; reg < 8 && !stepped; ++reg) {
            // minimum-norm Gauss-Newton step: delta = J^T (J J^T + lambda I)^{-1} (-F)
            std::vector<double> JJT(neq * neq, 0.0);
            for (std::size_t r = 0; r < neq; ++r)
                for (std::size_t s = r; s < neq; ++s) {
                    double v = 0.0;
                    for (std::size_t c = 0; c < nun; ++c) v += J[r * nun + c] * J[s * nun + c];
                    JJT[r * neq + s] = v;
                    JJT[s * neq + r] = v;
                }
            for (std::size_t r = 0; r < neq; ++r) JJT[r * neq + r] += lambda;
            std::vector<double> rhs(neq);
            for (std::size_t r = 0; r < neq; ++r) rhs[r] = -out.residual[r];
            std::vector<double> y;
            if (!solve_dense(std::move(JJT), std::move(rhs), neq, y)) {
                lambda *= 100.0;
                continue;
            }
            std::vector<double> delta(nun, 0.0);
            for (std::size_t c = 0; c < nun; ++c)
                for (std::size_t r = 0; r < neq; ++r) delta[c] += J[r * nun + c] * y[r];

            double scale = 1.0;
            for (int ls = 0; ls < 12; ++ls) {
                std::vector<double> step(nun);
                for (std::size_t c = 0; c < nun; ++c) step[c] = scale * delta[c];
                ManifoldState cand;
                try {
                    cand = retract(out.state, step);
                } catch (const std::runtime_error&) {
                    scale *= 0.5;
                    continue;
                }
                auto rc = residual(cand);
                if (rc && two_norm(*rc) < (1.0 - 1e-4 * scale) * fnorm) {
                    out.state = std::move(cand);
                    out.residual = std::move(*rc);
                    out.residual_inf = inf_norm(out.residual);
                    stepped = true;
                    break;
                }
                scale *= 0.5;
            }
            if (!stepped) lambda *= 100.0;
        }
        if (!stepped) break; // stuck: report where we are
        lambda = std::max(lambda * 0.1, 1e-12);
    }
    out.converged = out.residual_inf <= opts.residual_tol;
    return out;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

LowDiscrepancy::LowDiscrepancy(std::size_t dim, std::uint64_t seed) : dim_(dim) {
    // generalized golden ratio: unique positive root of x^(dim+1) = x + 1
    double phi = 1.5;
    for (int i = 0; i < 64; ++i)
        phi = std::pow(1.0 + phi, 1.0 / (static_cast<double>(dim) + 1.0));
    alphas_.resize(dim_);
    double a = 1.0;
    for (std::size_t j = 0; j < dim_; ++j) {
        a /= phi;
        alphas_[j] = a;
    }
    shifts_.resize(dim_);
    std::uint64_t s = seed ^ 0xa0761d6478bd642full;
    for (std::size_t j = 0; j < dim_; ++j)
        shifts_[j] = static_cast<double>(splitmix64(s) >> 11) * 0x1.0p-53;
}

std::vector<double> LowDiscrepancy::point(std::uint64_t index) const {
    std::vector<double> u(dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        const double x = shifts_[j] + alphas_[j] * static_cast<double>(index + 1);
        u[j] = x - std::floor(x);
    }
    return u;
}

std::vector<double> LowDiscrepancy::normals(std::uint64_t index, std::size_t count) const {
    const std::vector<double> u = point(index);
    if (u.size() < 2 * ((count + 1) / 2))
        throw std::invalid_argument("low discrepancy: dimension too small for the draw");
    std::vector<double> z;
    z.reserve(count + 1);
    for (std::size_t pair = 0; 2 * pair < count; ++pair) {
        const double u1 = std::max(u[2 * pair], 1e-300);
        const double u2 = u[2 * pair + 1];
        const double r = std::sqrt(-2.0 * std::log(u1));
        z.push_back(r * std::cos(2.0 * std::numbers::pi * u2));
        z.push_back(r * std::sin(2.0 * std::numbers::pi * u2));
    }
    z.resize(count);
    return z;
}

} // namespace chessboard::detail
