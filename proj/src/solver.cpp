#include "chessboard/solver.hpp"

#include "chessboard/certifier.hpp"
#include "chessboard/detail/newton.hpp"
#include "chessboard/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

namespace chessboard {

std::optional<std::vector<double>> relative_residual(std::span<const WeightedCloud> measures,
                                                     const TestPoint& tp) {
    try {
        const std::vector<double> f = eval_test_map(measures, tp);
        std::vector<double> rel(f.size());
        for (std::size_t j = 0; j < f.size(); ++j)
            rel[j] = f[j] / measures[j].total_mass();
        return rel;
    } catch (const DegenerateDirection&) {
        return std::nullopt;
    }
}

namespace {

TestPoint state_to_point(const detail::ManifoldState& s) {
    return TestPoint{s.v, s.n};
}

detail::ManifoldState initial_state(const detail::LowDiscrepancy& seq, std::uint64_t index,
                                    std::size_t d, std::size_t k) {
    const std::vector<double> z = seq.normals(index, d + k);
    detail::ManifoldState s;
    s.v.assign(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(d));
    s.n.assign(z.begin() + static_cast<std::ptrdiff_t>(d), z.end());
    auto fix = [](std::vector<double>& u) {
        double nn = detail::norm(u);
        if (!(nn > 1e-9)) {
            u.assign(u.size(), 0.0);
            u[0] = 1.0;
        } else {
            for (double& x : u) x /= nn;
        }
    };
    fix(s.v);
    fix(s.n);
    return s;
}

} // namespace

SolveReport solve(std::span<const WeightedCloud> measures, int k, const SolveConfig& cfg) {
    if (measures.empty()) throw std::invalid_argument("solve: need at least one measure");
    if (k < 1) throw std::invalid_argument("solve: need k >= 1");
    for (const auto& m : measures) m.validate();
    const std::size_t d = measures.front().dim();
    const int n = static_cast<int>(measures.size());

    SolveReport report;
    report.recommended_count = (n == static_cast<int>(d) + k - 1);
    if (!report.recommended_count)
        report.warning = "measure count differs from d+k-1; attempting anyway";
    {
        const auto cert = cert::certify(static_cast<int>(d), k, 0);
        report.certified = cert.certified;
        report.stirling_parity = cert.stirling_parity;
    }

    const detail::LowDiscrepancy seq(2 * ((d + k + 1) / 2), cfg.seed);
    const int restarts = std::max(1, cfg.restarts);

    detail::NewtonOptions nopts;
    nopts.max_iterations = cfg.max_iterations;
    nopts.residual_tol = cfg.residual_tol;
    nopts.fd_step = cfg.jacobian_step;

    const detail::ResidualFn residual = [&](const detail::ManifoldState& s) {
        return relative_residual(measures, state_to_point(s));
    };

    struct Slot {
        AttemptSummary summary;
        bool ran = false;
        bool has_result = false;
        BisectionResult result;
        TestPoint point;
    };
    std::vector<Slot> slots(static_cast<std::size_t>(restarts));
    std::atomic<int> best_success{restarts};

    parallel_for(static_cast<std::size_t>(restarts), resolve_threads(cfg.threads),
                 [&](std::size_t i) {
        if (static_cast<int>(i) > best_success.load()) return; // a lower index already won
        Slot& slot = slots[i];
        slot.ran = true;
        slot.summary.index = static_cast<int>(i);
        try {
            const auto start = initial_state(seq, i, d, static_cast<std::size_t>(k));
            const auto outcome = detail::damped_gauss_newton(start, residual, nopts);
            slot.summary.iterations = outcome.iterations;
            slot.summary.residual = outcome.residual_inf;
            slot.summary.converged = outcome.converged;
            if (!outcome.converged) return;
            const TestPoint tp = state_to_point(outcome.state);
            const LiftFrame frame = build_lift_frame(measures, tp);
            BisectionResult res = decode_zero(measures, tp, frame, cfg.residual_tol);
            const ValidationReport check = validate(measures, res, cfg.residual_tol);
            slot.summary.validated = check.pass;
            if (check.pass) {
                slot.result = std::move(res);
                slot.point = tp;
                slot.has_result = true;
                int expected = best_success.load();
                while (static_cast<int>(i) < expected &&
                       !best_success.compare_exchange_weak(expected, static_cast<int>(i))) {
                }
            }
        } catch (const std::exception&) {
            slot.summary.validated = false;
        }
    });

    const int winner = best_success.load();
    if (winner < restarts) {
        report.success = true;
        report.winning_restart = winner;
        report.result = slots[static_cast<std::size_t>(winner)].result;
        report.solution = slots[static_cast<std::size_t>(winner)].point;
        report.best_residual = report.result.residual;
        for (int i = 0; i <= winner; ++i)
            report.attempts.push_back(slots[static_cast<std::size_t>(i)].summary);
    } else {
        for (auto& slot : slots)
            if (slot.ran) {
                report.attempts.push_back(slot.summary);
                report.best_residual = std::min(report.best_residual, slot.summary.residual);
            }
    }
    return report;
}

ValidationReport validate(std::span<const WeightedCloud> measures, const BisectionResult& result,
                          double tol) {
    ValidationReport rep;
    const Poly1 p(result.p_coeffs);
    for (const auto& cloud : measures) {
        const Pushforward1D pf = pushforward(cloud, result.direction);
        const double imb =
            chessboard_imbalance(pf, result.cuts, p, result.reference_offset);
        rep.imbalances.push_back(imb);
        rep.max_relative_imbalance =
            std::max(rep.max_relative_imbalance, std::fabs(imb) / pf.total_mass());
    }
    rep.pass = rep.max_relative_imbalance <= tol;
    return rep;
}

} // namespace chessboard
