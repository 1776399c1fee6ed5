#include "chessboard/grasssearch.hpp"

#include "chessboard/certifier.hpp"
#include "chessboard/detail/newton.hpp"
#include "chessboard/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

namespace chessboard {

void SubspaceFrame::validate(double tol) const {
    if (rows.empty()) throw std::invalid_argument("frame: empty");
    const std::size_t ambient = rows.front().size();
    if (rows.size() > ambient) throw std::invalid_argument("frame: more rows than ambient dims");
    for (const auto& r : rows)
        if (r.size() != ambient) throw std::invalid_argument("frame: ragged rows");
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i; j < rows.size(); ++j) {
            const double expect = i == j ? 1.0 : 0.0;
            if (std::fabs(detail::dot(rows[i], rows[j]) - expect) > tol)
                throw std::invalid_argument("frame: rows are not orthonormal");
        }
}

SubspaceFrame SubspaceFrame::identity(std::size_t d, std::size_t ambient) {
    SubspaceFrame f;
    f.rows.assign(d, std::vector<double>(ambient, 0.0));
    for (std::size_t i = 0; i < d; ++i) f.rows[i][i] = 1.0;
    return f;
}

WeightedCloud restrict_to(const ProjectionAssignment& assignment, const SubspaceFrame& frame) {
    assignment.ambient.validate();
    frame.validate();
    if (frame.ambient_dim() != assignment.ambient.dim())
        throw std::invalid_argument("restrict: frame/cloud dimension mismatch");
    WeightedCloud out;
    out.weights = assignment.ambient.weights;
    out.bandwidth = assignment.ambient.bandwidth;
    out.points.reserve(assignment.ambient.size());
    for (const auto& p : assignment.ambient.points) {
        std::vector<double> y(frame.subspace_dim(), 0.0);
        for (std::size_t r = 0; r < frame.rows.size(); ++r)
            y[r] = detail::dot(frame.rows[r], p);
        out.points.push_back(std::move(y));
    }
    return out;
}

namespace {

std::vector<WeightedCloud> restrict_all(std::span<const ProjectionAssignment> assignments,
                                        const SubspaceFrame& frame) {
    std::vector<WeightedCloud> clouds;
    clouds.reserve(assignments.size());
    for (const auto& a : assignments) clouds.push_back(restrict_to(a, frame));
    return clouds;
}

AssignSearchReport from_solve(const SolveReport& s, SubspaceFrame frame) {
    AssignSearchReport rep;
    rep.success = s.success;
    rep.frame = std::move(frame);
    rep.result = s.result;
    rep.solution = s.solution;
    rep.best_residual = s.best_residual;
    rep.winning_restart = s.winning_restart;
    rep.attempts = s.attempts;
    rep.certified = s.certified;
    rep.stirling_parity = s.stirling_parity;
    rep.recommended_count = s.recommended_count;
    rep.warning = s.warning;
    return rep;
}

} // namespace

AssignSearchReport assign_search(std::span<const ProjectionAssignment> assignments, int d, int k,
                                 const SolveConfig& cfg) {
    if (assignments.empty())
        throw std::invalid_argument("assign_search: need at least one assignment");
    if (d < 1 || k < 1) throw std::invalid_argument("assign_search: need d >= 1, k >= 1");
    for (const auto& a : assignments) a.ambient.validate();
    const std::size_t ambient = assignments.front().ambient.dim();
    for (const auto& a : assignments)
        if (a.ambient.dim() != ambient)
            throw std::invalid_argument("assign_search: inconsistent ambient dimensions");
    if (static_cast<std::size_t>(d) > ambient)
        throw std::invalid_argument("assign_search: d exceeds the ambient dimension");
    const std::size_t m = ambient - static_cast<std::size_t>(d);
    const int n = static_cast<int>(assignments.size());

    if (m == 0) {
        // zero-dimensional Grassmannian: the identity frame is the only one
        std::vector<WeightedCloud> clouds =
            restrict_all(assignments, SubspaceFrame::identity(static_cast<std::size_t>(d), ambient));
        return from_solve(solve(clouds, k, cfg),
                          SubspaceFrame::identity(static_cast<std::size_t>(d), ambient));
    }

    AssignSearchReport report;
    report.recommended_count = (n == d + static_cast<int>(m) + k - 1);
    if (!report.recommended_count)
        report.warning = "assignment count differs from d+m+k-1; attempting anyway";
    {
        const auto cert = cert::certify(d, k, static_cast<int>(m));
        report.certified = cert.certified;
        report.stirling_parity = cert.stirling_parity;
    }

    const std::size_t dim_draw = static_cast<std::size_t>(d) * ambient +
                                 static_cast<std::size_t>(d) + static_cast<std::size_t>(k);
    const detail::LowDiscrepancy seq(2 * ((dim_draw + 1) / 2), cfg.seed);
    const int restarts = std::max(1, cfg.restarts);

    detail::NewtonOptions nopts;
    nopts.max_iterations = cfg.max_iterations;
    nopts.residual_tol = cfg.residual_tol;
    nopts.fd_step = cfg.jacobian_step;

    const detail::ResidualFn residual = [&](const detail::ManifoldState& s) {
        SubspaceFrame frame{s.frame};
        const std::vector<WeightedCloud> clouds = restrict_all(assignments, frame);
        return relative_residual(clouds, TestPoint{s.v, s.n});
    };

    struct Slot {
        AttemptSummary summary;
        bool ran = false;
        bool has_result = false;
        BisectionResult result;
        TestPoint point;
        SubspaceFrame frame;
    };
    std::vector<Slot> slots(static_cast<std::size_t>(restarts));
    std::atomic<int> best_success{restarts};

    parallel_for(static_cast<std::size_t>(restarts), resolve_threads(cfg.threads),
                 [&](std::size_t i) {
        if (static_cast<int>(i) > best_success.load()) return;
        Slot& slot = slots[i];
        slot.ran = true;
        slot.summary.index = static_cast<int>(i);
        try {
            const std::vector<double> z = seq.normals(i, dim_draw);
            detail::ManifoldState start;
            start.frame.assign(static_cast<std::size_t>(d), std::vector<double>(ambient, 0.0));
            std::size_t off = 0;
            for (std::size_t r = 0; r < static_cast<std::size_t>(d); ++r)
                for (std::size_t c = 0; c < ambient; ++c) start.frame[r][c] = z[off++];
            try {
                detail::orthonormalize_rows(start.frame);
            } catch (const std::runtime_error&) {
                start.frame = SubspaceFrame::identity(static_cast<std::size_t>(d), ambient).rows;
            }
            start.v.assign(z.begin() + static_cast<std::ptrdiff_t>(off),
                           z.begin() +
                               static_cast<std::ptrdiff_t>(off + static_cast<std::size_t>(d)));
            off += static_cast<std::size_t>(d);
            start.n.assign(z.begin() + static_cast<std::ptrdiff_t>(off), z.end());
            auto fix = [](std::vector<double>& u) {
                const double nn = detail::norm(u);
                if (!(nn > 1e-9)) {
                    u.assign(u.size(), 0.0);
                    u[0] = 1.0;
                } else {
                    for (double& x : u) x /= nn;
                }
            };
            fix(start.v);
            fix(start.n);

            const auto outcome = detail::damped_gauss_newton(start, residual, nopts);
            slot.summary.iterations = outcome.iterations;
            slot.summary.residual = outcome.residual_inf;
            slot.summary.converged = outcome.converged;
            if (!outcome.converged) return;
            SubspaceFrame frame{outcome.state.frame};
            const std::vector<WeightedCloud> clouds = restrict_all(assignments, frame);
            const TestPoint tp{outcome.state.v, outcome.state.n};
            const LiftFrame lift = build_lift_frame(clouds, tp);
            BisectionResult res = decode_zero(clouds, tp, lift, cfg.residual_tol);
            const ValidationReport check = validate(clouds, res, cfg.residual_tol);
            slot.summary.validated = check.pass;
            if (check.pass) {
                slot.result = std::move(res);
                slot.point = tp;
                slot.frame = std::move(frame);
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
        report.frame = slots[static_cast<std::size_t>(winner)].frame;
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

} // namespace chessboard
