#include "chessboard/certifier.hpp"
#include "chessboard/grasscoh.hpp"
#include "chessboard/grasssearch.hpp"
#include "chessboard/instance_io.hpp"
#include "chessboard/selftest.hpp"
#include "chessboard/solver.hpp"
#include "chessboard/version.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

using chessboard::io::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitComputation = 2;
constexpr int kExitInvariant = 3;

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty())
        std::cout << payload << std::endl;
    else
        chessboard::io::write_file(out_path, payload + "\n");
}

int run_certify(int d, int k, int m, const chessboard::cert::CertifierOptions& opts,
                const std::string& out_path) {
    chessboard::io::RunManifest manifest;
    manifest.subcommand = "certify";
    manifest.flags = {{"d", d}, {"k", k}, {"m", m}, {"max_degree", opts.max_degree}};
    const auto cert = chessboard::cert::certify(d, k, m, opts);
    json doc;
    doc["manifest"] = chessboard::io::manifest_to_json(manifest);
    doc["certificate"] = chessboard::io::certificate_to_json(cert);
    emit(doc.dump(2), out_path);
    return kExitOk;
}

int run_table(int d_max, int k_max, int m_max, const chessboard::cert::CertifierOptions& opts,
              const std::string& out_path) {
    chessboard::io::RunManifest manifest;
    manifest.subcommand = "table";
    manifest.flags = {{"d_max", d_max}, {"k_max", k_max}, {"m_max", m_max},
                      {"max_degree", opts.max_degree}};
    const auto table = chessboard::cert::parity_table(d_max, k_max, m_max, opts);
    std::ostringstream os;
    os << "# manifest: " << chessboard::io::manifest_to_json(manifest).dump() << "\n"
       << chessboard::cert::to_csv(table);
    const std::string payload = os.str();
    if (out_path.empty())
        std::cout << payload;
    else
        chessboard::io::write_file(out_path, payload);
    return kExitOk;
}

int run_ring_info(int d, int m, int max_degree, const std::string& out_path) {
    if (max_degree < 0) max_degree = d * m;
    chessboard::io::RunManifest manifest;
    manifest.subcommand = "ring-info";
    manifest.flags = {{"d", d}, {"m", m}, {"max_degree", max_degree}};
    chessboard::grass::CohomologyRing ring(d, m, /*with_t=*/false, max_degree);
    const auto& pres = ring.presentation();
    std::ostringstream os;
    os << "# manifest: " << chessboard::io::manifest_to_json(manifest).dump() << "\n";
    os << "ring: cohomology of the Grassmannian of " << d << "-planes in R^" << (d + m)
       << " with mod-2 coefficients\n";
    os << "generators:";
    for (std::size_t i = 0; i < pres.ring->gen_count(); ++i)
        os << " " << pres.ring->gen_name(i) << "(deg " << pres.ring->gen_degree(i) << ")";
    os << "\n";
    for (std::size_t i = 0; i < pres.relations.size(); ++i)
        os << "relation[" << (i + 1) << "]: " << pres.relations[i].str() << "\n";
    for (int deg = 0; deg <= max_degree; ++deg) {
        os << "dim^" << deg << " = " << ring.dimension(deg);
        const auto& basis = ring.basis(deg);
        if (!basis.empty()) {
            os << "  basis:";
            for (const auto& mono : basis)
                os << " " << chessboard::f2::Poly::monomial(pres.ring, mono).str();
        }
        os << "\n";
    }
    if (out_path.empty())
        std::cout << os.str();
    else
        chessboard::io::write_file(out_path, os.str());
    return kExitOk;
}

int run_bisect(const std::string& instance_path, int k, const chessboard::SolveConfig& cfg,
               const std::string& out_path) {
    chessboard::io::RunManifest manifest;
    manifest.subcommand = "bisect";
    manifest.flags = {{"k", k},
                      {"tol", cfg.residual_tol},
                      {"restarts", cfg.restarts},
                      {"threads", cfg.threads}};
    manifest.seed = cfg.seed;
    const std::string bytes = chessboard::io::read_file(instance_path);
    chessboard::io::add_input_digest(manifest, instance_path, bytes);
    const auto measures = chessboard::io::instance_from_json(json::parse(bytes));

    const auto report = chessboard::solve(measures, k, cfg);
    json doc;
    doc["manifest"] = chessboard::io::manifest_to_json(manifest);
    doc["solve"] = chessboard::io::solve_report_to_json(report);
    emit(doc.dump(2), out_path);
    if (!report.success) {
        std::cerr << "bisect: restarts exhausted; best residual " << report.best_residual
                  << " (a failed search is not a disproof)\n";
        return kExitComputation;
    }
    return kExitOk;
}

int run_assign_search(const std::string& instance_path, int d, int k,
                      const chessboard::SolveConfig& cfg, const std::string& out_path) {
    chessboard::io::RunManifest manifest;
    manifest.subcommand = "assign-search";
    manifest.flags = {{"d", d},
                      {"k", k},
                      {"tol", cfg.residual_tol},
                      {"restarts", cfg.restarts},
                      {"threads", cfg.threads}};
    manifest.seed = cfg.seed;
    const std::string bytes = chessboard::io::read_file(instance_path);
    chessboard::io::add_input_digest(manifest, instance_path, bytes);
    const auto measures = chessboard::io::instance_from_json(json::parse(bytes));
    std::vector<chessboard::ProjectionAssignment> assignments;
    assignments.reserve(measures.size());
    for (auto& m : measures) assignments.push_back({std::move(m)});

    const auto report = chessboard::assign_search(assignments, d, k, cfg);
    json doc;
    doc["manifest"] = chessboard::io::manifest_to_json(manifest);
    doc["search"] = chessboard::io::assign_report_to_json(report);
    emit(doc.dump(2), out_path);
    if (!report.success) {
        std::cerr << "assign-search: restarts exhausted; best residual " << report.best_residual
                  << " (a failed search is not a disproof)\n";
        return kExitComputation;
    }
    return kExitOk;
}

int run_selftest(bool quick, std::uint64_t seed, int threads, const std::string& fault_name) {
    chessboard::selftest::Options opts;
    opts.quick = quick;
    opts.seed = seed;
    opts.threads = threads;
    if (fault_name == "relation")
        opts.fault = chessboard::selftest::Fault::corrupt_relation;
    else if (!fault_name.empty())
        throw CLI::ValidationError("--inject-fault", "unknown fault '" + fault_name + "'");

    const auto report = chessboard::selftest::run(opts);
    for (const auto& check : report.checks) {
        std::cout << (check.pass ? "[ok]   " : "[FAIL] ") << check.name;
        if (!check.detail.empty()) std::cout << ": " << check.detail;
        std::cout << "\n";
    }
    if (!report.all_pass()) {
        std::cerr << "selftest: invariant violation detected\n";
        return kExitInvariant;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chessboard bisections of measures and mass assignments: exact parity/ideal "
                 "certificates and numerical parallel-hyperplane bisection search"};
    app.set_version_flag("--version", std::string(chessboard::kToolVersion));
    app.require_subcommand(1);

    int d = 1, k = 1, m = 0;
    int d_max = 4, k_max = 6, m_max = 3;
    int max_degree = -1;
    std::string out_path;
    std::string instance_path;
    chessboard::cert::CertifierOptions cert_opts;
    chessboard::SolveConfig bisect_cfg;
    chessboard::SolveConfig assign_cfg;
    assign_cfg.residual_tol = 1e-5;
    std::uint64_t selftest_seed = 0x5eedc0deull;
    int selftest_threads = 0;
    bool quick = false;
    std::string fault_name;

    auto* certify = app.add_subcommand("certify", "certify one (d, k, m) parameter triple");
    certify->add_option("--d", d, "fiber dimension")->required();
    certify->add_option("--k", k, "number of parallel hyperplanes")->required();
    certify->add_option("--m", m, "codimension of the subspaces")->capture_default_str();
    certify->add_option("--max-degree", cert_opts.max_degree, "slice-degree cap")
        ->capture_default_str();
    certify->add_option("--out", out_path, "output file (stdout when omitted)");

    auto* table = app.add_subcommand("table", "sweep a parameter grid into CSV");
    table->add_option("--d_max", d_max, "largest d")->capture_default_str();
    table->add_option("--k_max", k_max, "largest k")->capture_default_str();
    table->add_option("--m_max", m_max, "largest m")->capture_default_str();
    table->add_option("--max-degree", cert_opts.max_degree, "slice-degree cap")
        ->capture_default_str();
    table->add_option("--threads", cert_opts.threads, "worker threads (0 = auto)")
        ->capture_default_str();
    table->add_option("--out", out_path, "output file (stdout when omitted)");

    auto* ring_info = app.add_subcommand("ring-info", "print the cohomology presentation");
    ring_info->add_option("--d", d, "fiber dimension")->required();
    ring_info->add_option("--m", m, "codimension")->capture_default_str();
    ring_info->add_option("--max-degree", max_degree, "largest degree to report");
    ring_info->add_option("--out", out_path, "output file (stdout when omitted)");

    auto* bisect = app.add_subcommand("bisect", "find a chessboard bisection for an instance");
    bisect->add_option("instance", instance_path, "measures JSON file")->required();
    bisect->add_option("--k", k, "number of parallel hyperplanes")->required();
    bisect->add_option("--tol", bisect_cfg.residual_tol, "residual tolerance")
        ->capture_default_str();
    bisect->add_option("--restarts", bisect_cfg.restarts, "multi-start budget")
        ->capture_default_str();
    bisect->add_option("--seed", bisect_cfg.seed, "search seed")->capture_default_str();
    bisect->add_option("--threads", bisect_cfg.threads, "worker threads (0 = auto)")
        ->capture_default_str();
    bisect->add_option("--out", out_path, "output file (stdout when omitted)");

    auto* assign = app.add_subcommand("assign-search",
                                      "search subspaces and bisect the induced measures");
    assign->add_option("instance", instance_path, "ambient measures JSON file")->required();
    assign->add_option("--d", d, "subspace dimension")->required();
    assign->add_option("--k", k, "number of parallel hyperplanes")->required();
    assign->add_option("--tol", assign_cfg.residual_tol, "residual tolerance")
        ->capture_default_str();
    assign->add_option("--restarts", assign_cfg.restarts, "multi-start budget")
        ->capture_default_str();
    assign->add_option("--seed", assign_cfg.seed, "search seed")->capture_default_str();
    assign->add_option("--threads", assign_cfg.threads, "worker threads (0 = auto)")
        ->capture_default_str();
    assign->add_option("--out", out_path, "output file (stdout when omitted)");

    auto* selftest = app.add_subcommand("selftest", "run the invariant suite");
    selftest->add_flag("--quick", quick, "smaller grids, finishes fast");
    selftest->add_option("--seed", selftest_seed, "randomized-check seed")->capture_default_str();
    selftest->add_option("--threads", selftest_threads, "worker threads (0 = auto)")
        ->capture_default_str();
    selftest->add_option("--inject-fault", fault_name, "test hook: corrupt an internal invariant")
        ->group(""); // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (certify->parsed()) return run_certify(d, k, m, cert_opts, out_path);
        if (table->parsed()) return run_table(d_max, k_max, m_max, cert_opts, out_path);
        if (ring_info->parsed()) return run_ring_info(d, m, max_degree, out_path);
        if (bisect->parsed()) return run_bisect(instance_path, k, bisect_cfg, out_path);
        if (assign->parsed()) return run_assign_search(instance_path, d, k, assign_cfg, out_path);
        if (selftest->parsed()) return run_selftest(quick, selftest_seed, selftest_threads, fault_name);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
