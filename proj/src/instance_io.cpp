#include "chessboard/instance_io.hpp"

#include "chessboard/version.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chessboard::io {

std::vector<WeightedCloud> instance_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("ambient_dim") || !doc.contains("measures"))
        throw std::invalid_argument("instance: expected ambient_dim and measures");
    const std::size_t dim = doc.at("ambient_dim").get<std::size_t>();
    std::vector<WeightedCloud> measures;
    for (const auto& entry : doc.at("measures")) {
        WeightedCloud cloud;
        cloud.points = entry.at("points").get<std::vector<std::vector<double>>>();
        cloud.weights = entry.at("weights").get<std::vector<double>>();
        cloud.bandwidth = entry.at("bandwidth").get<double>();
        cloud.validate();
        if (cloud.dim() != dim)
            throw std::invalid_argument("instance: point dimension differs from ambient_dim");
        measures.push_back(std::move(cloud));
    }
    if (measures.empty()) throw std::invalid_argument("instance: no measures");
    return measures;
}

json instance_to_json(std::span<const WeightedCloud> measures) {
    json doc;
    doc["ambient_dim"] = measures.empty() ? 0 : measures.front().dim();
    json list = json::array();
    for (const auto& m : measures) {
        json entry;
        entry["points"] = m.points;
        entry["weights"] = m.weights;
        entry["bandwidth"] = m.bandwidth;
        list.push_back(std::move(entry));
    }
    doc["measures"] = std::move(list);
    return doc;
}

json result_to_json(const BisectionResult& result) {
    json doc;
    doc["direction"] = result.direction;
    doc["a_v"] = result.reference_offset;
    doc["alpha"] = result.alpha;
    doc["p_coeffs"] = result.p_coeffs;
    doc["cuts"] = result.cuts;
    doc["imbalances"] = result.imbalances;
    doc["residual"] = result.residual;
    return doc;
}

json certificate_to_json(const cert::Certificate& cert) {
    json doc;
    doc["d"] = cert.problem.d;
    doc["k"] = cert.problem.k;
    doc["m"] = cert.problem.m;
    doc["n"] = cert.problem.mass_count;
    doc["target_exponent"] = cert.problem.target_exp;
    doc["member"] = cert.member;
    doc["certified"] = cert.certified;
    doc["stirling_parity"] = cert.stirling_parity;
    doc["consistent"] = cert.consistent;
    doc["step_chain"] = {cert.step_chain[0], cert.step_chain[1], cert.step_chain[2],
                         cert.step_chain[3]};
    return doc;
}

json attempts_to_json(std::span<const AttemptSummary> attempts) {
    json list = json::array();
    for (const auto& a : attempts) {
        json entry;
        entry["index"] = a.index;
        entry["iterations"] = a.iterations;
        entry["residual"] = a.residual;
        entry["converged"] = a.converged;
        entry["validated"] = a.validated;
        list.push_back(std::move(entry));
    }
    return list;
}

json solve_report_to_json(const SolveReport& report) {
    json doc;
    doc["success"] = report.success;
    doc["certified"] = report.certified;
    doc["stirling_parity"] = report.stirling_parity;
    if (!report.warning.empty()) doc["warning"] = report.warning;
    if (report.success) {
        doc["winning_restart"] = report.winning_restart;
        doc["result"] = result_to_json(report.result);
        doc["lift_coeffs"] = report.solution.lift_coeffs;
    } else {
        doc["best_residual"] = report.best_residual;
    }
    doc["attempts"] = attempts_to_json(report.attempts);
    return doc;
}

json assign_report_to_json(const AssignSearchReport& report) {
    json doc;
    doc["success"] = report.success;
    doc["certified"] = report.certified;
    doc["stirling_parity"] = report.stirling_parity;
    if (!report.warning.empty()) doc["warning"] = report.warning;
    if (report.success) {
        doc["winning_restart"] = report.winning_restart;
        json result = result_to_json(report.result);
        result["frame"] = report.frame.rows;
        doc["result"] = std::move(result);
        doc["lift_coeffs"] = report.solution.lift_coeffs;
    } else {
        doc["best_residual"] = report.best_residual;
    }
    doc["attempts"] = attempts_to_json(report.attempts);
    return doc;
}

json manifest_to_json(const RunManifest& manifest) {
    json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["subcommand"] = manifest.subcommand;
    doc["flags"] = manifest.flags;
    doc["inputs"] = manifest.inputs;
    doc["seed"] = manifest.seed;
    return doc;
}

void add_input_digest(RunManifest& manifest, const std::string& path, const std::string& bytes) {
    json entry;
    entry["path"] = path;
    entry["fnv1a"] = fnv1a_hex(bytes);
    manifest.inputs.push_back(std::move(entry));
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    std::ostringstream os;
    os << "0x" << std::hex << hash;
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

} // namespace chessboard::io
