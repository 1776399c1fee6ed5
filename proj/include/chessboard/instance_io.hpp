#pragma once

#include "chessboard/certifier.hpp"
#include "chessboard/grasssearch.hpp"
#include "chessboard/solver.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace chessboard::io {

// Insertion-ordered documents keep outputs byte-stable.
using json = nlohmann::ordered_json;

// Instance schema:
// {"ambient_dim": D,
//  "measures": [{"points": [[f64,...],...], "weights": [f64,...],
//                "bandwidth": f64}, ...]}
std::vector<WeightedCloud> instance_from_json(const json& doc);
json instance_to_json(std::span<const WeightedCloud> measures);

json result_to_json(const BisectionResult& result);
json certificate_to_json(const cert::Certificate& cert);
json attempts_to_json(std::span<const AttemptSummary> attempts);
json solve_report_to_json(const SolveReport& report);
json assign_report_to_json(const AssignSearchReport& report);

// Reproducibility record embedded in every output artifact.
struct RunManifest {
    std::string subcommand;
    json flags = json::object();
    json inputs = json::array(); // [{"path":..., "fnv1a": "0x..."}]
    std::uint64_t seed = 0;
};

json manifest_to_json(const RunManifest& manifest);
void add_input_digest(RunManifest& manifest, const std::string& path,
                      const std::string& bytes);

std::string fnv1a_hex(std::string_view bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace chessboard::io
