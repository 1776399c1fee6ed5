#include "chessboard/instance_io.hpp"

#include <doctest.h>

#include "chessboard/instance_gen.hpp"
#include "chessboard/version.hpp"

using namespace chessboard;

TEST_CASE("instance schema round trips") {
    const auto measures = gen::gaussian_instance(12, 2, 3, 5, 0.3);
    const io::json doc = io::instance_to_json(measures);
    CHECK(doc.at("ambient_dim") == 2);
    REQUIRE(doc.at("measures").size() == 3);
    CHECK(doc.at("measures")[0].contains("points"));
    CHECK(doc.at("measures")[0].contains("weights"));
    CHECK(doc.at("measures")[0].contains("bandwidth"));

    const auto back = io::instance_from_json(doc);
    REQUIRE(back.size() == measures.size());
    for (std::size_t j = 0; j < back.size(); ++j) {
        CHECK(back[j].points == measures[j].points);
        CHECK(back[j].weights == measures[j].weights);
        CHECK(back[j].bandwidth == measures[j].bandwidth);
    }
}

TEST_CASE("instance schema rejects malformed documents") {
    CHECK_THROWS_AS((void)io::instance_from_json(io::json::object()), std::invalid_argument);
    io::json doc;
    doc["ambient_dim"] = 3;
    doc["measures"] = io::json::array();
    CHECK_THROWS_AS((void)io::instance_from_json(doc), std::invalid_argument);
    doc["measures"] = {{{"points", {{1.0, 2.0}}}, {"weights", {1.0}}, {"bandwidth", 0.1}}};
    CHECK_THROWS_AS((void)io::instance_from_json(doc), std::invalid_argument); // dim mismatch
}

TEST_CASE("bisection results serialize with the pinned keys in order") {
    BisectionResult result;
    result.direction = {0.6, 0.8};
    result.reference_offset = 1.25;
    result.alpha = -0.5;
    result.p_coeffs = {1.0, 0.0, -0.25};
    result.cuts = {-1.0, 3.5};
    result.imbalances = {1e-9, -2e-9};
    result.residual = 2e-9;
    const io::json doc = io::result_to_json(result);
    const std::string dumped = doc.dump();
    CHECK(dumped ==
          R"({"direction":[0.6,0.8],"a_v":1.25,"alpha":-0.5,"p_coeffs":[1.0,0.0,-0.25],)"
          R"("cuts":[-1.0,3.5],"imbalances":[1e-09,-2e-09],"residual":2e-09})");
}

TEST_CASE("certificate JSON carries the full verdict") {
    const auto cert = cert::certify(2, 2, 1);
    const io::json doc = io::certificate_to_json(cert);
    CHECK(doc.at("d") == 2);
    CHECK(doc.at("k") == 2);
    CHECK(doc.at("m") == 1);
    CHECK(doc.at("n") == 4);
    CHECK(doc.at("certified") == true);
    CHECK(doc.at("stirling_parity") == 1);
    CHECK(doc.at("consistent") == true);
    REQUIRE(doc.at("step_chain").size() == 4);
    CHECK(doc.at("step_chain")[3] == false);
}

TEST_CASE("manifests pin the tool, flags, and input digests") {
    io::RunManifest manifest;
    manifest.subcommand = "bisect";
    manifest.flags = {{"k", 2}};
    manifest.seed = 99;
    io::add_input_digest(manifest, "instance.json", "payload-bytes");
    const io::json doc = io::manifest_to_json(manifest);
    CHECK(doc.at("tool") == "chessboard-bisect");
    CHECK(doc.at("version") == std::string(kToolVersion));
    CHECK(doc.at("subcommand") == "bisect");
    CHECK(doc.at("seed") == 99);
    REQUIRE(doc.at("inputs").size() == 1);
    CHECK(doc.at("inputs")[0].at("fnv1a") == io::fnv1a_hex("payload-bytes"));
}

TEST_CASE("fnv1a digests are stable") {
    CHECK(io::fnv1a_hex("") == "0xcbf29ce484222325");
    CHECK(io::fnv1a_hex("a") == io::fnv1a_hex("a"));
    CHECK(io::fnv1a_hex("a") != io::fnv1a_hex("b"));
}

TEST_CASE("csv header stays pinned for golden consumers") {
    const auto table = cert::parity_table(1, 2, 0);
    const std::string csv = cert::to_csv(table);
    CHECK(csv.rfind("d,k,m,n,member,certified,stirling_parity,consistent\n", 0) == 0);
}
