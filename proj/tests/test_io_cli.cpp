#include "helpers.hpp"
#include "qcorr/cli.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <sstream>

using namespace qcorr;

namespace {

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun call_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json payload_of(const CliRun& run) {
    const nlohmann::json j = nlohmann::json::parse(run.out);
    REQUIRE(j.at("tool") == "qcorr");
    REQUIRE(j.at("version") == std::string(library_version));
    return j.at("payload");
}

} // namespace

TEST_CASE("states round trip through json in both representations") {
    const QuantumState structured = w_mixture(3, 0.5);
    CHECK(trace_distance(state_from_json(state_to_json(structured)), structured) < 1e-14);
    const QuantumState dense = structured.densified();
    CHECK(trace_distance(state_from_json(state_to_json(dense)), dense) < 1e-14);
    CHECK(state_from_json(state_to_json(dense)).is_dense());
    CHECK(!state_from_json(state_to_json(structured)).is_dense());
}

TEST_CASE("states round trip through files") {
    const auto path = std::filesystem::temp_directory_path() / "qcorr_state_roundtrip.json";
    const QuantumState s = flagged_bell_mixture();
    save_state(s, path.string());
    CHECK(trace_distance(load_state(path.string()), s) < 1e-14);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_state(path.string()), std::runtime_error);
}

TEST_CASE("json rejects malformed documents") {
    CHECK_THROWS_AS(state_from_json(nlohmann::json{{"representation", "dense"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(state_from_json(nlohmann::json{{"representation", "weird"},
                                                   {"num_parties", 1}}),
                    std::invalid_argument);
}

TEST_CASE("rounding through twelve digits is stable") {
    CHECK(round12(1.0 / 3.0) == round12(round12(1.0 / 3.0)));
    CHECK(round12(0.0) == 0.0);
    CHECK(std::abs(round12(-0.3839999999999999) + 0.384) < 1e-12);
}

TEST_CASE("state expressions build tensor products with parameters") {
    const QuantumState s = parse_state_expression("bell_phi_plus*mixed:n=1");
    CHECK(s.num_parties() == 3);
    const QuantumState wm = parse_state_expression("w_mixture:n=3,fidelity=0.8");
    CHECK(std::abs(fidelity_with_pure(wm, w_state(3)) - 0.8) < 1e-12);
    CHECK_THROWS_AS(parse_state_expression(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_state_expression("w_mixture:n=oops"), std::invalid_argument);
    CHECK_THROWS_AS(parse_state_expression("nonsense"), std::invalid_argument);
}

TEST_CASE("analyze reports cuts, degree and factors") {
    const CliRun run = call_cli({"analyze", "--state", "bell_phi_plus*mixed:n=1"});
    REQUIRE(run.code == 0);
    const nlohmann::json payload = payload_of(run);
    CHECK(payload.at("num_parties") == 3);
    CHECK(payload.at("genuinely_correlated") == false);
    CHECK(payload.at("degree") == 2);
    REQUIRE(payload.at("factors").size() == 2);
    CHECK(payload.at("factors")[0].at("num_parties") == 2);
    CHECK(payload.at("cuts").size() == 3);
}

TEST_CASE("covariance subcommand evaluates strings and scans") {
    const CliRun one = call_cli(
        {"covariance", "--state", "w_mixture:n=3,fidelity=0.8", "--observables", "ZZZ"});
    REQUIRE(one.code == 0);
    CHECK(std::abs(payload_of(one).at("covariance").get<double>() + 0.384) < 1e-10);

    const CliRun scan = call_cli({"covariance", "--state", "w_mixture:n=3,fidelity=0.5", "--scan"});
    REQUIRE(scan.code == 0);
    CHECK(payload_of(scan).at("max_abs").get<double>() < 1e-10);
    CHECK(payload_of(scan).at("num_strings") == 27);

    const CliRun sampled = call_cli({"covariance", "--state", "w_mixture:n=9,fidelity=0.5",
                                     "--scan", "--samples", "50", "--seed", "7"});
    REQUIRE(sampled.code == 0);
    CHECK(payload_of(sampled).at("mode") == "sampled");

    const CliRun both = call_cli({"covariance", "--state", "w_mixture:n=3", "--observables",
                                  "ZZZ", "--scan"});
    CHECK(both.code == 2);

    const CliRun huge = call_cli({"covariance", "--state", "w_mixture:n=13,fidelity=0.5",
                                  "--scan"});
    CHECK(huge.code == 3);
}

TEST_CASE("distill subcommand covers simulation and closed forms") {
    const CliRun sim = call_cli(
        {"distill", "--state", "w_mixture:n=3,fidelity=0.5", "--epsilon", "0.1"});
    REQUIRE(sim.code == 0);
    CHECK(std::abs(payload_of(sim).at("success_probability").get<double>() - 0.055) < 1e-10);
    CHECK(std::abs(payload_of(sim).at("fidelity").get<double>() - 10.0 / 11.0) < 1e-10);

    const CliRun closed = call_cli({"distill", "--closed-form", "--n", "5", "--epsilon", "0.25"});
    REQUIRE(closed.code == 0);
    CHECK(std::abs(payload_of(closed).at("success_probability").get<double>() - 0.126953125) <
          1e-10);

    const CliRun invalid = call_cli({"distill", "--closed-form", "--n", "5", "--epsilon", "1.5"});
    CHECK(invalid.code == 2);
}

TEST_CASE("figure subcommand emits csv curves") {
    const CliRun fig2 = call_cli({"figure", "--which", "fig2"});
    REQUIRE(fig2.code == 0);
    std::istringstream lines2(fig2.out);
    std::string header;
    std::getline(lines2, header);
    CHECK(header == "n,fidelity,success_probability");
    std::size_t rows = 0;
    for (std::string line; std::getline(lines2, line);) ++rows;
    CHECK(rows == 6 * 99);

    const CliRun fig3 = call_cli({"figure", "--which", "fig3", "--n", "3"});
    REQUIRE(fig3.code == 0);
    std::istringstream lines3(fig3.out);
    std::getline(lines3, header);
    CHECK(header == "n,fidelity,covariance");
    rows = 0;
    for (std::string line; std::getline(lines3, line);) ++rows;
    CHECK(rows == 101);

    CHECK(call_cli({"figure", "--which", "fig9"}).code == 2);
    CHECK(call_cli({"figure", "--which", "fig3", "--n", "4"}).code == 2);
}

TEST_CASE("postulates subcommand reports verdicts") {
    const CliRun filter = call_cli({"postulates", "--state", "w_mixture:n=3,fidelity=0.5",
                                    "--scenario", "filter", "--functional", "covariance-max",
                                    "--epsilon", "0.25"});
    REQUIRE(filter.code == 0);
    const nlohmann::json payload = payload_of(filter);
    CHECK(payload.at("verdict") == "violated");
    CHECK(payload.at("value_before").get<double>() < 1e-10);
    CHECK(std::abs(payload.at("value_after").get<double>() - 0.384) < 1e-9);

    const CliRun add = call_cli({"postulates", "--state", "w_mixture:n=3,fidelity=0.5",
                                 "--scenario", "add", "--functional", "degree"});
    REQUIRE(add.code == 0);
    CHECK(payload_of(add).at("verdict") == "satisfied");

    CHECK(call_cli({"postulates", "--state", "w_mixture:n=3", "--scenario", "mystery"}).code == 2);
}

TEST_CASE("work and delta-w subcommands report the family values") {
    const CliRun fixed = call_cli({"work", "--state", "w_mixture:n=3,fidelity=0.5",
                                   "--measuring", "0", "--theta", "0"});
    REQUIRE(fixed.code == 0);
    CHECK(std::abs(payload_of(fixed).at("work").get<double>() -
                   (3.0 - std::log2(6.0))) < 1e-9);

    const CliRun opt = call_cli({"work", "--state",
                                 "bell_diag:pp=0.166666666666667,pm=0.166666666666667,"
                                 "sp=0.666666666666667,sm=0",
                                 "--optimize"});
    REQUIRE(opt.code == 0);
    CHECK(std::abs(payload_of(opt).at("work").get<double>() - 0.349977578352) < 1e-6);

    const CliRun dw = call_cli({"delta-w", "--state", "w_mixture:n=3,fidelity=0.5"});
    REQUIRE(dw.code == 0);
    const nlohmann::json payload = payload_of(dw);
    CHECK(std::abs(payload.at("delta_w").get<double>() - 0.100284569384) < 1e-5);
    CHECK(payload.at("cuts").size() == 3);
}

TEST_CASE("usage problems exit with the usage code") {
    CHECK(call_cli({}).code != 0);
    CHECK(call_cli({"analyze"}).code == 1);
    CHECK(call_cli({"unknown-subcommand"}).code != 0);
    const CliRun missing_file = call_cli({"analyze", "--state", "@/nonexistent/state.json"});
    CHECK(missing_file.code == 1);
}

TEST_CASE("state files feed the command line") {
    const auto path = std::filesystem::temp_directory_path() / "qcorr_cli_state.json";
    save_state(w_mixture(3, 0.8), path.string());
    const CliRun run = call_cli({"covariance", "--state", "@" + path.string(),
                                 "--observables", "ZZZ"});
    REQUIRE(run.code == 0);
    CHECK(std::abs(payload_of(run).at("covariance").get<double>() + 0.384) < 1e-10);
    std::filesystem::remove(path);
}
