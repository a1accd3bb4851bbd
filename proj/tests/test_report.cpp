#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coinflip/report.hpp"

using namespace coinflip;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

int cli(std::vector<const char*> args) {
    args.insert(args.begin(), "coinflip");
    return cli_main(static_cast<int>(args.size()), args.data());
}

fs::path tmp_file(const std::string& stem) {
    return fs::temp_directory_path() / ("coinflip_test_" + stem);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

}  // namespace

TEST_CASE("fair artifact") {
    const auto out = tmp_file("fair.json");
    REQUIRE(cli({"fair", "--n", "1", "--out", out.c_str()}) == 0);
    const json j = load(out);
    CHECK(j["n"] == 1);
    CHECK(std::abs(j["p_fair"].get<double>() - 0.9) <= 1e-7);
    CHECK(std::abs(j["theta_deg"].get<double>() - 36.8699) <= 1e-2);
    CHECK(j.contains("theta_rad"));
    CHECK(j.contains("residual"));
    fs::remove(out);
}

TEST_CASE("fair table artifact") {
    const auto out = tmp_file("fair_table.json");
    REQUIRE(cli({"fair", "--n", "2", "--table", "--out", out.c_str()}) == 0);
    const json j = load(out);
    REQUIRE(j["table"].size() == 2);
    CHECK(j["table"][0]["n"] == 1);
    CHECK(j["table"][1]["n"] == 2);
    CHECK(j["table"][1]["p_fair"].get<double>() < j["table"][0]["p_fair"].get<double>());
    fs::remove(out);
}

TEST_CASE("alice artifact and angle flags") {
    const auto out = tmp_file("alice.json");
    REQUIRE(cli({"alice", "--n", "3", "--theta-deg", "20", "--out", out.c_str()}) == 0);
    const json j = load(out);
    CHECK(std::abs(j["alice_bias"].get<double>() - 0.9148847327947157) <= 1e-9);
    REQUIRE(cli({"alice", "--n", "3", "--theta-rad", "0.3490658503988659", "--out", out.c_str()}) ==
            0);
    const json j2 = load(out);
    CHECK(std::abs(j2["alice_bias"].get<double>() - j["alice_bias"].get<double>()) <= 1e-12);
    fs::remove(out);
}

TEST_CASE("bob artifact carries the certified pair") {
    const auto out = tmp_file("bob.json");
    REQUIRE(cli({"bob", "--n", "2", "--theta-deg", "26.92", "--out", out.c_str()}) == 0);
    const json j = load(out);
    CHECK(std::abs(j["bob_dual"].get<double>() - 0.8975349740909832) <= 1e-6);
    CHECK(std::abs(j["bob_primal"].get<double>() - j["bob_dual"].get<double>()) <= 1e-6);
    CHECK(j["gap_closed"] == true);
    CHECK(std::abs(j["xi"].get<double>() + 0.2098) <= 5e-4);
    CHECK(std::abs(j["chi"].get<double>() - 0.6197) <= 5e-4);
    CHECK(std::abs(j["f_star"].get<double>() - 0.1177) <= 1e-3);
    CHECK(j["generator"].size() == 4);
    fs::remove(out);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(cli({}) == 2);                                      // no subcommand
    CHECK(cli({"frobnicate"}) == 2);                          // unknown subcommand
    CHECK(cli({"bob", "--n", "2"}) == 2);                     // missing angle
    CHECK(cli({"alice", "--n", "2", "--theta-deg", "20", "--theta-rad", "0.3"}) == 2);
    CHECK(cli({"alice", "--n", "0", "--theta-deg", "20"}) == 2);
    CHECK(cli({"alice", "--n", "2", "--theta-deg", "95"}) == 2);
    CHECK(cli({"simulate", "--n", "1", "--theta-deg", "30"}) == 2);  // missing seed
    CHECK(cli({"sweep", "--n", "1"}) == 2);                   // missing grid
    CHECK(cli({"sweep", "--n", "1", "--grid", "abc"}) == 2);
    CHECK(cli({"sweep", "--n", "1", "--grid", "50:10:5"}) == 2);
    CHECK(cli({"alice", "--n", "2", "--theta-deg", "20", "--nonsense"}) == 2);
    CHECK(cli({"simulate", "--n", "1", "--theta-deg", "30", "--seed", "1", "--p-loss", "1.0"}) == 2);
    CHECK(cli({"simulate", "--n", "1", "--theta-deg", "30", "--seed", "1", "--cheat", "bob-file"}) ==
          2);  // missing strategy file
}

TEST_CASE("simulate artifact and determinism") {
    const auto out1 = tmp_file("sim1.json"), out2 = tmp_file("sim2.json");
    const std::vector<const char*> base{"simulate", "--n",     "2",    "--theta-deg", "40",
                                        "--p-loss",  "0.5",    "--trials", "5000",
                                        "--seed",    "42"};
    auto run = [&](const fs::path& p) {
        auto args = base;
        args.push_back("--out");
        args.push_back(p.c_str());
        return cli(args);
    };
    REQUIRE(run(out1) == 0);
    REQUIRE(run(out2) == 0);
    CHECK(slurp(out1) == slurp(out2));  // byte-identical artifacts
    const json j = load(out1);
    CHECK(j["n"] == 2);
    CHECK(j["trials"] == 5000);
    CHECK(j["completed"] == 5000);
    CHECK(j["aborted"] == 0);
    const double frac = j["outcome0_frac"].get<double>();
    CHECK(frac > 0.45);
    CHECK(frac < 0.55);
    const double mr = j["mean_restarts"].get<double>();
    CHECK(mr > 2.5);
    CHECK(mr < 3.5);
    fs::remove(out1);
    fs::remove(out2);
}

TEST_CASE("simulate with cheating parties") {
    const auto out = tmp_file("sim_cheat.json");
    REQUIRE(cli({"simulate", "--n", "1", "--theta-deg", "36.87", "--trials", "20000", "--seed",
                 "7", "--cheat", "alice-optimal", "--out", out.c_str()}) == 0);
    json j = load(out);
    CHECK(std::abs(j["expected_rate"].get<double>() - 0.9) <= 1e-4);
    CHECK(j["deviation_sigmas"].get<double>() <= 4.0);

    REQUIRE(cli({"simulate", "--n", "1", "--theta-deg", "36.87", "--trials", "20000", "--seed",
                 "8", "--cheat", "bob-optimal", "--out", out.c_str()}) == 0);
    j = load(out);
    CHECK(std::abs(j["expected_rate"].get<double>() - 0.9) <= 1e-4);
    CHECK(j["deviation_sigmas"].get<double>() <= 4.0);
    fs::remove(out);
}

TEST_CASE("strategy files: round trip, parse errors, constraint violations") {
    const auto strat = tmp_file("strat.json");
    const auto out = tmp_file("sim_file.json");

    // a feasible flat strategy: both class sums are trivially complete
    std::ofstream(strat) << R"({"n": 1, "generator": [[0.5, 0.0], [0.0, 0.5]]})";
    REQUIRE(cli({"simulate", "--n", "1", "--theta-deg", "30", "--trials", "40000", "--seed", "9",
                 "--cheat", "bob-file", "--cheat-file", strat.c_str(), "--out", out.c_str()}) == 0);
    json j = load(out);
    // announcing blind: survives basis mismatches plus half the matched cases
    CHECK(std::abs(j["expected_rate"].get<double>() - 0.75) <= 1e-12);
    CHECK(j["deviation_sigmas"].get<double>() <= 5.0);

    // the emitted receiver artifact feeds back in as a strategy file
    const auto bobout = tmp_file("bob_roundtrip.json");
    REQUIRE(cli({"bob", "--n", "1", "--theta-deg", "30", "--out", bobout.c_str()}) == 0);
    REQUIRE(cli({"simulate", "--n", "1", "--theta-deg", "30", "--trials", "20000", "--seed", "10",
                 "--cheat", "bob-file", "--cheat-file", bobout.c_str(), "--out", out.c_str()}) == 0);
    j = load(out);
    CHECK(std::abs(j["expected_rate"].get<double>() - (3 + 0.5) / 4.0) <= 1e-6);

    // missing file
    CHECK(cli({"simulate", "--n", "1", "--theta-deg", "30", "--seed", "1", "--cheat", "bob-file",
               "--cheat-file", "/nonexistent/file.json"}) == 2);
    // malformed JSON
    std::ofstream(strat) << "{not json";
    CHECK(cli({"simulate", "--n", "1", "--theta-deg", "30", "--seed", "1", "--cheat", "bob-file",
               "--cheat-file", strat.c_str()}) == 2);
    // well-formed but infeasible: certification failure, not usage
    std::ofstream(strat) << R"({"n": 1, "generator": [[0.9, 0.0], [0.0, 0.1]]})";
    CHECK(cli({"simulate", "--n", "1", "--theta-deg", "30", "--seed", "1", "--cheat", "bob-file",
               "--cheat-file", strat.c_str()}) == 3);
    fs::remove(strat);
    fs::remove(out);
    fs::remove(bobout);
}

TEST_CASE("sweep artifacts in both formats") {
    const auto out = tmp_file("sweep.csv");
    REQUIRE(cli({"sweep", "--n", "1", "--grid", "20:60:5", "--format", "csv", "--out",
                 out.c_str()}) == 0);
    std::istringstream is(slurp(out));
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "theta_rad,theta_deg,alice,bob_dual,bob_primal,gap");
    int rows = 0;
    while (std::getline(is, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 5);

    const auto jout = tmp_file("sweep.json");
    REQUIRE(cli({"sweep", "--n", "1", "--grid", "20:60:5", "--out", jout.c_str()}) == 0);
    const json j = load(jout);
    REQUIRE(j["rows"].size() == 5);
    CHECK(std::abs(j["rows"][0]["theta_deg"].get<double>() - 20.0) <= 1e-9);
    CHECK(std::abs(j["rows"][4]["theta_deg"].get<double>() - 60.0) <= 1e-9);
    fs::remove(out);
    fs::remove(jout);
}
