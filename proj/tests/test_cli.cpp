#include <doctest.h>

#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "undom/cli.hpp"
#include "undom/profiles.hpp"

using namespace undom;
using nlohmann::json;

namespace {

struct run_result {
    int code;
    std::string out;
    std::string err;
};

run_result run(std::vector<std::string> args) {
    args.insert(args.begin(), "undom");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string temp_profile(const std::string& name, const election& e) {
    const auto path = (std::filesystem::temp_directory_path() / ("undom_cli_" + name + ".txt")).string();
    write_election_file(path, e);
    return path;
}

const std::string cyclic6 = temp_profile("cyclic6", gen_cyclic(6));
const std::string minimal = temp_profile("minimal", gen_minimal_dim3());
const std::string product = temp_profile("product", gen_cycle_product(3, 5));
const std::string impartial = temp_profile("ic", gen_impartial_culture(25, 9, 4));

} // namespace

TEST_CASE("check") {
    const auto ok = run({"check", "--profile", cyclic6, "--committee", "3,6", "--alpha", "1/2"});
    CHECK(ok.code == 0);
    const auto j = json::parse(ok.out);
    CHECK(j["schema_version"] == "1");
    CHECK(j["command"] == "check");
    CHECK(j["result"]["undominated"] == true);
    CHECK(j["result"]["certificate"]["count"] == 2);
    CHECK(j["result"]["certificate"]["fraction"]["num"] == 1);
    CHECK(j["result"]["certificate"]["fraction"]["den"] == 3);

    const auto bad = run({"check", "--profile", cyclic6, "--committee", "1", "--alpha", "1/2"});
    CHECK(bad.code == 1);
    CHECK(json::parse(bad.out)["result"]["undominated"] == false);
}

TEST_CASE("dim") {
    const auto r = run({"dim", "--profile", minimal});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["result"]["dimension"] == 3);
    CHECK(run({"dim", "--profile", product, "--budget", "20"}).code == 3);
}

TEST_CASE("bounds") {
    const auto csv = run({"bounds", "--k-max", "8", "--format", "csv"});
    CHECK(csv.code == 0);
    const auto row = csv.out.find("\n6,");
    REQUIRE(row != std::string::npos);
    std::istringstream line(csv.out.substr(row + 1));
    std::string k, lower, thm1, thm4;
    std::getline(line, k, ',');
    std::getline(line, lower, ',');
    std::getline(line, thm1, ',');
    std::getline(line, thm4, ',');
    CHECK(std::abs(std::stod(thm4) - 0.477066) < 1e-6);

    const auto j = json::parse(run({"bounds", "--k-max", "400", "--format", "json"}).out);
    CHECK(j["result"]["first_dp_improvement"] == 300);
    CHECK(j["result"]["rows"].size() == 400);

    const auto fig = run({"bounds", "--k-max", "3", "--figure"});
    CHECK(fig.out.rfind("k,thm4,lower,stable16\n", 0) == 0);
}

TEST_CASE("search output feeds back into check") {
    for (const std::string strategy : {"brute", "greedy", "lottery", "recursive"}) {
        const auto r = run({"search", "--profile", impartial, "--k", "3", "--alpha", "1/2", "--strategy", strategy,
                            "--seed", "7"});
        REQUIRE(r.code == 0);
        const auto j = json::parse(r.out);
        REQUIRE(j["result"]["found"] == true);
        std::string members;
        for (const auto& a : j["result"]["committee"]) members += (members.empty() ? "" : ",") + a.dump();
        CHECK(run({"check", "--profile", impartial, "--committee", members, "--alpha", "1/2"}).code == 0);
        // identical argv, identical bytes
        CHECK(run({"search", "--profile", impartial, "--k", "3", "--alpha", "1/2", "--strategy", strategy, "--seed",
                   "7"})
                  .out == r.out);
    }
    const auto none = run({"search", "--profile", product, "--k", "2", "--alpha", "8/15", "--strategy", "brute"});
    CHECK(none.code == 1);
    CHECK(json::parse(none.out)["result"]["committee"].is_null());
}

TEST_CASE("lottery") {
    const auto r = run({"lottery", "--profile", cyclic6, "--k", "2", "--g", "kth-root", "--alpha", "1/2"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["result"]["y"].size() == 6);
    CHECK(j["result"]["achieved_value"].get<double>() <= j["result"]["target_value"].get<double>() + 1e-4);
    CHECK(run({"lottery", "--profile", cyclic6, "--k", "2", "--g", "relu:2"}).code == 2);
}

TEST_CASE("verify") {
    CHECK(json::parse(run({"verify", "--suite", "thm6", "--k", "2", "--t", "5"}).out)["result"]["passed"] == true);
    CHECK(json::parse(run({"verify", "--suite", "cor1", "--m", "4", "--k", "2"}).out)["result"]["cases"][0]["quantity"]
                     ["den"] == 6);
    const auto claim = run({"verify", "--suite", "claim-high", "--profile", cyclic6, "--delta",
                            "1,4=9/20 2,5=7/20 3,6=1/5", "--alpha", "1/2"});
    CHECK(claim.code == 0);
    CHECK(json::parse(claim.out)["result"]["cases"][0]["bound"]["den"] == 8);
}

TEST_CASE("gen") {
    const auto path = (std::filesystem::temp_directory_path() / "undom_cli_gen.txt").string();
    const auto r = run({"gen", "--family", "cycle-product", "--s", "3", "--t", "5", "--out", path});
    CHECK(r.code == 0);
    CHECK(read_election_file(path) == gen_cycle_product(3, 5));
    const auto text = run({"gen", "--family", "cyclic", "--m", "6"});
    CHECK(text.out == serialize_election(gen_cyclic(6)));
    CHECK(run({"gen", "--family", "impartial", "--n", "5", "--m", "4", "--seed", "2"}).out ==
          serialize_election(gen_impartial_culture(5, 4, 2)));
}

TEST_CASE("input errors exit with 2") {
    const auto unknown =
        run({"check", "--profile", cyclic6, "--committee", "3,6", "--alpha", "1/2", "--bogus"});
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("--bogus") != std::string::npos);
    CHECK(unknown.err.find("Usage") != std::string::npos);
    CHECK(run({}).code == 2);
    CHECK(run({"check", "--profile", cyclic6, "--committee", "3,6", "--alpha", "0.5"}).code == 2);
    CHECK(run({"check", "--profile", cyclic6, "--committee", "3,9", "--alpha", "1/2"}).code == 2);
    CHECK(run({"check", "--profile", "/nonexistent/profile.txt", "--committee", "1", "--alpha", "1/2"}).code == 2);
    CHECK(run({"search", "--profile", cyclic6, "--k", "2", "--alpha", "1/2", "--strategy", "anneal"}).code == 2);
    CHECK(run({"search", "--profile", cyclic6, "--k", "4", "--alpha", "1/2", "--strategy", "recursive", "--beta",
               "0.5"})
              .code == 2);
}

TEST_CASE("help goes to stdout") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("search") != std::string::npos);
}
