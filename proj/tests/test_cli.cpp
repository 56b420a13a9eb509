#include "paclab/io/json_report.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

/// Run the installed binary with the given arguments, capturing stdout.
/// Stderr is folded in so usage errors stay visible in failure messages.
RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("PACLAB_BIN");
    REQUIRE(bin != nullptr);
    std::string cmd = std::string(bin) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

paclab::Json parse_out(const RunResult& r) { return paclab::Json::parse(r.out); }

}  // namespace

TEST_CASE("attractor reports the merged cycle set with exact parameters") {
    RunResult r = run_cli("attractor --d 1,1,1 --seeds 0");
    REQUIRE(r.exit_code == 0);
    paclab::Json j = parse_out(r);
    REQUIRE(j["verdict"] == "finite");
    REQUIRE(j["attractor_estimate"] == paclab::Json::array({"2/9", "5/9", "8/9"}));
    REQUIRE(j["parameters"]["map"]["breakpoints"][1] == "1/6");
    REQUIRE(j["per_seed"][0]["preperiod"] == 1);
    REQUIRE(j["per_seed"][0]["simplex_cycle"][0] == paclab::Json::array({"0", "1/3", "2/3"}));
}

TEST_CASE("attractor handles stream breakpoints and explicit maps") {
    RunResult stream = run_cli("attractor --x c-1/4,c,c+1/2 --seeds 0.11,0.8");
    REQUIRE(stream.exit_code == 0);
    paclab::Json js = parse_out(stream);
    REQUIRE(js["attractor_estimate"] ==
            paclab::Json::array({"1/15", "4/15", "7/15", "13/15"}));

    RunResult mapped = run_cli("attractor --map beta=2,sign=+,bp=0:1/2:1,alpha=1:2 --seeds 1/3");
    REQUIRE(mapped.exit_code == 0);
    REQUIRE(parse_out(mapped)["attractor_estimate"] == paclab::Json::array({"0"}));
}

TEST_CASE("attractor exits with the usage or inconclusive codes") {
    REQUIRE(run_cli("attractor --d 1,1,1").exit_code == 2);
    REQUIRE(run_cli("attractor --d 1,1,1 --x 1/6,1/2,5/6 --seeds 0").exit_code == 2);
    REQUIRE(run_cli("attractor --d 1,1,1 --seeds 3/2").exit_code == 2);
    REQUIRE(run_cli("attractor --d 1,1,1 --seeds 0 --max-steps 2").exit_code == 4);
}

TEST_CASE("quasipartition reports the verified partition and attractor") {
    RunResult r = run_cli("quasipartition --d 1,1,1");
    REQUIRE(r.exit_code == 0);
    paclab::Json j = parse_out(r);
    REQUIRE(j["tau"] == paclab::Json::array({3, 6, 5, 2, 1, 4}));
    REQUIRE(j["q"] == "3");
    REQUIRE(j["partition_verified"] == true);
    REQUIRE(j["confirmed_cycles"].size() == 2);
    REQUIRE(j["verdict"] == "finite");

    RunResult shallow = run_cli("quasipartition --d 5/7,9/11,13/3 --depth 3");
    REQUIRE(shallow.exit_code == 4);
    REQUIRE(parse_out(shallow)["verdict"] == "inconclusive");
}

TEST_CASE("simulate writes a csv and an exact summary") {
    std::string csv = "paclab_cli_traj.csv";
    std::string rep = "paclab_cli_sim.json";
    RunResult r = run_cli("simulate --d 1,1,1 --v0 0,1/3,2/3 --events 3 --out " + csv +
                          " --report " + rep);
    REQUIRE(r.exit_code == 0);

    std::ifstream in(csv);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    REQUIRE(header == "t,v1,v2,v3,served_tank");

    std::ifstream jin(rep);
    paclab::Json j = paclab::Json::parse(jin);
    REQUIRE(j["cycle_estimate"]["found"] == true);
    REQUIRE(j["cycle_estimate"]["exact"] == true);
    REQUIRE(j["cycle_estimate"]["period"] == 3);
    REQUIRE(j["final_state"] == paclab::Json::array({"0", "1/3", "2/3"}));
    std::remove(csv.c_str());
    std::remove(rep.c_str());

    SECTION("an interior start needs a served tank") {
        REQUIRE(run_cli("simulate --d 1,1,1 --v0 1/4,1/4,1/2 --events 2").exit_code == 2);
        REQUIRE(run_cli("simulate --d 1,1,1 --v0 1/4,1/4,1/2 --events 2 --served 2").exit_code ==
                0);
    }
}

TEST_CASE("richness censuses rationals and streams") {
    RunResult rational = run_cli("richness --number 1/3 --base 4 --k 2");
    REQUIRE(rational.exit_code == 0);
    paclab::Json j = parse_out(rational);
    REQUIRE(j["expansion"]["period"] == "1");
    REQUIRE(j["census"]["count"] == 1);
    REQUIRE(j["census"]["complete"] == false);

    RunResult stream = run_cli("richness --number 'champernowne(4)' --k 3 --prefix 10000");
    REQUIRE(stream.exit_code == 0);
    paclab::Json js = parse_out(stream);
    REQUIRE(js["census"]["count"] == 64);
    REQUIRE(js["census"]["complete"] == true);

    SECTION("a base flag conflicting with the stream is a usage error") {
        REQUIRE(run_cli("richness --number 'champernowne(4)' --k 2 --base 10").exit_code == 2);
    }
}

TEST_CASE("verify prints one status line per suite") {
    RunResult r = run_cli("verify roundtrip");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.find("roundtrip:") != std::string::npos);
    REQUIRE(r.out.find("[PASS]") != std::string::npos);
    REQUIRE(run_cli("verify nonsense").exit_code == 2);
}

TEST_CASE("config files fill unset flags and explicit flags win") {
    std::string cfg = "paclab_cli_cfg.json";
    {
        std::ofstream out(cfg);
        out << R"({"d": "1,1,1", "seeds": "0", "max-steps": 5000})" << "\n";
    }
    RunResult r = run_cli("attractor --config " + cfg + " --seeds 1/9");
    REQUIRE(r.exit_code == 0);
    paclab::Json j = parse_out(r);
    REQUIRE(j["parameters"]["max_steps"] == 5000);
    REQUIRE(j["parameters"]["seeds"] == paclab::Json::array({"1/9"}));
    REQUIRE(j["attractor_estimate"] == paclab::Json::array({"1/9", "4/9", "7/9"}));
    std::remove(cfg.c_str());

    SECTION("a config key may fill a positional argument") {
        std::string vcfg = "paclab_verify_cfg.json";
        {
            std::ofstream out(vcfg);
            out << R"({"suite": "roundtrip"})" << "\n";
        }
        RunResult merged = run_cli("verify --config " + vcfg);
        REQUIRE(merged.exit_code == 0);
        REQUIRE(merged.out.find("roundtrip:") != std::string::npos);
        REQUIRE(merged.out.find("lemma-square:") == std::string::npos);

        RunResult explicit_wins = run_cli("verify gap-bound --config " + vcfg);
        REQUIRE(explicit_wins.exit_code == 0);
        REQUIRE(explicit_wins.out.find("gap-bound:") != std::string::npos);
        REQUIRE(explicit_wins.out.find("roundtrip:") == std::string::npos);
        std::remove(vcfg.c_str());
    }
}
