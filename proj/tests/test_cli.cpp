#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "wrl/randomness.hpp"

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string& args, bool merge_stderr = false) {
    const char* bin = std::getenv("WRL_CLI");
    REQUIRE(bin != nullptr);
    const std::string cmd =
        std::string(bin) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), p)) > 0) out.append(buf, got);
    const int rc = pclose(p);
    return CliResult{WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, out};
}

std::string data_path(const std::string& name) {
    const char* dir = std::getenv("WRL_DATA");
    REQUIRE(dir != nullptr);
    return std::string(dir) + "/" + name;
}

// value at a 0-based column of the first non-comment CSV data row
double csv_cell(const std::string& out, std::size_t col) {
    std::istringstream ss(out);
    std::string line;
    bool header_seen = false;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::istringstream ls(line);
        std::string cell;
        for (std::size_t c = 0; c <= col; ++c) std::getline(ls, cell, ',');
        return std::stod(cell);
    }
    FAIL("no data row in output");
    return 0.0;
}

}  // namespace

TEST_CASE("version flag") {
    const auto r = run_cli("--version");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "wrl 0.1.0\n");
}

TEST_CASE("capacity endpoints through the CLI") {
    const std::string ch = data_path("bsc_01_03.channel");

    const auto zero = run_cli("capacity --channel " + ch + " --budget 0 --grid 200");
    CHECK(zero.exit_code == 0);
    CHECK(csv_cell(zero.out, 0) == 0.0);

    const auto inf = run_cli("capacity --channel " + ch + " --budget inf --grid 200");
    CHECK(inf.exit_code == 0);
    CHECK(std::fabs(csv_cell(inf.out, 0) - 0.41229) < 2e-3);
    CHECK(csv_cell(inf.out, 3) == 0.0);  // constraint inactive

    const auto mid = run_cli("capacity --channel " + ch + " --budget 0.05 --grid 200");
    CHECK(mid.exit_code == 0);
    CHECK(csv_cell(mid.out, 0) > 0.0);
    CHECK(csv_cell(mid.out, 0) < 0.41229);
    CHECK(csv_cell(mid.out, 3) == 1.0);
}

TEST_CASE("malformed inputs exit with code 2 and name the row") {
    const std::string bad = "/tmp/wrl_bad_channel.txt";
    {
        std::ofstream f(bad);
        f << "nx 2\nny 2\nnz 2\nkernel\n0.5 0.5 0.2\n0 0 0 1\n";
    }
    const auto r = run_cli("capacity --channel " + bad + " --budget inf", true);
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("kernel row 0") != std::string::npos);

    const auto missing = run_cli("capacity --channel /nonexistent.ch", true);
    CHECK(missing.exit_code == 2);

    const auto noargs = run_cli("capacity", true);
    CHECK(noargs.exit_code == 2);

    const auto badgrid =
        run_cli("curve --channel " + data_path("bsc_01_03.channel") + " --grid 1", true);
    CHECK(badgrid.exit_code == 2);

    const auto negbudget = run_cli(
        "capacity --channel " + data_path("bsc_01_03.channel") + " --budget -1", true);
    CHECK(negbudget.exit_code == 2);
}

TEST_CASE("curve output marks envelope vertices") {
    const auto r =
        run_cli("curve --channel " + data_path("bsc_01_03.channel") + " --grid 100");
    CHECK(r.exit_code == 0);

    std::istringstream ss(r.out);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "cost_bits,gain_bits,on_envelope");
    int rows = 0, on_env = 0;
    while (std::getline(ss, line)) {
        ++rows;
        if (line.size() >= 2 && line.substr(line.size() - 2) == ",1") ++on_env;
    }
    CHECK(rows == 101);
    CHECK(on_env >= 2);
    CHECK(on_env < rows);

    const auto z = run_cli("curve --channel " + data_path("z_independent.channel") +
                           " --grid 50");
    std::istringstream zs(z.out);
    std::getline(zs, line);
    while (std::getline(zs, line)) {
        CHECK(std::stod(line.substr(0, line.find(','))) <= 1e-12);
    }
}

TEST_CASE("simulate emits per-codebook rows plus a summary") {
    const std::string cmd = "simulate --channel " + data_path("bsc_01_03.channel") +
                            " --source uniform --n 6 --rates 0,0.1667,0.3 "
                            "--codebooks 4 --seed 11";
    const auto r = run_cli(cmd);
    CHECK(r.exit_code == 0);
    std::istringstream ss(r.out);
    std::string line;
    std::getline(ss, line);
    CHECK(line ==
          "n,R0,R,Rr,renyi2_rate,entropy_rate,seed,codebooks,mean_vd,ci_halfwidth,"
          "mean_leakage_bits,pe,pe_ci");
    int rows = 0;
    while (std::getline(ss, line)) ++rows;
    CHECK(rows == 5);
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
    const std::string sim = "simulate --channel " + data_path("bsc_01_03.channel") +
                            " --source uniform --n 8 --rates 0,0.125,0.3 "
                            "--codebooks 6 --seed 42";
    const auto a = run_cli(sim + " --threads 1");
    const auto b = run_cli(sim + " --threads 1");
    const auto c = run_cli(sim + " --threads 8");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);

    const std::string cap = "capacity --channel " + data_path("bsc_01_03.channel") +
                            " --budget 0.07 --grid 150";
    CHECK(run_cli(cap + " --threads 1").out == run_cli(cap + " --threads 8").out);
}

TEST_CASE("biased shorthand source flows through simulate") {
    const auto r = run_cli("simulate --channel " + data_path("bsc_01_03.channel") +
                           " --source " + data_path("biased_example.source") +
                           " --n 6 --rates 0,0.1667,0.19 --codebooks 2 --seed 3");
    CHECK(r.exit_code == 0);
    // entropy rate above, renyi2 rate below the uniform-input I(X;Z) = 0.1187
    CHECK(csv_cell(r.out, 4) < 0.1187);
    CHECK(csv_cell(r.out, 5) > 0.1187);
}

TEST_CASE("uniformize summary and export") {
    const auto r = run_cli("uniformize --source " + data_path("fair_coin.source") +
                           " --n 4 --rr 0.5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("n=4 K=4 distance=0\n", 0) == 0);

    const std::string exp = "/tmp/wrl_extractor_export.txt";
    std::remove(exp.c_str());
    const auto e = run_cli("uniformize --source " + data_path("biased_1189.source") +
                           " --n 6 --rr 0.25 --export " + exp);
    CHECK(e.exit_code == 0);
    std::ifstream f(exp);
    REQUIRE(f.good());
    const auto ex = wrl::read_extractor(f, 2);
    CHECK(ex.n() == 6);
    CHECK(ex.num_bins() == 4);  // 2^ceil(6 * 0.25)
    const wrl::RandomnessSource src{wrl::DiscreteDistribution({0.11, 0.89})};
    const auto rebuilt = wrl::build_extractor(src, 6, 0.25);
    CHECK(ex.assignment() == rebuilt.assignment());
    CHECK(ex.achieved_distance() == rebuilt.achieved_distance());

    // rate at or above the entropy warns but proceeds
    const auto warn = run_cli("uniformize --source " + data_path("biased_1189.source") +
                                  " --n 4 --rr 0.75",
                              true);
    CHECK(warn.exit_code == 0);
    CHECK(warn.out.find("warning") != std::string::npos);
}

TEST_CASE("jamming bound and simulation rows") {
    const auto r = run_cli("jamming --sigma2 1 --hr 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("1.000000000,1.000000000,3.000000000") != std::string::npos);
    CHECK(r.out.find("# note:") != std::string::npos);

    const auto zero = run_cli("jamming --sigma2 1 --hr 0");
    CHECK(csv_cell(zero.out, 2) == 0.0);

    const auto sim = run_cli("jamming --sigma2 1 --hr 1 --simulate 8,1.25,20000,9");
    CHECK(sim.exit_code == 0);
    CHECK(sim.out.find("sigma2,rho,n,code_rate,samples,seed,ks_stat") !=
          std::string::npos);
    const auto sim2 = run_cli("jamming --sigma2 1 --hr 1 --simulate 8,1.25,20000,9");
    CHECK(sim.out == sim2.out);
}

TEST_CASE("enumeration guards exit with code 3") {
    const auto r = run_cli("simulate --channel " + data_path("bsc_01_03.channel") +
                               " --source uniform --n 24 --rates 0,0.05,0.1 "
                               "--codebooks 1 --seed 1",
                           true);
    CHECK(r.exit_code == 3);
    CHECK(r.out.find("z_enumeration") != std::string::npos);
}
