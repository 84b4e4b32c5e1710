#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string out_path = "cli_test_stdout.txt";
    const std::string cmd =
        std::string(FRACTOOL_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    return RunResult{WEXITSTATUS(status), ss.str()};
}

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> lines;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

}  // namespace

TEST_CASE("deriv: GL column tracks the closed form") {
    const RunResult r = run_cli("deriv --alpha 0.5 --power 1 --grid-n 512");
    REQUIRE(r.exit_code == 0);
    const auto lines = split_lines(r.out);
    CHECK(lines[0] == "x,gl_value,oracle_value,closed_form");
    int checked = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split_csv(lines[i]);
        REQUIRE(cells.size() == 4);
        const double x = std::stod(cells[0]);
        if (x < 0.25) continue;
        const double gl = std::stod(cells[1]);
        const double closed = std::stod(cells[3]);
        CHECK(std::abs(gl - closed) / closed < 1e-2);
        ++checked;
    }
    CHECK(checked > 300);
}

TEST_CASE("deriv: classical order gives 2x for x^2") {
    const RunResult r = run_cli("deriv --alpha 1 --power 2 --grid-n 128");
    REQUIRE(r.exit_code == 0);
    const auto lines = split_lines(r.out);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split_csv(lines[i]);
        const double x = std::stod(cells[0]);
        CHECK(std::abs(std::stod(cells[1]) - 2.0 * x) < 1e-8);
    }
}

TEST_CASE("deriv: order out of range exits 2") {
    const RunResult r = run_cli("deriv --alpha 1.5 --power 1");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("not in range") != std::string::npos);
}

TEST_CASE("transform subcommand") {
    const RunResult r3 = run_cli("transform --family 3 --epsilon 1 --seed \"exp(X+T)\"");
    REQUIRE(r3.exit_code == 0);
    CHECK(r3.out.find("2.71828183*exp(X+T)") != std::string::npos);
    CHECK(r3.out.find("formal_residual_max_coeff=0") != std::string::npos);

    const RunResult r1 = run_cli("transform --family 1 --epsilon 0 --seed \"X^2+2*T\"");
    REQUIRE(r1.exit_code == 0);
    CHECK(r1.out.find("2*T + X^2") != std::string::npos);
    CHECK(r1.out.find("formal_residual_max_coeff=0") != std::string::npos);

    const RunResult r5 = run_cli("transform --family 5 --epsilon 0.3 --seed \"1\"");
    REQUIRE(r5.exit_code == 0);
    CHECK(r5.out.find("exp(-0.3*X+0.09*T)") != std::string::npos);

    const RunResult r6 = run_cli("transform --family 6 --epsilon 0.3 --seed \"1\"");
    REQUIRE(r6.exit_code == 0);
    CHECK(r6.out.find("numeric-only") != std::string::npos);

    const RunResult bad = run_cli("transform --family 2 --seed \"exp(X^2)\"");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("bracket subcommand") {
    const RunResult r = run_cli("bracket");
    REQUIRE(r.exit_code == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 7);
    const auto row1 = split_csv(lines[1]);
    CHECK(row1[4] == "v1");  // [v1, v4]
    const auto row2 = split_csv(lines[2]);
    CHECK(row2[6] == "-2*v3+4*v4");  // [v2, v6]
    for (int i = 1; i <= 6; ++i) CHECK(split_csv(lines[i])[i] == "0");  // diagonal
}

TEST_CASE("invariant subcommand") {
    const RunResult r = run_cli("invariant --a-coeff 1 --b-coeff 2");
    REQUIRE(r.exit_code == 0);
    const auto lines = split_lines(r.out);
    CHECK(lines[0] == "s,X,T,u,invariant");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const double inv = std::stod(split_csv(lines[i])[4]);
        CHECK(std::abs(inv - 1.0) < 1e-8);
    }
    CHECK(run_cli("invariant --a-coeff 0 --b-coeff 2").exit_code == 2);
}

TEST_CASE("byte-stable CSV output across runs") {
    const RunResult a = run_cli("deriv --alpha 0.5 --power 1 --grid-n 64");
    const RunResult b = run_cli("deriv --alpha 0.5 --power 1 --grid-n 64");
    CHECK(a.out == b.out);
}

TEST_CASE("verify subcommand exit codes") {
    const RunResult cls = run_cli("verify --suite classical --out cli_test_classical.json");
    CHECK(cls.exit_code == 0);

    const RunResult eig = run_cli(
        "verify --suite eigen --alpha 0.5 --beta 0.5 --grids 64 128 --out cli_test_eigen.json");
    CHECK(eig.exit_code == 0);

    const RunResult gap = run_cli(
        "verify --suite gap --alpha 0.5 --beta 0.5 --epsilon 0.5 --out cli_test_gap.json");
    CHECK(gap.exit_code == 0);
    std::ifstream in("cli_test_gap.json");
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("\"mode\": \"numeric\"") != std::string::npos);

    CHECK(run_cli("verify --suite bogus").exit_code == 2);
}

TEST_CASE("config file provides defaults, flags override") {
    {
        std::ofstream cfg("cli_test_cfg.json");
        cfg << R"cfg({"family": 3, "epsilon": 1.0, "seed": "exp(X+T)"})cfg";
    }
    const RunResult r = run_cli("--config cli_test_cfg.json transform");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("2.71828183*exp(X+T)") != std::string::npos);

    const RunResult over = run_cli("--config cli_test_cfg.json transform --epsilon 0");
    REQUIRE(over.exit_code == 0);
    CHECK(over.out.find("exp(X+T)\n") != std::string::npos);
    CHECK(over.out.find("2.71828183") == std::string::npos);
}
