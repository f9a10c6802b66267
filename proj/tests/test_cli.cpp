#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

const char* cli_path() { return std::getenv("SPREADLAB_CLI_BIN"); }

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + cli_path() + "\" " + args + " 2>/dev/null";
    CliResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        result.output.append(buf.data(), got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string fixture_path(const std::string& name) {
    return std::string(SPREADLAB_FIXTURE_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

#define REQUIRE_CLI_AVAILABLE() \
    do { \
        if (cli_path() == nullptr) SKIP("SPREADLAB_CLI_BIN not set"); \
    } while (0)

TEST_CASE("construct matches the checked-in fixtures byte for byte") {
    REQUIRE_CLI_AVAILABLE();
    const CliResult a = run_cli("construct --n 5 --which A");
    CHECK(a.exit_code == 0);
    CHECK(a.output == read_file(fixture_path("A5.txt")));
    const CliResult u = run_cli("construct --n 5 --which U");
    CHECK(u.exit_code == 0);
    CHECK(u.output == read_file(fixture_path("U5.txt")));
}

TEST_CASE("usage errors exit with code 1") {
    REQUIRE_CLI_AVAILABLE();
    CHECK(run_cli("construct --n 1 --which A").exit_code == 1);
    CHECK(run_cli("construct").exit_code == 1);
    CHECK(run_cli("bounds --file /nonexistent/matrix.txt").exit_code == 1);
    CHECK(run_cli("no_such_command").exit_code == 1);
    CHECK(run_cli("sweep 8..2").exit_code == 1);

    const auto bad = temp_file("spreadlab_bad_matrix.txt");
    std::ofstream(bad) << "2\n1 2\n3 oops\n";
    CHECK(run_cli("bounds --file " + bad.string()).exit_code == 1);
    std::filesystem::remove(bad);
}

TEST_CASE("construct output feeds back into spectrum and bounds") {
    REQUIRE_CLI_AVAILABLE();
    const auto path = temp_file("spreadlab_roundtrip_A5.txt");
    CHECK(run_cli("construct --n 5 --which A --out " + path.string()).exit_code == 0);

    const CliResult spec = run_cli("spectrum --file " + path.string());
    CHECK(spec.exit_code == 0);
    const auto spec_json = nlohmann::json::parse(spec.output);
    CHECK(spec_json.at("format_version") == 1);
    CHECK(spec_json.at("n") == 5);
    CHECK(spec_json.at("eigenvalues").size() == 5);
    // r(A) = 8 and the rest of the spectrum sits at 3, so the spread is 5.
    CHECK(std::abs(spec_json.at("spread").get<double>() - 5.0) < 1e-3);

    const CliResult bounds = run_cli("bounds --file " + path.string());
    CHECK(bounds.exit_code == 0);
    const auto bounds_json = nlohmann::json::parse(bounds.output);
    CHECK(bounds_json.at("n") == 5);
    CHECK(bounds_json.at("normalized") == true);
    CHECK(bounds_json.at("violations").empty());
    std::filesystem::remove(path);
}

TEST_CASE("bound reports on the fixtures") {
    REQUIRE_CLI_AVAILABLE();
    const CliResult diag = run_cli("bounds --file " + fixture_path("diag01.txt"));
    CHECK(diag.exit_code == 0);
    const auto j = nlohmann::json::parse(diag.output);
    CHECK(j.at("spread").get<double>() == Catch::Approx(1.0).margin(1e-9));
    CHECK(j.at("violations").empty());

    const CliResult witness = run_cli("bounds --file " + fixture_path("witness3.txt"));
    CHECK(witness.exit_code == 0);
    const auto w = nlohmann::json::parse(witness.output);
    CHECK(w.at("spread").get<double>() == Catch::Approx(0.75).margin(1e-9));
}

TEST_CASE("exit code 2 is reserved for findings and is reachable") {
    REQUIRE_CLI_AVAILABLE();
    // A corrupted (negative) tolerance turns the sharp diag(0,1) report
    // into a violation; nothing else can, since the inequalities hold.
    const CliResult r = run_cli("bounds --file " + fixture_path("diag01.txt") + " --tol -0.5");
    CHECK(r.exit_code == 2);
}

TEST_CASE("numeric failures exit with code 3") {
    REQUIRE_CLI_AVAILABLE();
    const auto nil = temp_file("spreadlab_nilpotent.txt");
    std::ofstream(nil) << "2\n0 1\n0 0\n";
    // A nilpotent matrix cannot be scaled to unit radius.
    CHECK(run_cli("bounds --file " + nil.string()).exit_code == 3);
    std::filesystem::remove(nil);
}

TEST_CASE("verify emits the exact certificate") {
    REQUIRE_CLI_AVAILABLE();
    const CliResult r = run_cli("verify --n 5");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j.at("format_version") == 1);
    CHECK(j.at("n") == 5);
    CHECK(j.at("similarity_exact") == true);
    CHECK(j.at("commutators_exact") == true);
    CHECK(j.at("series_identity_exact") == true);
}

TEST_CASE("search reports a bound-respecting result as JSON") {
    REQUIRE_CLI_AVAILABLE();
    const CliResult r = run_cli("search --n 2 --seed 3 --restarts 2 --iters 80");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j.at("bound_violation") == false);
    CHECK(j.at("gap").get<double>() >= -1e-9);
    CHECK(j.at("best_spread").get<double>() == Catch::Approx(1.0).margin(1e-3));
    // The embedded matrix is in the text format and parses back.
    const std::string text = j.at("best_matrix").get<std::string>();
    CHECK(text.rfind("2\n", 0) == 0);
}

TEST_CASE("sweep runs are deterministic byte for byte") {
    REQUIRE_CLI_AVAILABLE();
    const std::string args = "sweep 2..4 --seed 21 --restarts 2 --iters 60";
    const CliResult a = run_cli(args);
    const CliResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.rfind("# format_version 1\n", 0) == 0);
}
