#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "normord/boson.hpp"
#include "normord/sequence.hpp"
#include "normord/stirling.hpp"

#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

using namespace normord;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

struct ScratchDir {
    fs::path path = fs::temp_directory_path() / ("normord-cli-" + std::to_string(std::random_device{}()));
    ScratchDir() { fs::create_directories(path); }
    ~ScratchDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

const fs::path& scratch() {
    static const ScratchDir dir;
    return dir.path;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs the CLI with its own cache dir unless the arguments set one.
Run cli(const std::string& args, const fs::path& cache = scratch() / "cache") {
    const fs::path err = scratch() / "stderr.txt";
    const std::string cmd =
        "NORMORD_CACHE_DIR='" + cache.string() + "' '" NORMORD_CLI "' " + args + " 2>'" + err.string() + "'";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, slurp(err)};
}

}  // namespace

TEST_CASE("order") {
    auto r = cli("order 'a*(ad*a)' --power 2 --expectation 1");
    CHECK(r.code == 0);
    CHECK(r.out == "7\n");

    r = cli("order a --power 3");
    CHECK(r.code == 0);
    CHECK(nf_from_json(r.out) == NormalForm::monomial(0, 3));

    r = cli("order 'a^2*(ad*a)' --power 1");
    NormalForm expected;
    expected.add(1, 3, 1);
    expected.add(0, 2, 2);
    CHECK(nf_from_json(r.out) == expected);

    r = cli("--format table order 'a^2*(ad*a)'");
    CHECK(r.out == "dag  ann  coeff\n  1    3      1\n  0    2      2\n");

    r = cli("order '(a*ad - ad*a)^3' --format json");
    CHECK(nf_from_json(r.out) == NormalForm::identity());

    r = cli("order 'a*(ad*a)' --power 2 --graphs");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["total_weight"] == "7");
    r = cli("order 'a*(ad*a)' --power 2 --explicit");
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 7);
}

TEST_CASE("order JSON round trips through the library") {
    for (const char* e : {"a*(ad*a)", "ad^2*a - 1/3*a*ad", "(a+ad)^2", "n^3*a^2"}) {
        const auto r = cli(std::string("order '") + e + "' --power 3");
        REQUIRE(r.code == 0);
        const NormalForm nf = nf_from_json(r.out);
        CHECK(nf == nf_power(normal_order_rewrite(parse_expr(e)), 3));
        CHECK(nf_to_json(nf, 2) + "\n" == r.out);
    }
}

TEST_CASE("seq") {
    auto r = cli("seq --r 1 --M 1 --n 6 --format bfile");
    CHECK(r.code == 0);
    const std::regex line_re(R"(^\d+ \d+$)");
    std::istringstream in(r.out);
    std::string line;
    unsigned n = 0;
    while (std::getline(in, line)) {
        CHECK(std::regex_match(line, line_re));
        CHECK(line.rfind(std::to_string(n++) + " ", 0) == 0);
    }
    CHECK(n == 7);
    CHECK(r.out.rfind("0 1\n1 2\n2 7\n3 34\n4 209\n5 1546\n", 0) == 0);
    CHECK(parse_bfile(r.out) == StirlingTriangle::compute(1, 1, 6).bell_numbers());

    r = cli("seq --r 2 --M 3 --n 3");
    CHECK(bell_numbers_from_json(r.out) == std::vector<BigInt>{1, 37, 9415, 7063615});
    CHECK(nlohmann::json::parse(r.out)["metadata"]["oeis"].is_null());
    CHECK(nlohmann::json::parse(cli("seq --r 1 --M 1 --n 2").out)["metadata"]["oeis"] == "A002720");
    CHECK(nlohmann::json::parse(cli("seq --r 1 --M 2 --n 2").out)["metadata"]["oeis"] == "A069948");
    CHECK(nlohmann::json::parse(cli("seq --r 2 --M 1 --n 2").out)["metadata"]["oeis"] == "A121629");

    for (const BigInt& v : parse_bfile(cli("--format bfile seq --r 1 --M 0 --n 10").out)) CHECK(v == 1);

    r = cli("seq --r 2 --M 2 --n 3 --poly");
    CHECK(triangle_from_json(r.out) == StirlingTriangle::compute(2, 2, 3));
    CHECK(cli("seq --r 2 --M 2 --poly --number").code == 2);
}

TEST_CASE("cache") {
    const fs::path dir = scratch() / "cache-test";
    const auto cold = cli("seq --r 3 --M 3 --n 5 --format bfile", dir);
    CHECK(cold.code == 0);
    const fs::path file = dir / "triangle-r3-M3-n5.txt";
    REQUIRE(fs::exists(file));
    const std::string stored = slurp(file);
    const auto warm = cli("seq --r 3 --M 3 --n 5 --format bfile", dir);
    CHECK(warm.out == cold.out);
    CHECK(slurp(file) == stored);

    CHECK(cli("cache clear", dir).out == "removed 1 cached triangle(s)\n");
    CHECK_FALSE(fs::exists(file));
    CHECK(cli("seq --r 3 --M 3 --n 5 --format bfile", dir).out == cold.out);
    CHECK(slurp(file) == stored);

    std::ofstream(file, std::ios::trunc) << "normord-triangle 1\nr 3\nM 3\nrows 6\nchecksum 0\n1\n";
    const auto fixed = cli("seq --r 3 --M 3 --n 5 --format bfile", dir);
    CHECK(fixed.code == 0);
    CHECK(fixed.err.find("warning:") != std::string::npos);
    CHECK(fixed.out == cold.out);
    CHECK(slurp(file) == stored);

    // --cache-dir beats the environment
    const fs::path other = scratch() / "flag-dir";
    cli("--cache-dir '" + other.string() + "' seq --r 1 --M 1 --n 3", dir);
    CHECK(fs::exists(other / "triangle-r1-M1-n3.txt"));
    CHECK_FALSE(fs::exists(dir / "triangle-r1-M1-n3.txt"));
}

TEST_CASE("verify") {
    auto r = cli("verify sheffer --r 2 --n 4 --no-timing");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["status"] == "pass");

    r = cli("verify graphs --r 1 --M 1 --n 2 --no-timing");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)[0]["details"] == "totals 1,2,7");

    r = cli("verify commutator --r 1 --M 1");
    CHECK(nlohmann::json::parse(r.out)[0].contains("elapsed_ms"));

    // numeric reports carry precision, tolerance and the observed deviation
    j = nlohmann::json::parse(cli("verify hyp_closed --kind bell_poly_r3 --M 1 --n 2 --no-timing").out);
    CHECK(j[0]["mode"] == "numeric");
    CHECK(j[0]["precision_digits"] == 50);
    CHECK(j[0]["tolerance"] == "1.00e-30");

    const auto a = cli("verify commutator --no-timing --threads 1").out;
    CHECK(a == cli("verify commutator --no-timing --threads 4").out);

    r = cli("verify all --no-timing");
    CHECK(r.code == 0);
    for (const auto& rep : nlohmann::json::parse(r.out)) CHECK(rep["status"] != "fail");

    CHECK(cli("verify --list").out.find("commutator\n") != std::string::npos);
}

TEST_CASE("verify reports failures through exit code 1") {
    const auto r = cli("verify examples --example bessel_J0_with_I0 --no-timing");
    CHECK(r.code == 1);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j[0]["status"] == "fail");
    CHECK(j[0]["first_mismatch"].get<std::string>().rfind("lambda^1", 0) == 0);
}

TEST_CASE("usage errors exit 2") {
    CHECK(cli("verify nonsense").code == 2);
    CHECK(cli("order 'a*('").code == 2);
    CHECK(cli("order 'a*('").err.find("position") != std::string::npos);
    CHECK(cli("order 'b'").code == 2);
    CHECK(cli("").code == 2);
    CHECK(cli("seq --r 1").code == 2);
    CHECK(cli("--format xml seq --r 1 --M 1").code == 2);
    CHECK(cli("--precision 29 seq --r 1 --M 1").code == 2);
    CHECK(cli("--precision 40 --tolerance 1e-35 seq --r 1 --M 1").code == 2);
    CHECK(cli("--precision 60 --tolerance 1e-45 seq --r 1 --M 1 --n 1").code == 0);
    CHECK(cli("--help").code == 0);
}
