#include "normord/cache.hpp"
#include "normord/error.hpp"
#include "normord/sequence.hpp"

#include <doctest.h>

#include <fstream>
#include <random>
#include <regex>
#include <sstream>

using namespace normord;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("normord-test-" + std::to_string(std::random_device{}()))) {}
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("triangle text format round trip") {
    const auto t = StirlingTriangle::compute(2, 3, 4);
    const std::string text = serialize_triangle(t);
    CHECK(text.rfind("normord-triangle 1\nr 2\nM 3\nrows 5\nchecksum ", 0) == 0);
    CHECK(deserialize_triangle(text) == t);
    CHECK(serialize_triangle(deserialize_triangle(text)) == text);

    std::string flipped = text;
    flipped[flipped.size() - 2] = flipped[flipped.size() - 2] == '1' ? '2' : '1';
    CHECK_THROWS_AS(deserialize_triangle(flipped), ParseError);
    CHECK_THROWS_AS(deserialize_triangle(text.substr(0, text.size() / 2)), ParseError);
    CHECK_THROWS_AS(deserialize_triangle("normord-triangle 9\n"), ParseError);
    CHECK_THROWS_AS(deserialize_triangle(""), ParseError);
}

TEST_CASE("cache hits are byte-identical to recomputation") {
    TempDir tmp;
    TriangleCache cache(tmp.path);
    const auto cold = cache.get(1, 2, 6);
    CHECK(cold.source == CacheSource::computed);
    const fs::path file = cache.path_for(1, 2, 6);
    REQUIRE(fs::exists(file));
    const std::string stored = slurp(file);

    const auto warm = cache.get(1, 2, 6);
    CHECK(warm.source == CacheSource::hit);
    CHECK(warm.triangle == StirlingTriangle::compute(1, 2, 6));
    CHECK(serialize_triangle(warm.triangle) == serialize_triangle(StirlingTriangle::compute(1, 2, 6)));
    CHECK(serialize_triangle(warm.triangle) == stored);
    CHECK(to_bfile(warm.triangle.bell_numbers()) == to_bfile(cold.triangle.bell_numbers()));

    CHECK(cache.clear() == 1);
    CHECK_FALSE(fs::exists(file));
    CHECK(cache.get(1, 2, 6).source == CacheSource::computed);
    CHECK(slurp(file) == stored);
}

TEST_CASE("corrupt cache file is recomputed with a warning") {
    TempDir tmp;
    TriangleCache cache(tmp.path);
    cache.get(3, 3, 4);
    const fs::path file = cache.path_for(3, 3, 4);
    const std::string good = slurp(file);
    for (const std::string& junk : {std::string("garbage"), good.substr(0, good.size() - 5), good + "1 2 3\n",
                                    std::string(good).replace(good.find("M 3"), 3, "M 2")}) {
        std::ofstream(file, std::ios::binary | std::ios::trunc) << junk;
        const auto got = cache.get(3, 3, 4);
        CHECK(got.source == CacheSource::recomputed);
        CHECK(got.warning.find("corrupt") != std::string::npos);
        CHECK(got.triangle == StirlingTriangle::compute(3, 3, 4));
        CHECK(slurp(file) == good);
    }
}

TEST_CASE("default cache dir honours NORMORD_CACHE_DIR") {
    ::setenv("NORMORD_CACHE_DIR", "/tmp/somewhere", 1);
    CHECK(default_cache_dir() == fs::path("/tmp/somewhere"));
    ::unsetenv("NORMORD_CACHE_DIR");
    CHECK_FALSE(default_cache_dir().empty());
}

TEST_CASE("b-file export") {
    const std::vector<BigInt> d11 = StirlingTriangle::compute(1, 1, 6).bell_numbers();
    const std::string b = to_bfile(d11);
    CHECK(b.rfind("0 1\n1 2\n2 7\n3 34\n", 0) == 0);
    const std::regex line_re(R"(^\d+ \d+$)");
    std::istringstream in(b);
    std::string line;
    unsigned n = 0;
    while (std::getline(in, line)) {
        CHECK(std::regex_match(line, line_re));
        CHECK(line.rfind(std::to_string(n++) + " ", 0) == 0);
    }
    CHECK(n == 7);
    CHECK(parse_bfile(b) == d11);
    CHECK_THROWS_AS(parse_bfile("1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_bfile("0 x\n"), ParseError);

    const auto d23 = StirlingTriangle::compute(2, 3, 3).bell_numbers();
    CHECK(d23 == std::vector<BigInt>{1, 37, 9415, 7063615});
    for (const BigInt& v : StirlingTriangle::compute(1, 0, 8).bell_numbers()) CHECK(v == 1);
}

TEST_CASE("JSON export round trips") {
    const auto d12 = StirlingTriangle::compute(1, 2, 5);
    const std::string j = bell_numbers_to_json(1, 2, d12.bell_numbers());
    CHECK(j.find("\"A069948\"") != std::string::npos);
    CHECK(bell_numbers_from_json(j) == d12.bell_numbers());
    CHECK(triangle_from_json(triangle_to_json(d12)) == d12);
    CHECK(bell_numbers_to_json(3, 3, {1}).find("\"oeis\": null") != std::string::npos);
    CHECK_THROWS_AS(bell_numbers_from_json(triangle_to_json(d12)), ParseError);
    CHECK_THROWS_AS(triangle_from_json("{"), ParseError);

    CHECK(oeis_id(1, 1) == "A002720");
    CHECK(oeis_id(2, 1) == "A121629");
    CHECK_FALSE(oeis_id(2, 2));

    const std::string table = triangle_to_table(StirlingTriangle::compute(1, 1, 2));
    CHECK(table == "n=0: 1\nn=1: 1 1\nn=2: 2 4 1\n");
    CHECK(parse_bfile(triangle_to_bfile(StirlingTriangle::compute(1, 1, 2))) == std::vector<BigInt>{1, 1, 1, 2, 4, 1});
}
