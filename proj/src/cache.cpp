#include "normord/cache.hpp"

#include "normord/error.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

namespace normord {

namespace fs = std::filesystem;

namespace {

constexpr const char* kMagic = "normord-triangle";

std::string fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

std::string rows_text(const StirlingTriangle& t) {
    std::string body;
    for (const auto& row : t.rows()) {
        for (std::size_t k = 0; k < row.size(); ++k) body += (k ? " " : "") + row[k].get_str();
        body += '\n';
    }
    return body;
}

// Reads "<key> <value>" from line `index`.
std::string header_field(std::istringstream& in, const std::string& key, std::size_t index) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("triangle file truncated before '" + key + "'", index);
    const std::string prefix = key + " ";
    if (line.rfind(prefix, 0) != 0) throw ParseError("expected '" + key + "'", index);
    return line.substr(prefix.size());
}

unsigned header_number(std::istringstream& in, const std::string& key, std::size_t index) {
    const std::string v = header_field(in, key, index);
    const BigInt z = parse_int(v);
    if (z < 0 || !z.fits_uint_p()) throw ParseError("bad value for '" + key + "'", index);
    return static_cast<unsigned>(z.get_ui());
}

}  // namespace

std::string serialize_triangle(const StirlingTriangle& t) {
    const std::string body = rows_text(t);
    std::ostringstream os;
    os << kMagic << ' ' << kTriangleFormatVersion << '\n'
       << "r " << t.r() << '\n'
       << "M " << t.M() << '\n'
       << "rows " << t.rows().size() << '\n'
       << "checksum " << fnv1a(body) << '\n'
       << body;
    return os.str();
}

StirlingTriangle deserialize_triangle(const std::string& text) {
    std::istringstream in(text);
    const std::string version = header_field(in, kMagic, 0);
    if (version != std::to_string(kTriangleFormatVersion))
        throw ParseError("unsupported triangle format version " + version, 0);
    const unsigned r = header_number(in, "r", 1);
    const unsigned M = header_number(in, "M", 2);
    const unsigned rows = header_number(in, "rows", 3);
    const std::string checksum = header_field(in, "checksum", 4);
    if (rows == 0) throw ParseError("triangle needs at least one row", 3);

    std::vector<std::vector<BigInt>> data;
    std::string body, line;
    while (std::getline(in, line)) {
        const std::size_t index = 5 + data.size();
        if (data.size() == rows) throw ParseError("trailing data after the last row", index);
        std::istringstream fields(line);
        std::vector<BigInt> row;
        std::string tok;
        while (fields >> tok) row.push_back(parse_int(tok));
        data.push_back(std::move(row));
        body += line + '\n';
    }
    if (data.size() != rows) throw ParseError("expected " + std::to_string(rows) + " rows", 5 + data.size());
    if (fnv1a(body) != checksum) throw ParseError("checksum mismatch", 4);
    try {
        return StirlingTriangle(r, M, std::move(data));
    } catch (const RangeError& e) {
        throw ParseError(e.what(), 5);
    }
}

fs::path default_cache_dir() {
    if (const char* d = std::getenv("NORMORD_CACHE_DIR"); d && *d) return d;
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "normord";
    if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "normord";
    return ".normord-cache";
}

TriangleCache::TriangleCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path TriangleCache::path_for(unsigned r, unsigned M, unsigned n_max) const {
    return dir_ / ("triangle-r" + std::to_string(r) + "-M" + std::to_string(M) + "-n" + std::to_string(n_max) + ".txt");
}

CacheLookup TriangleCache::get(unsigned r, unsigned M, unsigned n_max) {
    const fs::path path = path_for(r, M, n_max);
    std::lock_guard lock(mutex_);
    std::string warning;
    if (fs::exists(path)) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        try {
            StirlingTriangle t = deserialize_triangle(ss.str());
            if (t.r() != r || t.M() != M || t.n_max() != n_max) throw ParseError("header does not match file key", 1);
            return {std::move(t), CacheSource::hit, {}};
        } catch (const Error& e) {
            warning = "cache file " + path.string() + " is corrupt (" + e.what() + "); recomputing";
        }
    }

    StirlingTriangle t = StirlingTriangle::compute(r, M, n_max);
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create cache directory " + dir_.string() + ": " + ec.message());
    const fs::path tmp = path.string() + ".tmp" + std::to_string(std::random_device{}());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << serialize_triangle(t);
        if (!out) throw IoError("cannot write " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot store " + path.string() + ": " + ec.message());
    return {std::move(t), warning.empty() ? CacheSource::computed : CacheSource::recomputed, warning};
}

std::size_t TriangleCache::clear() {
    std::lock_guard lock(mutex_);
    std::size_t removed = 0;
    if (!fs::exists(dir_)) return 0;
    for (const auto& entry : fs::directory_iterator(dir_)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && name.rfind("triangle-", 0) == 0) {
            fs::remove(entry.path());
            ++removed;
        }
    }
    return removed;
}

}  // namespace normord
