#pragma once

#include "normord/stirling.hpp"

#include <filesystem>
#include <mutex>
#include <string>

namespace normord {

inline constexpr int kTriangleFormatVersion = 1;

// Text form of a triangle:
//   normord-triangle <version>
//   r <r>
//   M <M>
//   rows <n_max + 1>
//   checksum <fnv1a-64 of the row lines, hex>
// then one line per row with space-separated decimal entries.
std::string serialize_triangle(const StirlingTriangle& t);
// Throws ParseError on any malformed or inconsistent input.
StirlingTriangle deserialize_triangle(const std::string& text);

// NORMORD_CACHE_DIR, else $XDG_CACHE_HOME/normord, else $HOME/.cache/normord,
// else ./.normord-cache.
std::filesystem::path default_cache_dir();

enum class CacheSource { hit, computed, recomputed };

struct CacheLookup {
    StirlingTriangle triangle;
    CacheSource source;
    std::string warning;  // set when a stored file was unreadable and got replaced
};

// On-disk store of triangles keyed by (r, M, n_max). A hit yields exactly the
// triangle that recomputation would; a corrupt file is recomputed and
// rewritten. Writes go through a temporary file and a rename.
class TriangleCache {
public:
    explicit TriangleCache(std::filesystem::path dir);

    const std::filesystem::path& dir() const { return dir_; }
    std::filesystem::path path_for(unsigned r, unsigned M, unsigned n_max) const;

    CacheLookup get(unsigned r, unsigned M, unsigned n_max);
    // Removes every triangle file; returns how many were removed.
    std::size_t clear();

private:
    std::filesystem::path dir_;
    std::mutex mutex_;
};

}  // namespace normord
