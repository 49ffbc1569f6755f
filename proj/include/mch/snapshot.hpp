#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "mch/field.hpp"
#include "mch/grid.hpp"

namespace mch {

struct SnapshotError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Binary field snapshot. Layout is normative for cross-tool reads:
///   magic "MCHF" | version u32 | dim u32 | n u32 | period f64 | count u32
/// followed by count components of row-major little-endian f64 samples.
namespace snapshot {

inline constexpr char kMagic[4] = {'M', 'C', 'H', 'F'};
inline constexpr std::uint32_t kVersion = 1;

namespace detail {

inline void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 4);
}

inline void put_f64(std::ostream& os, double v) {
    std::uint64_t u = std::bit_cast<std::uint64_t>(v);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((u >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 8);
}

inline std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

inline double get_f64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return std::bit_cast<double>(u);
}

}  // namespace detail

inline void write(const std::string& path, const Grid& grid,
                  const std::vector<const Field*>& components) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw SnapshotError("snapshot: cannot open for writing: " + path);
    os.write(kMagic, 4);
    detail::put_u32(os, kVersion);
    detail::put_u32(os, static_cast<std::uint32_t>(grid.dim));
    detail::put_u32(os, static_cast<std::uint32_t>(grid.n));
    detail::put_f64(os, grid.period);
    detail::put_u32(os, static_cast<std::uint32_t>(components.size()));
    for (const Field* f : components)
        for (double x : f->values()) detail::put_f64(os, x);
    if (!os) throw SnapshotError("snapshot: write failed: " + path);
}

struct Contents {
    Grid grid;
    std::vector<Field> components;
};

inline Contents read(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw SnapshotError("snapshot: cannot open: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw SnapshotError("snapshot: bad magic in " + path);
    const std::uint32_t version = detail::get_u32(is);
    if (version != kVersion)
        throw SnapshotError("snapshot: unsupported version " + std::to_string(version));
    const std::uint32_t dim = detail::get_u32(is);
    const std::uint32_t n = detail::get_u32(is);
    const double period = detail::get_f64(is);
    const std::uint32_t count = detail::get_u32(is);
    if (!is) throw SnapshotError("snapshot: truncated header in " + path);
    Contents out{Grid(static_cast<int>(dim), static_cast<int>(n), period), {}};
    for (std::uint32_t c = 0; c < count; ++c) {
        Field f(out.grid);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = detail::get_f64(is);
        if (!is) throw SnapshotError("snapshot: truncated payload in " + path);
        out.components.push_back(std::move(f));
    }
    return out;
}

}  // namespace snapshot
}  // namespace mch
