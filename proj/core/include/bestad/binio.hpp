#pragma once

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace bestad::binio {

// Little-endian binary primitives for artifact files. All multi-byte values
// are written LSB first regardless of host order.

inline void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 4);
}

inline void put_u64(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

inline void put_i64(std::ostream& os, std::int64_t v) {
    put_u64(os, static_cast<std::uint64_t>(v));
}

inline void put_f64(std::ostream& os, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    put_u64(os, bits);
}

inline void put_str(std::ostream& os, const std::string& s) {
    put_u32(os, static_cast<std::uint32_t>(s.size()));
    os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    if (!is) throw std::runtime_error("binio: truncated stream (u32)");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

inline std::uint64_t get_u64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    if (!is) throw std::runtime_error("binio: truncated stream (u64)");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

inline std::int64_t get_i64(std::istream& is) {
    return static_cast<std::int64_t>(get_u64(is));
}

inline double get_f64(std::istream& is) {
    const std::uint64_t bits = get_u64(is);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

inline std::string get_str(std::istream& is) {
    const std::uint32_t n = get_u32(is);
    std::string s(n, '\0');
    is.read(s.data(), n);
    if (!is) throw std::runtime_error("binio: truncated stream (str)");
    return s;
}

inline void expect_magic(std::istream& is, const std::string& magic,
                         const std::string& what) {
    std::string got(magic.size(), '\0');
    is.read(got.data(), static_cast<std::streamsize>(magic.size()));
    if (!is || got != magic)
        throw std::runtime_error(what + ": bad magic (expected " + magic + ")");
}

}  // namespace bestad::binio
