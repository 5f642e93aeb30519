#ifndef DIFFBOUND_BIGINT_HPP
#define DIFFBOUND_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace diffbound {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Number of bits in |v|; bit_length(0) == 0.
inline std::uint64_t bit_length(const BigInt& v) {
    if (v == 0) return 0;
    return static_cast<std::uint64_t>(boost::multiprecision::msb(boost::multiprecision::abs(v))) + 1;
}

/// log2 of a positive integer as a double (exact msb plus a 64-bit mantissa window).
double log2_approx(const BigInt& v);

/// Lowercase hex digits, no prefix, "0" for zero.
std::string to_hex(const BigInt& v);

/// Parses a decimal (optionally negative) integer literal.
BigInt parse_bigint(const std::string& text);

/// Decimal for small values, "about 2^k" past 64 bits; for messages.
std::string approx_str(const BigInt& v);

std::size_t hash_bigint(const BigInt& v);

inline void hash_combine(std::size_t& seed, std::size_t h) {
    seed ^= h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace diffbound

#endif
