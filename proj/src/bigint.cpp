#include "diffbound/bigint.hpp"

#include <boost/functional/hash.hpp>

#include <cmath>
#include <iterator>
#include <stdexcept>
#include <vector>

namespace diffbound {

double log2_approx(const BigInt& v) {
    if (v <= 0) throw std::invalid_argument("log2_approx: value must be positive");
    const std::uint64_t bits = bit_length(v);
    if (bits <= 62) {
        return std::log2(static_cast<double>(v.convert_to<std::uint64_t>()));
    }
    // Top 62 bits as mantissa, the rest as an exponent offset.
    const std::uint64_t shift = bits - 62;
    const BigInt top = v >> shift;
    return std::log2(static_cast<double>(top.convert_to<std::uint64_t>())) + static_cast<double>(shift);
}

std::string to_hex(const BigInt& v) {
    if (v == 0) return "0";
    const BigInt a = boost::multiprecision::abs(v);
    std::vector<unsigned char> bytes;
    boost::multiprecision::export_bits(a, std::back_inserter(bytes), 8);  // big-endian
    static const char* kDigits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2 + 1);
    if (v < 0) out += '-';
    bool leading = true;
    for (unsigned char b : bytes) {
        const unsigned hi = b >> 4, lo = b & 0xF;
        if (!(leading && hi == 0)) {
            out += kDigits[hi];
            leading = false;
        }
        out += kDigits[lo];
        leading = false;
    }
    return out;
}

BigInt parse_bigint(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (i == text.size()) throw std::invalid_argument("bad integer literal: " + text);
    for (; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') throw std::invalid_argument("bad integer literal: " + text);
    }
    return BigInt(text);
}

std::string approx_str(const BigInt& v) {
    if (bit_length(v) <= 64) return v.str();
    return "about 2^" + std::to_string(static_cast<std::uint64_t>(log2_approx(v)));
}

std::size_t hash_bigint(const BigInt& v) {
    return boost::hash<BigInt>{}(v);
}

}  // namespace diffbound
