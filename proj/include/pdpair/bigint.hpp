#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace pdpair {

/// Arbitrary-precision integer used for every stored matrix entry and chain
/// coefficient.
using BigInt = mpz_class;

/// Coordinates of a chain or cochain in a fixed basis.
using IntVector = std::vector<BigInt>;

inline std::string to_string(const BigInt& x) { return x.get_str(); }

inline bool fits_int64(const BigInt& x) { return x.fits_slong_p(); }

inline std::int64_t to_int64(const BigInt& x) { return x.get_si(); }

inline BigInt from_int64(std::int64_t x) { return BigInt(static_cast<long>(x)); }

inline bool is_zero(const IntVector& v) {
    for (const auto& x : v) {
        if (x != 0) return false;
    }
    return true;
}

}  // namespace pdpair
