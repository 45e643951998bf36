#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace zlrr {

/// Exact arbitrary-precision integer. Sequence terms overflow 64-bit arithmetic
/// near index 160 for the default recurrence, so everything value-like is mpz.
using Int = mpz_class;

/// Exact rational, used for means and variances before any float conversion.
using Rat = mpq_class;

inline bool fits_u64(const Int& v) { return v.fits_ulong_p() || mpz_sizeinbase(v.get_mpz_t(), 2) <= 64; }

inline std::uint64_t to_u64(const Int& v) {
    std::uint64_t lo = mpz_get_ui(v.get_mpz_t());
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > 32) {
        Int hi = v >> 32;
        lo = (mpz_get_ui(hi.get_mpz_t()) << 32) | (lo & 0xffffffffull);
    }
    return lo;
}

inline double to_double(const Rat& r) { return r.get_d(); }

inline std::string to_decimal(const Int& v) { return v.get_str(10); }

/// Natural logarithm of a positive big integer, accurate to double precision
/// even when the value itself overflows double range.
double log_int(const Int& v);

}  // namespace zlrr
