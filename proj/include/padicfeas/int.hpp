#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace padicfeas {

// Arbitrary-precision signed integer. mpz values are always canonical
// (no negative zero, no leading zero limbs).
using Int = mpz_class;

// All randomness is passed explicitly. mt19937_64's output sequence is fixed
// by the standard, so seeded runs reproduce across platforms.
using Rng = std::mt19937_64;

// Strict decimal parse: optional sign followed by digits.
Int parse_int(std::string_view text);

inline std::string to_string(const Int& v) { return v.get_str(); }

bool fits_u64(const Int& v);
bool fits_i64(const Int& v);
std::uint64_t to_u64(const Int& v);  // throws std::range_error
std::int64_t to_i64(const Int& v);   // throws std::range_error
Int from_u64(std::uint64_t v);
Int from_i64(std::int64_t v);

// Uniform integer in [lo, hi] by rejection sampling on 64-bit words.
// Independent of std::uniform_int_distribution, whose algorithm is
// implementation-defined.
Int uniform_int(Rng& rng, const Int& lo, const Int& hi);

// Euclidean remainder in [0, |m|).
Int mod_floor(const Int& a, const Int& m);

}  // namespace padicfeas
