#include "padicfeas/int.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

namespace padicfeas {

Int parse_int(std::string_view text) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
      throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    }
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return Int(digits, 10);
}

bool fits_u64(const Int& v) {
  return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

bool fits_i64(const Int& v) {
  static const Int lo = -(Int(1) << 63);
  static const Int hi = (Int(1) << 63) - 1;
  return v >= lo && v <= hi;
}

std::uint64_t to_u64(const Int& v) {
  if (!fits_u64(v)) throw std::range_error("integer does not fit in 64 bits: " + v.get_str());
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

std::int64_t to_i64(const Int& v) {
  if (!fits_i64(v)) throw std::range_error("integer does not fit in 64 bits: " + v.get_str());
  Int mag = abs(v);
  std::uint64_t m = 0;
  mpz_export(&m, nullptr, -1, sizeof(m), 0, 0, mag.get_mpz_t());
  return sgn(v) < 0 ? static_cast<std::int64_t>(0 - m) : static_cast<std::int64_t>(m);
}

Int from_u64(std::uint64_t v) {
  Int out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

Int from_i64(std::int64_t v) {
  if (v >= 0) return from_u64(static_cast<std::uint64_t>(v));
  return -from_u64(0 - static_cast<std::uint64_t>(v));
}

Int uniform_int(Rng& rng, const Int& lo, const Int& hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const Int span = hi - lo;  // draw from [0, span]
  if (span == 0) return lo;
  const std::size_t bits = mpz_sizeinbase(span.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  const unsigned top_bits = static_cast<unsigned>(bits - 64 * (words - 1));
  const std::uint64_t top_mask = top_bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << top_bits) - 1);
  std::vector<std::uint64_t> buf(words);
  Int draw;
  for (;;) {
    for (auto& w : buf) w = rng();
    buf.back() &= top_mask;
    mpz_import(draw.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
    if (draw <= span) return lo + draw;
  }
}

Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace padicfeas
