#pragma once

#include <cstdint>
#include <vector>

#include "padicfeas/bigmod.hpp"
#include "padicfeas/int.hpp"

namespace padicfeas {

struct Term {
  Int coeff;
  Int exp;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Univariate integer polynomial stored as its nonzero terms, sorted by
/// strictly increasing exponent. Exponents are arbitrary precision, so the
/// degree may be exponential in the storage size. The empty term list is
/// the zero polynomial.
class SparsePoly {
 public:
  SparsePoly() = default;

  /// Sorts, merges equal exponents and drops zero coefficients. Negative
  /// exponents are rejected.
  static SparsePoly from_terms(std::vector<Term> terms);
  /// Accepts only already-canonical input (nonzero coefficients, strictly
  /// increasing exponents); used by the file reader.
  static SparsePoly from_canonical_terms(std::vector<Term> terms);

  static SparsePoly constant(const Int& c);
  static SparsePoly monomial(const Int& c, const Int& e);
  /// x^m - 1
  static SparsePoly x_pow_minus_one(const Int& m);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  // Undefined on the zero polynomial (throws).
  const Int& degree() const;
  const Int& leading_coeff() const;
  const Int& low_exponent() const;
  Int coeff_of(const Int& e) const;

  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

 private:
  std::vector<Term> terms_;
};

SparsePoly operator+(const SparsePoly& f, const SparsePoly& g);
SparsePoly operator-(const SparsePoly& f, const SparsePoly& g);
SparsePoly operator-(const SparsePoly& f);
SparsePoly operator*(const SparsePoly& f, const SparsePoly& g);
SparsePoly scale(const SparsePoly& f, const Int& c);
// f * x^s
SparsePoly shift(const SparsePoly& f, const Int& s);

inline SparsePoly add(const SparsePoly& f, const SparsePoly& g) { return f + g; }
inline SparsePoly negate(const SparsePoly& f) { return -f; }
inline SparsePoly mul(const SparsePoly& f, const SparsePoly& g) { return f * g; }
SparsePoly square(const SparsePoly& f);

/// f(x) mod m, in [0, m). Terms are visited in increasing exponent order and
/// x^e is advanced by the exponent gap, so the cost is O(#terms * log(gap)).
Int eval_mod(const SparsePoly& f, const Int& x, const Int& m);
inline Int eval_mod(const SparsePoly& f, const Int& x, const Modulus& m) { return eval_mod(f, x, m.value()); }

SparsePoly derivative(const SparsePoly& f);

struct DivisionCaps {
  std::size_t max_terms = 1'000'000;
};

/// q with f = q * g, by top-down sparse long division. Throws InexactDivision
/// on a nonzero remainder and CapExceeded when the running remainder or the
/// quotient outgrows caps.max_terms.
SparsePoly exact_div(const SparsePoly& f, const SparsePoly& g, const DivisionCaps& caps = {});

/// Sparse size: sum over terms of 1 + ceil(log2(2+|c|)) + ceil(log2(2+e)).
std::uint64_t size(const SparsePoly& f);
/// size(f) + ceil(log2(2+p)).
std::uint64_t size_p(const SparsePoly& f, const Int& p);

/// x^deg(f) * f(1/x). Requires f != 0.
SparsePoly reverse(const SparsePoly& f);

/// Monic gcd over Q computed densely (exact rationals). When the monic gcd
/// is not integral, the primitive integer associate with positive leading
/// coefficient is returned. gcd(0, 0) = 0. Throws CapExceeded when either
/// degree exceeds degree_cap.
SparsePoly gcd_dense(const SparsePoly& f, const SparsePoly& g, std::uint64_t degree_cap = 100'000);

/// Resultant of f and g as integer polynomials (Sylvester determinant by
/// fraction-free elimination). Both must be nonzero.
Int resultant_dense(const SparsePoly& f, const SparsePoly& g, std::uint64_t degree_cap = 100'000);

/// f / gcd(f, f') made primitive with positive leading coefficient.
SparsePoly squarefree_part(const SparsePoly& f, std::uint64_t degree_cap = 100'000);

/// Divides out the content and fixes the sign of the leading coefficient.
SparsePoly primitive_part(const SparsePoly& f);

}  // namespace padicfeas
