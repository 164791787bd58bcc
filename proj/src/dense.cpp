// Dense exact arithmetic used only by oracles: gcd, resultant, squarefree
// part. The sparse pipeline never calls into this file.

#include <stdexcept>
#include <vector>

#include "padicfeas/errors.hpp"
#include "padicfeas/sparse_poly.hpp"

namespace padicfeas {

namespace {

using Rat = mpq_class;
using DenseQ = std::vector<Rat>;  // index = exponent, no trailing zeros

std::uint64_t checked_degree(const SparsePoly& f, std::uint64_t cap, const char* who) {
  if (f.is_zero()) return 0;
  if (!fits_u64(f.degree()) || to_u64(f.degree()) > cap) {
    throw CapExceeded(std::string(who) + ": degree " + f.degree().get_str() + " exceeds dense cap " +
                      std::to_string(cap));
  }
  return to_u64(f.degree());
}

DenseQ to_dense(const SparsePoly& f, std::uint64_t cap, const char* who) {
  if (f.is_zero()) return {};
  DenseQ out(checked_degree(f, cap, who) + 1);
  for (const auto& t : f.terms()) out[to_u64(t.exp)] = Rat(t.coeff);
  return out;
}

void trim(DenseQ& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a <- a mod b, b nonzero.
void rem_in_place(DenseQ& a, const DenseQ& b) {
  const std::size_t db = b.size() - 1;
  const Rat& lb = b.back();
  while (a.size() >= b.size()) {
    const Rat factor = a.back() / lb;
    const std::size_t offset = a.size() - 1 - db;
    for (std::size_t i = 0; i < db; ++i) a[offset + i] -= factor * b[i];
    a.pop_back();
    trim(a);
  }
}

// Integer polynomial proportional to a: clear denominators, take the
// primitive part, positive leading coefficient.
SparsePoly primitive_from_dense(const DenseQ& a) {
  if (a.empty()) return {};
  Int lcm_den = 1;
  for (const auto& c : a) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Term> terms;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    Int c = a[i].get_num() * (lcm_den / a[i].get_den());
    terms.push_back({std::move(c), Int(static_cast<unsigned long>(i))});
  }
  return primitive_part(SparsePoly::from_canonical_terms(std::move(terms)));
}

}  // namespace

SparsePoly gcd_dense(const SparsePoly& f, const SparsePoly& g, std::uint64_t degree_cap) {
  DenseQ a = to_dense(f, degree_cap, "gcd_dense");
  DenseQ b = to_dense(g, degree_cap, "gcd_dense");
  while (!b.empty()) {
    rem_in_place(a, b);
    std::swap(a, b);
  }
  // a is the gcd up to a unit; the primitive associate is monic exactly
  // when the monic gcd is integral.
  return primitive_from_dense(a);
}

Int resultant_dense(const SparsePoly& f, const SparsePoly& g, std::uint64_t degree_cap) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant_dense: zero polynomial");
  const std::uint64_t m = checked_degree(f, degree_cap, "resultant_dense");
  const std::uint64_t n = checked_degree(g, degree_cap, "resultant_dense");
  const std::size_t size = m + n;
  if (size == 0) return 1;
  // Sylvester matrix: n shifted rows of f, m shifted rows of g, coefficients
  // listed from the leading one down.
  std::vector<std::vector<Int>> mat(size, std::vector<Int>(size, 0));
  for (std::size_t r = 0; r < n; ++r) {
    for (const auto& t : f.terms()) mat[r][r + m - to_u64(t.exp)] = t.coeff;
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (const auto& t : g.terms()) mat[n + r][r + n - to_u64(t.exp)] = t.coeff;
  }
  // Bareiss fraction-free elimination.
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (mat[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < size && mat[swap_row][k] == 0) ++swap_row;
      if (swap_row == size) return 0;
      std::swap(mat[k], mat[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) {
        Int v = mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j];
        mpz_divexact(mat[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      mat[i][k] = 0;
    }
    prev = mat[k][k];
  }
  return sign * mat[size - 1][size - 1];
}

SparsePoly squarefree_part(const SparsePoly& f, std::uint64_t degree_cap) {
  if (f.is_zero()) return f;
  const SparsePoly g = gcd_dense(f, derivative(f), degree_cap);
  if (g.is_zero()) return primitive_part(f);
  // f / g is exact over Q; divide the primitive parts over Z (Gauss).
  DenseQ a = to_dense(primitive_part(f), degree_cap, "squarefree_part");
  DenseQ b = to_dense(g, degree_cap, "squarefree_part");
  const std::size_t db = b.size() - 1;
  DenseQ q(a.size() - db, 0);
  while (a.size() >= b.size()) {
    const Rat factor = a.back() / b.back();
    const std::size_t offset = a.size() - 1 - db;
    q[offset] = factor;
    for (std::size_t i = 0; i < db; ++i) a[offset + i] -= factor * b[i];
    a.pop_back();
    trim(a);
  }
  if (!a.empty()) throw std::logic_error("squarefree_part: gcd does not divide f");
  trim(q);
  return primitive_from_dense(q);
}

}  // namespace padicfeas
