#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "padicfeas/int.hpp"
#include "padicfeas/sparse_poly.hpp"

namespace padicfeas {

struct Literal {
  unsigned var = 0;  // 1-based
  bool negated = false;
  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

/// A CNF formula with clauses of at most three literals.
struct Cnf3 {
  unsigned num_vars = 0;
  std::vector<Clause> clauses;

  /// Throws std::invalid_argument on an empty clause, more than three
  /// literals, or a variable index outside [1, num_vars].
  void validate() const;
  friend bool operator==(const Cnf3&, const Cnf3&) = default;
};

using Assignment = std::vector<std::uint8_t>;  // bits[i] is the value of X_{i+1}

bool satisfies(const Cnf3& formula, const Assignment& a);
bool satisfies(const Clause& clause, const Assignment& a);

/// DIMACS CNF: "c" comment lines, a "p cnf <vars> <clauses>" header, then
/// signed literals with each clause terminated by 0.
Cnf3 parse_dimacs(std::istream& in);
Cnf3 parse_dimacs_string(const std::string& text);
std::string to_dimacs(const Cnf3& formula);

/// Formal product of binomials prod (x^m - 1)^(e_m) in the context of Q_n.
/// Zero exponents are never stored.
struct BinomialProduct {
  unsigned n = 0;
  std::map<Int, long> factors;
  friend bool operator==(const BinomialProduct&, const BinomialProduct&) = default;
};

/// X_i -> x^(Q_n/p_i) - 1; the negation is (x^Q_n - 1)/(x^(Q_n/p_i) - 1).
BinomialProduct literal_poly(const Literal& lit, unsigned n);

/// The Plaisted clause polynomial (lcm of its literal polynomials) in
/// factored form. Over the clause's distinct variables S, the root set among
/// Q_n-th roots of unity is described by the truth pattern of S; Moebius
/// inversion over subsets of S gives one exponent per divisor
/// Q_n / prod_{s in U} p_s.
BinomialProduct clause_poly(const Clause& clause, unsigned n);

/// Multiplies out the positive factors in increasing m, then divides by the
/// negative ones. Throws InexactDivision when the product is not a
/// polynomial.
SparsePoly expand(const BinomialProduct& b, const DivisionCaps& caps = {});

/// One expanded clause polynomial per clause.
std::vector<SparsePoly> encode_system(const Cnf3& formula);

/// t mod Q_n with t = 0 mod p_i when A_i = 1 and t = 1 mod p_i otherwise,
/// so that w^t for a primitive Q_n-th root w vanishes on exactly the true
/// literal polynomials.
Int assignment_to_root(const Assignment& a, unsigned n);

/// A_i = 1 iff r^(Q_n/p_i) = 1 mod p. Requires Q_n | p - 1 and
/// r^Q_n = 1 mod p.
Assignment root_to_assignment(const Int& r, const Int& p, unsigned n);

}  // namespace padicfeas
