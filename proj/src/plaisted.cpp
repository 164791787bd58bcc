#include "padicfeas/plaisted.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

#include "padicfeas/bigmod.hpp"

namespace padicfeas {

void Cnf3::validate() const {
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    const auto& c = clauses[i];
    if (c.empty()) throw std::invalid_argument("clause " + std::to_string(i + 1) + " is empty");
    if (c.size() > 3) throw std::invalid_argument("clause " + std::to_string(i + 1) + " has more than 3 literals");
    for (const auto& lit : c) {
      if (lit.var < 1 || lit.var > num_vars) {
        throw std::invalid_argument("clause " + std::to_string(i + 1) + ": variable " + std::to_string(lit.var) +
                                    " out of range 1.." + std::to_string(num_vars));
      }
    }
  }
}

bool satisfies(const Clause& clause, const Assignment& a) {
  for (const auto& lit : clause) {
    const bool value = a.at(lit.var - 1) != 0;
    if (value != lit.negated) return true;
  }
  return false;
}

bool satisfies(const Cnf3& formula, const Assignment& a) {
  if (a.size() != formula.num_vars) throw std::invalid_argument("assignment length does not match formula");
  for (const auto& c : formula.clauses) {
    if (!satisfies(c, a)) return false;
  }
  return true;
}

Cnf3 parse_dimacs(std::istream& in) {
  Cnf3 out;
  bool have_header = false;
  long declared_clauses = 0;
  Clause current;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("DIMACS line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok[0] == 'c') continue;
    if (tok == "%") break;
    if (tok == "p") {
      std::string fmt;
      long vars = -1;
      if (have_header) fail("duplicate header");
      if (!(ls >> fmt >> vars >> declared_clauses) || fmt != "cnf" || vars < 0 || declared_clauses < 0) {
        fail("malformed header, expected 'p cnf <vars> <clauses>'");
      }
      out.num_vars = static_cast<unsigned>(vars);
      have_header = true;
      continue;
    }
    if (!have_header) fail("clause before 'p cnf' header");
    do {
      long lit = 0;
      try {
        std::size_t used = 0;
        lit = std::stol(tok, &used);
        if (used != tok.size()) fail("bad literal '" + tok + "'");
      } catch (const std::logic_error&) {
        fail("bad literal '" + tok + "'");
      }
      if (lit == 0) {
        if (current.empty()) fail("empty clause");
        out.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      const long var = lit < 0 ? -lit : lit;
      if (var > static_cast<long>(out.num_vars)) fail("variable " + std::to_string(var) + " exceeds declared count");
      if (current.size() == 3) fail("clause with more than 3 literals");
      current.push_back({static_cast<unsigned>(var), lit < 0});
    } while (ls >> tok);
  }
  if (!have_header) throw std::invalid_argument("DIMACS: missing 'p cnf' header");
  if (!current.empty()) out.clauses.push_back(std::move(current));
  if (static_cast<long>(out.clauses.size()) != declared_clauses) {
    throw std::invalid_argument("DIMACS: header declares " + std::to_string(declared_clauses) + " clauses, found " +
                                std::to_string(out.clauses.size()));
  }
  out.validate();
  return out;
}

Cnf3 parse_dimacs_string(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

std::string to_dimacs(const Cnf3& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.num_vars << ' ' << formula.clauses.size() << '\n';
  for (const auto& c : formula.clauses) {
    for (const auto& lit : c) out << (lit.negated ? "-" : "") << lit.var << ' ';
    out << "0\n";
  }
  return out.str();
}

BinomialProduct literal_poly(const Literal& lit, unsigned n) {
  if (lit.var < 1 || lit.var > n) throw std::invalid_argument("literal_poly: variable index out of range");
  const Int q = primorial(n);
  const Int m = q / from_u64(first_primes(n)[lit.var - 1]);
  BinomialProduct out{n, {}};
  if (lit.negated) {
    out.factors[q] = 1;
    out.factors[m] = -1;
  } else {
    out.factors[m] = 1;
  }
  return out;
}

BinomialProduct clause_poly(const Clause& clause, unsigned n) {
  if (clause.empty()) throw std::invalid_argument("clause_poly: empty clause");
  if (clause.size() > 3) throw std::invalid_argument("clause_poly: more than 3 literals");
  const Int q = primorial(n);
  const auto primes = first_primes(n);
  BinomialProduct out{n, {}};

  // Distinct variables with their polarity.
  std::vector<Literal> vars;
  for (const auto& lit : clause) {
    if (lit.var < 1 || lit.var > n) throw std::invalid_argument("clause_poly: variable index out of range");
    bool seen = false;
    for (const auto& v : vars) {
      if (v.var != lit.var) continue;
      seen = true;
      if (v.negated != lit.negated) {
        out.factors[q] = 1;  // X or not X: every Q_n-th root of unity
        return out;
      }
    }
    if (!seen) vars.push_back(lit);
  }

  const unsigned r = static_cast<unsigned>(vars.size());
  const unsigned cube = 1u << r;
  // truth[w]: the clause holds when exactly the variables in bitmask w are true.
  std::vector<int> truth(cube);
  for (unsigned w = 0; w < cube; ++w) {
    bool sat = false;
    for (unsigned j = 0; j < r; ++j) {
      const bool value = (w >> j) & 1u;
      if (value != vars[j].negated) sat = true;
    }
    truth[w] = sat ? 1 : 0;
  }
  // A root of unity of order d lies on x^(m_U) - 1 iff every p_s, s in U,
  // divides Q_n / d, i.e. iff every variable of U is true. Its multiplicity
  // in the product is the sum of e_U over U inside its true-set, so e is
  // the Moebius transform of the truth table.
  for (unsigned u = 0; u < cube; ++u) {
    long e = 0;
    for (unsigned w = u;; w = (w - 1) & u) {
      const int sign = (std::popcount(u) - std::popcount(w)) % 2 == 0 ? 1 : -1;
      e += sign * truth[w];
      if (w == 0) break;
    }
    if (e == 0) continue;
    Int m = q;
    for (unsigned j = 0; j < r; ++j) {
      if ((u >> j) & 1u) m /= from_u64(primes[vars[j].var - 1]);
    }
    out.factors[m] += e;
    if (out.factors[m] == 0) out.factors.erase(m);
  }
  return out;
}

SparsePoly expand(const BinomialProduct& b, const DivisionCaps& caps) {
  SparsePoly acc = SparsePoly::constant(1);
  for (const auto& [m, e] : b.factors) {
    if (m < 1) throw std::invalid_argument("expand: binomial exponent must be positive");
    for (long i = 0; i < e; ++i) acc = shift(acc, m) - acc;
  }
  for (const auto& [m, e] : b.factors) {
    const SparsePoly binomial = SparsePoly::x_pow_minus_one(m);
    for (long i = 0; i < -e; ++i) acc = exact_div(acc, binomial, caps);
  }
  return acc;
}

std::vector<SparsePoly> encode_system(const Cnf3& formula) {
  formula.validate();
  std::vector<SparsePoly> out;
  out.reserve(formula.clauses.size());
  for (const auto& c : formula.clauses) out.push_back(expand(clause_poly(c, formula.num_vars)));
  return out;
}

Int assignment_to_root(const Assignment& a, unsigned n) {
  if (a.size() != n) throw std::invalid_argument("assignment_to_root: assignment length != n");
  const auto primes = first_primes(n);
  Int t = 0, mod = 1;
  for (unsigned i = 0; i < n; ++i) {
    const Int p = from_u64(primes[i]);
    const Int want = a[i] ? 0 : 1;
    const Int k = mod_floor((want - t) * mod_inverse(mod, p), p);
    t += mod * k;
    mod *= p;
  }
  return t;
}

Assignment root_to_assignment(const Int& r, const Int& p, unsigned n) {
  const Int q = primorial(n);
  if (!mpz_divisible_p(Int(p - 1).get_mpz_t(), q.get_mpz_t())) {
    throw std::invalid_argument("root_to_assignment: Q_n does not divide p - 1");
  }
  if (mod_pow(r, q, p) != 1) throw std::invalid_argument("root_to_assignment: r is not a Q_n-th root of unity mod p");
  const auto primes = first_primes(n);
  Assignment out(n);
  for (unsigned i = 0; i < n; ++i) out[i] = mod_pow(r, q / from_u64(primes[i]), p) == 1 ? 1 : 0;
  return out;
}

}  // namespace padicfeas
