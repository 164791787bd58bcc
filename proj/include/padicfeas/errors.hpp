#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace padicfeas {

// A configured resource limit (factoring budget, degree cap, term cap,
// sieve cap, candidate cap) was hit. Never accompanied by a partial answer.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A randomized or bounded search ran out of trials without success.
class SearchExhausted : public CapExceeded {
 public:
  SearchExhausted(const std::string& what, std::uint64_t trials)
      : CapExceeded(what), trials_(trials) {}
  std::uint64_t trials() const noexcept { return trials_; }

 private:
  std::uint64_t trials_;
};

// exact_div found a nonzero remainder.
class InexactDivision : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace padicfeas
