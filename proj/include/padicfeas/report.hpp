#pragma once

#include <string>

#include <json.hpp>

#include "padicfeas/padic.hpp"
#include "padicfeas/plaisted.hpp"
#include "padicfeas/primes.hpp"
#include "padicfeas/reduce.hpp"
#include "padicfeas/sparse_poly.hpp"

namespace padicfeas {

// One structured text format for every file the library reads or writes.
// Keys keep insertion order so output is byte-stable. Arbitrary-precision
// integers are decimal strings.
using Json = nlohmann::ordered_json;

// Throws std::invalid_argument on any schema violation.
Json int_to_json(const Int& v);
Int int_from_json(const Json& j, const char* what);

// {"terms": [[coeff, exp], ...]} with exponents strictly increasing and
// coefficients nonzero.
Json poly_to_json(const SparsePoly& f);
SparsePoly poly_from_json(const Json& j);
SparsePoly parse_poly_text(const std::string& text);

Json cnf_to_json(const Cnf3& formula);
Cnf3 cnf_from_json(const Json& j);

Json decision_to_json(const PadicDecision& d);
Json prime_to_json(const ProgressionPrime& p);
Json density_to_json(const DensityReport& r);

Json transcript_to_json(const ReductionTranscript& t);
ReductionTranscript transcript_from_json(const Json& j);

// Pretty-printed with a trailing newline.
std::string dump_report(const Json& j);
Json parse_report(const std::string& text);

}  // namespace padicfeas
