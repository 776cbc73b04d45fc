#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "resq/logic.hpp"
#include "resq/order.hpp"
#include "resq/pomonoid.hpp"

namespace resq::io {

using Json = nlohmann::ordered_json;

// Objects one key per line, arrays of scalars on one line when it fits,
// anything else one element per line. Always ends with a newline.
std::string dump(const Json& j);
Json parse_json(const std::string& text, const std::string& origin = "<input>");
std::string read_file(const std::string& path);
Json read_json(const std::string& path);

std::uint64_t fnv1a(const std::string& bytes);
std::string hex64(std::uint64_t v);

enum class Kind { Poset, Pomonoid, ResiduatedLattice, HeytingRL, PartialAlgebra };
const char* to_string(Kind k);

// An algebra file. The kind is the richest structure the fields support:
// elements with covers make a poset; mul and unit add a pomonoid, promoted
// to a residuated lattice when the order is a lattice with all residuals,
// and to a Heyting RL when it is moreover integral with a Heyting reduct.
// A signature field makes a partial algebra instead.
struct AlgebraFile {
  Kind kind = Kind::Poset;
  Poset order;
  std::optional<Pomonoid> monoid;
  std::optional<ResiduatedLattice> rl;
  std::optional<Index> d;  // dualizing element, when given
  PartialAlgebra partial;
  bool explicit_residuals = false;
  bool explicit_arrow = false;
};

AlgebraFile parse_algebra(const Json& j);
AlgebraFile load_algebra(const std::string& path);
Json to_json(const AlgebraFile& a);
AlgebraFile algebra_file(const ResiduatedLattice& l);

PartialAlgebra parse_partial(const Json& j);
Json to_json(const PartialAlgebra& a);

Signature parse_signature(const Json& j);
Json to_json(const Signature& sig);

// {"signature": {...}, "axioms": ["lhs = rhs", ...]}
Theory parse_theory(const Json& j);
Json to_json(const Theory& th);

// {"signature": {...}, "vars": [...], "relations": [...]}
struct PresentationFile {
  Signature sig;
  Presentation pres;
};
PresentationFile parse_presentation(const Json& j);
Json to_json(const PresentationFile& p);

// {"premises": [...], "conclusion": "lhs = rhs"}; parsed against a signature.
QuasiEquation parse_quasi(const Signature& sig, const Json& j);
Json to_json(const Signature& sig, const QuasiEquation& q);

// {"sets": [["a", "b"], ...]}
std::vector<std::vector<std::string>> parse_sets(const Json& j);
Json sets_to_json(const std::vector<std::vector<std::string>>& sets);

Json table_json(const Poset& names, const Table& t);
Json set_json(const Poset& base, const ElementSet& s);

// Serializes any file kind the tool reads, dispatching on its fields.
std::string normalize(const std::string& text, const std::string& origin = "<input>");

struct Report {
  std::string command;
  std::string status;
  std::string input_digest;
  Json result = Json::object();
};

// The digest covers every field above the digest line.
std::string render(const Report& r, const std::string& version);

}  // namespace resq::io
