#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "torcomb/betti.hpp"
#include "torcomb/buchstaber.hpp"
#include "torcomb/complex.hpp"
#include "torcomb/families.hpp"
#include "torcomb/ring.hpp"

namespace torcomb {

using json = nlohmann::json;

// A parsed input: always a complex, plus the family presentation it came from when there is one.
struct ParsedInput {
  SimplicialComplex complex;
  std::optional<PolygonPresentation> polygon;
  std::optional<TableDiagram> table;
  std::string kind;  // "complex", "polygon", "table", "skeleton", ...
};

// Accepts {"m":..,"maximal_faces":..} or one of the family specs
// polygon / simplex / skeleton / cyclic_dual / double / table.
ParsedInput parse_input(const json& spec);
ParsedInput parse_input_text(const std::string& text);

mpq_class parse_rational(const std::string& text);
std::string rational_to_string(const mpq_class& q);

json complex_to_json(const SimplicialComplex& K);
json vset_list_to_json(const std::vector<VSet>& sets);
json assignment_to_json(const TorusAssignment& a);
TorusAssignment assignment_from_json(const json& j);
json betti_to_json(const BettiTable& t);
json table_to_json(const TableDiagram& T);
json flip_to_json(const FlipRecord& f);
json ring_to_json(const RingPresentation& rp);

struct ReportOptions {
  int threads = 0;           // <= 0: default_thread_count()
  long long node_cap = 0;    // s_real search nodes per dimension, 0 = unlimited
  int sreal_max_vertices = 12;
  int betti_max_vertices = kKoszulVertexCap;
};

json describe_report(const ParsedInput& in);
json buchstaber_report(const ParsedInput& in, const ReportOptions& opt);
json betti_report(const ParsedInput& in, const ReportOptions& opt);
json cohomology_report(const ParsedInput& in);
// position 0 lists every admissible flip.
json flip_report(const ParsedInput& in, int position);
// target: "complex", "polygon" or "table".
json convert_report(const ParsedInput& in, const std::string& target);

}  // namespace torcomb
