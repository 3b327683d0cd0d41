#include "torcomb/json_io.hpp"

#include <algorithm>

#include "torcomb/error.hpp"
#include "torcomb/parallel.hpp"

namespace torcomb {

namespace {

int get_int(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) fail_input(std::string("expected integer field \"") + key + "\"");
  return j.at(key).get<int>();
}

std::vector<int> int_list(const json& j, const std::string& what) {
  if (!j.is_array()) fail_input(what + " must be an array of integers");
  std::vector<int> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) fail_input(what + " must be an array of integers");
    out.push_back(x.get<int>());
  }
  return out;
}

TableDiagram table_from_json(const json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b")) fail_input("table spec needs \"a\" and \"b\" lists");
  TableDiagram T;
  for (const char* key : {"a", "b"}) {
    const auto& arr = j.at(key);
    if (!arr.is_array()) fail_input(std::string("table field \"") + key + "\" must be an array");
    for (const auto& x : arr) {
      mpq_class q;
      if (x.is_string()) q = parse_rational(x.get<std::string>());
      else if (x.is_number_integer()) q = x.get<long>();
      else fail_input("table entries must be rationals written as strings \"p/q\"");
      (key[0] == 'a' ? T.a : T.b).push_back(q);
    }
  }
  validate_table(T);
  return T;
}

long long poly_coeff_or_zero(const std::vector<long long>& v, size_t i) { return i < v.size() ? v[i] : 0; }

}  // namespace

mpq_class parse_rational(const std::string& text) {
  if (text.empty() || text.find_first_not_of("+-0123456789/") != std::string::npos ||
      std::count(text.begin(), text.end(), '/') > 1)
    fail_input("malformed rational \"" + text + "\"");
  mpq_class q;
  if (q.set_str(text, 10) != 0) fail_input("malformed rational \"" + text + "\"");
  if (q.get_den() == 0) fail_input("rational with zero denominator \"" + text + "\"");
  q.canonicalize();
  return q;
}

std::string rational_to_string(const mpq_class& q) { return q.get_str(); }

ParsedInput parse_input(const json& spec) {
  if (!spec.is_object()) fail_input("input spec must be a JSON object");
  ParsedInput in;
  if (spec.contains("maximal_faces")) {
    const int m = get_int(spec, "m");
    if (m < 1 || m > kMaxVertices) fail_input("m must be in 1..64");
    std::vector<std::vector<int>> faces;
    if (!spec.at("maximal_faces").is_array()) fail_input("maximal_faces must be an array");
    for (const auto& f : spec.at("maximal_faces")) faces.push_back(int_list(f, "each maximal face"));
    in.complex = SimplicialComplex::from_maximal_faces(m, faces);
    in.kind = "complex";
    return in;
  }
  if (spec.size() != 1) fail_input("input spec must contain exactly one family key or an explicit complex");
  const auto& [key, body] = *spec.items().begin();
  if (key == "polygon") {
    PolygonPresentation p(int_list(body, "polygon weights"));
    in.complex = polygon_complex(p);
    in.polygon = p;
  } else if (key == "simplex") {
    const int n = body.is_number_integer() ? body.get<int>() : get_int(body, "n");
    if (n < 1 || n > kMaxVertices - 1) fail_input("simplex dimension must be in 1..63");
    in.complex = boundary_simplex(n);
  } else if (key == "skeleton") {
    in.complex = simplex_skeleton(get_int(body, "m"), get_int(body, "n"));
  } else if (key == "cyclic_dual") {
    in.complex = cyclic_dual(get_int(body, "n"), get_int(body, "m"));
  } else if (key == "double") {
    if (!body.is_object() || !body.contains("base") || !body.contains("mult"))
      fail_input("double spec needs \"base\" and \"mult\"");
    const ParsedInput base = parse_input(body.at("base"));
    in.complex = doubling(base.complex, int_list(body.at("mult"), "mult"));
  } else if (key == "table") {
    TableDiagram T = table_from_json(body);
    in.complex = table_vertices(T);
    in.table = T;
  } else {
    fail_input("unknown family \"" + key + "\"");
  }
  in.kind = key;
  return in;
}

ParsedInput parse_input_text(const std::string& text) {
  json spec;
  try {
    spec = json::parse(text);
  } catch (const json::parse_error& e) {
    fail_input(std::string("malformed JSON: ") + e.what());
  }
  try {
    return parse_input(spec);
  } catch (const json::exception& e) {
    fail_input(std::string("malformed input spec: ") + e.what());
  }
}

json vset_list_to_json(const std::vector<VSet>& sets) {
  json arr = json::array();
  for (VSet s : sets) arr.push_back(labels_of(s));
  return arr;
}

json complex_to_json(const SimplicialComplex& K) {
  return {{"m", K.m()}, {"maximal_faces", vset_list_to_json(K.maximal_faces())}};
}

json assignment_to_json(const TorusAssignment& a) {
  return {{"ring", a.ring == Ring::GF2 ? "GF2" : "Int"}, {"r", a.r}, {"vectors", a.vectors}};
}

TorusAssignment assignment_from_json(const json& j) {
  TorusAssignment a;
  try {
    const std::string ring = j.at("ring").get<std::string>();
    if (ring == "GF2") a.ring = Ring::GF2;
    else if (ring == "Int") a.ring = Ring::Int;
    else fail_input("certificate ring must be \"GF2\" or \"Int\"");
    a.r = j.at("r").get<int>();
    a.vectors = j.at("vectors").get<std::vector<std::vector<long long>>>();
  } catch (const json::exception& e) {
    fail_input(std::string("malformed certificate: ") + e.what());
  }
  return a;
}

json betti_to_json(const BettiTable& t) {
  json entries = json::array();
  for (const auto& [key, rank] : t.entries()) entries.push_back({{"q", key.first}, {"p2", key.second}, {"rank", rank}});
  return {{"entries", entries}};
}

json table_to_json(const TableDiagram& T) {
  json a = json::array(), b = json::array();
  for (const auto& q : T.a) a.push_back(rational_to_string(q));
  for (const auto& q : T.b) b.push_back(rational_to_string(q));
  return {{"a", a}, {"b", b}};
}

json flip_to_json(const FlipRecord& f) {
  const auto h_before = h_closed_form(f.before);
  const auto h_after = h_closed_form(f.after);
  std::vector<long long> delta;
  for (size_t i = 0; i < std::max(h_before.size(), h_after.size()); ++i)
    delta.push_back(poly_coeff_or_zero(h_after, i) - poly_coeff_or_zero(h_before, i));
  return {{"position", f.position},
          {"flip_type", f.flip_type},
          {"before", f.before.weights()},
          {"after", f.after.weights()},
          {"h_before", h_before},
          {"h_after", h_after},
          {"h_change", delta},
          {"h_change_polynomial", f.h_change.to_string()},
          {"verified", true}};
}

json ring_to_json(const RingPresentation& rp) {
  json gens = json::array();
  for (const auto& g : rp.generators)
    gens.push_back({{"name", g.name},
                    {"bidegree", {g.neg_q, g.p2}},
                    {"multidegree", labels_of(g.multidegree)},
                    {"representative", g.representative.to_string()}});
  json prods = json::array();
  for (const auto& e : rp.products) {
    if (e.value.empty() && e.expected == "0" && e.conforms) continue;  // zero products are implied
    json value = json::array();
    for (const auto& [name, coeff] : e.value) value.push_back({{"generator", name}, {"coefficient", coeff}});
    prods.push_back({{"left", e.left}, {"right", e.right}, {"value", value}, {"expected", e.expected},
                     {"conforms", e.conforms}});
  }
  return {{"k", rp.k},
          {"generators", gens},
          {"nonzero_products", prods},
          {"products_checked", rp.products.size()},
          {"additive_rank", rp.additive_rank},
          {"torsion_free", rp.torsion_free},
          {"generators_form_basis", rp.generators_form_basis},
          {"conforms", rp.conforms},
          {"mismatches", rp.mismatches}};
}

json describe_report(const ParsedInput& in) {
  const auto& K = in.complex;
  json r;
  r["kind"] = in.kind;
  r["m"] = K.m();
  r["pure"] = K.is_pure();
  if (K.is_pure()) r["n"] = K.n();
  r["f"] = f_vector(K);
  if (K.is_pure()) r["h"] = h_vector(K);
  r["gamma"] = chromatic_number(K);
  const auto fd = flag_defect(K);
  r["flag"] = fd.is_flag;
  r["least_k_flag"] = fd.least_k_flag;
  const auto mnf = minimal_non_faces(K);
  r["minimal_non_faces"] = vset_list_to_json(mnf);
  r["minimal_non_face_count"] = mnf.size();
  r["maximal_faces"] = vset_list_to_json(K.maximal_faces());
  if (in.polygon) {
    r["polygon"] = in.polygon->weights();
    r["k"] = in.polygon->k();
  }
  if (in.table) r["table"] = table_to_json(*in.table);
  return r;
}

json buchstaber_report(const ParsedInput& in, const ReportOptions& opt) {
  const auto& K = in.complex;
  if (K.m() > opt.sreal_max_vertices)
    fail_desk_scale("s_real search is limited to m <= " + std::to_string(opt.sreal_max_vertices) +
                    " (raise the vertex cap to override)");
  SearchOptions so;
  so.threads = opt.threads > 0 ? opt.threads : default_thread_count();
  so.node_cap = opt.node_cap;
  const SRange range = s_int(K, so);
  json prov = json::array();
  for (const auto& [name, value] : range.provenance) prov.push_back({{"bound", name}, {"value", value}});
  json r;
  r["m"] = K.m();
  r["n"] = K.n();
  r["s_real"] = range.s_real;
  r["s_real_certificate"] = assignment_to_json(range.real_certificate);
  r["s"] = {{"lower", range.lower}, {"upper", range.upper}, {"exact", range.exact}};
  if (range.exact) r["s"]["value"] = range.lower;
  if (range.certificate) r["s_certificate"] = assignment_to_json(*range.certificate);
  if (range.matrix_form) r["s_matrix_form"] = *range.matrix_form;
  r["provenance"] = prov;
  return r;
}

json betti_report(const ParsedInput& in, const ReportOptions& opt) {
  const auto& K = in.complex;
  const BettiTable table = koszul_betti(K, opt.threads, opt.betti_max_vertices);
  json r = betti_to_json(table);
  r["m"] = K.m();
  long long total = 0;
  for (const auto& [key, rank] : table.entries()) total += rank;
  r["total_rank"] = total;
  if (K.is_pure()) {
    const Poly lhs = table.euler_polynomial();
    const auto h = h_vector(K);
    Poly rhs;
    for (size_t i = 0; i < h.size(); ++i) rhs = rhs + Poly::monomial(h[i], 2 * static_cast<int>(i));
    for (int i = 0; i < K.m() - K.n(); ++i) rhs = rhs * Poly({1, 0, -1});
    r["euler_identity"] = lhs == rhs;
  }
  if (in.polygon) {
    const bool match = polygon_betti_closed_form(*in.polygon) == table;
    r["closed_form_match"] = match;
    if (!match) fail_consistency("Koszul Betti numbers disagree with the polygon closed form");
    if (!r["euler_identity"].get<bool>()) fail_consistency("Euler/h identity fails on a polygon complex");
  }
  return r;
}

json cohomology_report(const ParsedInput& in) {
  if (!in.polygon) fail_input("cohomology needs a polygon presentation input");
  const RingPresentation rp = product_table(*in.polygon);
  if (!rp.conforms) {
    std::string msg = "product table does not match the expected multiplication:";
    for (const auto& mm : rp.mismatches) msg += " [" + mm + "]";
    fail_consistency(msg);
  }
  json r = ring_to_json(rp);
  r["polygon"] = in.polygon->weights();
  return r;
}

json flip_report(const ParsedInput& in, int position) {
  if (!in.polygon) fail_input("flip needs a polygon presentation input");
  json r;
  r["polygon"] = in.polygon->weights();
  json flips = json::array();
  if (position != 0) {
    flips.push_back(flip_to_json(polygon_flip(*in.polygon, position)));
  } else {
    for (const auto& f : admissible_flips(*in.polygon)) flips.push_back(flip_to_json(f));
  }
  r["flips"] = flips;
  return r;
}

json convert_report(const ParsedInput& in, const std::string& target) {
  json r;
  r["from"] = in.kind;
  r["to"] = target;
  if (target == "complex") {
    r["complex"] = complex_to_json(in.complex);
  } else if (target == "table") {
    if (!in.polygon) fail_input("conversion to a table needs a polygon input");
    const TableDiagram T = table_from_polygon(*in.polygon);
    if (!isomorphic(table_vertices(T), in.complex)) fail_consistency("staircase table is not equivalent to the polygon");
    r["table"] = table_to_json(T);
  } else if (target == "polygon") {
    if (in.polygon) {
      r["polygon"] = in.polygon->weights();
    } else if (in.table) {
      const PolygonPresentation p = polygon_from_table(*in.table);
      if (!isomorphic(polygon_complex(p), in.complex)) fail_consistency("table and its polygon are not equivalent");
      r["polygon"] = p.weights();
    } else {
      fail_input("conversion to a polygon needs a polygon or table input");
    }
  } else {
    fail_input("unknown conversion target \"" + target + "\" (use complex, polygon or table)");
  }
  return r;
}

}  // namespace torcomb
