// torcomb command-line tool, a thin client of the C library.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "torcomb/torcomb.h"

using nlohmann::json;

namespace {

struct CommonArgs {
  std::string spec;
  std::string polygon;
  std::string format = "text";
  int threads = 0;
  long long node_cap = 0;
  int max_m_sreal = 0;
  int max_m_betti = 0;
  int position = 0;
  std::string target = "complex";
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("spec", a.spec, "JSON spec: inline text, a file path, or - for stdin");
  cmd->add_option("--polygon", a.polygon, "Polygon weights as a comma list, e.g. 1,1,1,1,1");
  cmd->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--threads", a.threads, "Worker threads (default: TORCOMB_THREADS or all cores)");
}

std::string read_spec(const CommonArgs& a) {
  if (!a.polygon.empty()) {
    if (!a.spec.empty()) throw CLI::ValidationError("give either a spec or --polygon, not both");
    json weights = json::array();
    std::stringstream ss(a.polygon);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        size_t used = 0;
        const int w = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        weights.push_back(w);
      } catch (const std::exception&) {
        throw CLI::ValidationError("--polygon expects comma-separated integers, got \"" + a.polygon + "\"");
      }
    }
    return json{{"polygon", weights}}.dump();
  }
  if (a.spec.empty()) throw CLI::ValidationError("missing input: give a JSON spec, a file, - or --polygon");
  if (a.spec == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  const auto first = a.spec.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && a.spec[first] == '{') return a.spec;
  std::ifstream in(a.spec);
  if (!in) throw CLI::ValidationError("cannot read spec file \"" + a.spec + "\"");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_number(); })) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].dump();
    return s + ")";
  }
  return v.dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string betti_grid(const json& entries) {
  std::set<int> rows, cols;
  std::map<std::pair<int, int>, long long> cell;
  for (const auto& e : entries) {
    rows.insert(e["q"].get<int>());
    cols.insert(e["p2"].get<int>());
    cell[{e["q"].get<int>(), e["p2"].get<int>()}] = e["rank"].get<long long>();
  }
  std::ostringstream os;
  const int width = 5;
  os << "  q\\2p";
  for (int c : cols) os << std::setw(width) << c;
  os << "\n";
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    os << std::setw(6) << *it;
    for (int c : cols) {
      auto f = cell.find({*it, c});
      os << std::setw(width) << (f == cell.end() ? std::string(".") : std::to_string(f->second));
    }
    os << "\n";
  }
  return os.str();
}

void print_text(const json& r) {
  for (const auto& [key, value] : r.items()) {
    if (key == "entries") {
      std::cout << "betti:\n" << betti_grid(value);
    } else if (key == "flips") {
      for (const auto& f : value)
        std::cout << "flip at " << f["position"] << ": type " << f["flip_type"] << ", " << scalar_text(f["before"])
                  << " -> " << scalar_text(f["after"]) << ", h change " << f["h_change_polynomial"].get<std::string>()
                  << "\n";
    } else if (key == "provenance") {
      std::cout << "bounds:\n";
      for (const auto& b : value) std::cout << "  " << b["bound"].get<std::string>() << " = " << b["value"] << "\n";
    } else if (value.is_object() && key == "s") {
      std::cout << "s: ";
      if (value["exact"].get<bool>()) std::cout << value["value"] << " (exact)\n";
      else std::cout << "[" << value["lower"] << ", " << value["upper"] << "]\n";
    } else {
      std::cout << key << ": " << scalar_text(value) << "\n";
    }
  }
}

void print_csv(const json& r) {
  if (r.contains("entries")) {
    std::cout << "q,p2,rank\n";
    for (const auto& e : r["entries"]) std::cout << e["q"] << "," << e["p2"] << "," << e["rank"] << "\n";
    return;
  }
  if (r.contains("flips")) {
    std::cout << "position,flip_type,before,after,h_change\n";
    for (const auto& f : r["flips"])
      std::cout << f["position"] << "," << f["flip_type"] << "," << csv_field(scalar_text(f["before"])) << ","
                << csv_field(scalar_text(f["after"])) << "," << csv_field(scalar_text(f["h_change"])) << "\n";
    return;
  }
  std::cout << "key,value\n";
  for (const auto& [key, value] : r.items()) std::cout << csv_field(key) << "," << csv_field(scalar_text(value)) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorial invariants of simple polytopes and their moment-angle complexes"};
  app.set_version_flag("--version", std::string(torcomb_version()));
  app.require_subcommand(1);

  CommonArgs args;
  auto* describe = app.add_subcommand("describe", "f/h-vectors, chromatic number, flag defect, minimal non-faces");
  auto* buchstaber = app.add_subcommand("buchstaber", "Real Buchstaber invariant and bounds for the integral one");
  auto* betti = app.add_subcommand("betti", "Bigraded Betti numbers");
  auto* cohomology = app.add_subcommand("cohomology", "Cohomology ring generators and product table (polygons)");
  auto* flip = app.add_subcommand("flip", "Polygon flips with h-change verification");
  auto* convert = app.add_subcommand("convert", "Convert between polygon, table and explicit complex");
  for (auto* cmd : {describe, buchstaber, betti, cohomology, flip, convert}) add_common(cmd, args);
  buchstaber->add_option("--node-cap", args.node_cap, "Search node cap per dimension (0 = none)")
      ->check(CLI::NonNegativeNumber);
  buchstaber->add_option("--max-m", args.max_m_sreal, "Raise the vertex cap for the s_real search (slow)")
      ->check(CLI::PositiveNumber);
  betti->add_option("--max-m", args.max_m_betti, "Raise the vertex cap for Betti numbers (slow)")
      ->check(CLI::PositiveNumber);
  flip->add_option("--position", args.position, "1-based flip position (default: all admissible)")
      ->check(CLI::NonNegativeNumber);
  convert->add_option("--to", args.target, "Target form")->check(CLI::IsMember({"complex", "polygon", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string spec;
  try {
    spec = read_spec(args);
  } catch (const CLI::Error& e) {
    std::cerr << "torcomb: error: " << e.what() << "\n";
    return 2;
  }

  torcomb_input* input = nullptr;
  torcomb_status st = torcomb_input_parse(spec.c_str(), &input);
  char* out = nullptr;
  if (st == TORCOMB_OK) {
    torcomb_options opt;
    torcomb_options_default(&opt);
    opt.threads = args.threads;
    opt.node_cap = args.node_cap;
    if (args.max_m_sreal > 0) opt.sreal_max_vertices = args.max_m_sreal;
    if (args.max_m_betti > 0) opt.betti_max_vertices = args.max_m_betti;
    if (describe->parsed()) st = torcomb_describe(input, &out);
    else if (buchstaber->parsed()) st = torcomb_buchstaber(input, &opt, &out);
    else if (betti->parsed()) st = torcomb_betti(input, &opt, &out);
    else if (cohomology->parsed()) st = torcomb_cohomology(input, &out);
    else if (flip->parsed()) st = torcomb_flip(input, args.position, &out);
    else st = torcomb_convert(input, args.target.c_str(), &out);
  }
  if (st != TORCOMB_OK) {
    std::cerr << "torcomb: error: " << torcomb_last_error() << "\n";
    torcomb_input_free(input);
    return static_cast<int>(st);
  }
  const json report = json::parse(out);
  torcomb_string_free(out);
  torcomb_input_free(input);
  if (args.format == "json") std::cout << report.dump(2) << "\n";
  else if (args.format == "csv") print_csv(report);
  else print_text(report);
  return 0;
}
