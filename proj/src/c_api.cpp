#include "torcomb/torcomb.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "torcomb/error.hpp"
#include "torcomb/json_io.hpp"

struct torcomb_input {
  torcomb::ParsedInput parsed;
};

namespace {

thread_local std::string last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

torcomb::ReportOptions to_report_options(const torcomb_options* o) {
  torcomb::ReportOptions r;
  if (o) {
    r.threads = o->threads;
    r.node_cap = o->node_cap;
    r.sreal_max_vertices = o->sreal_max_vertices;
    r.betti_max_vertices = o->betti_max_vertices;
  }
  return r;
}

template <typename Fn>
torcomb_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return TORCOMB_OK;
  } catch (const torcomb::Error& e) {
    last_error = e.what();
    return static_cast<torcomb_status>(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("malformed JSON: ") + e.what();
    return TORCOMB_ERR_INPUT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TORCOMB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TORCOMB_ERR_INTERNAL;
  }
}

template <typename Fn>
torcomb_status emit(const torcomb_input* input, char** out_json, Fn&& report) {
  return guarded([&] {
    if (!input || !out_json) torcomb::fail_input("null argument");
    *out_json = nullptr;
    *out_json = dup_string(report(input->parsed).dump());
  });
}

}  // namespace

extern "C" {

const char* torcomb_version(void) { return "1.0.0"; }

const char* torcomb_last_error(void) { return last_error.c_str(); }

void torcomb_options_default(torcomb_options* options) {
  if (!options) return;
  const torcomb::ReportOptions d;
  options->threads = d.threads;
  options->node_cap = d.node_cap;
  options->sreal_max_vertices = d.sreal_max_vertices;
  options->betti_max_vertices = d.betti_max_vertices;
}

torcomb_status torcomb_input_parse(const char* spec_json, torcomb_input** out) {
  return guarded([&] {
    if (!spec_json || !out) torcomb::fail_input("null argument");
    *out = nullptr;
    auto* input = new torcomb_input{torcomb::parse_input_text(spec_json)};
    *out = input;
  });
}

void torcomb_input_free(torcomb_input* input) { delete input; }

torcomb_status torcomb_describe(const torcomb_input* input, char** out_json) {
  return emit(input, out_json, [](const torcomb::ParsedInput& in) { return torcomb::describe_report(in); });
}

torcomb_status torcomb_buchstaber(const torcomb_input* input, const torcomb_options* options, char** out_json) {
  const auto opt = to_report_options(options);
  return emit(input, out_json, [&](const torcomb::ParsedInput& in) { return torcomb::buchstaber_report(in, opt); });
}

torcomb_status torcomb_betti(const torcomb_input* input, const torcomb_options* options, char** out_json) {
  const auto opt = to_report_options(options);
  return emit(input, out_json, [&](const torcomb::ParsedInput& in) { return torcomb::betti_report(in, opt); });
}

torcomb_status torcomb_cohomology(const torcomb_input* input, char** out_json) {
  return emit(input, out_json, [](const torcomb::ParsedInput& in) { return torcomb::cohomology_report(in); });
}

torcomb_status torcomb_flip(const torcomb_input* input, int position, char** out_json) {
  return emit(input, out_json, [&](const torcomb::ParsedInput& in) { return torcomb::flip_report(in, position); });
}

torcomb_status torcomb_convert(const torcomb_input* input, const char* target, char** out_json) {
  const std::string t = target ? target : "";
  return emit(input, out_json, [&](const torcomb::ParsedInput& in) { return torcomb::convert_report(in, t); });
}

void torcomb_string_free(char* s) { std::free(s); }

}  // extern "C"
