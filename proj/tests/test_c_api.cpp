#include <doctest.h>
#include <json.hpp>

#include <string>
#include <thread>

#include "torcomb/torcomb.h"

using nlohmann::json;

namespace {

struct Input {
  torcomb_input* handle = nullptr;
  explicit Input(const char* spec) { REQUIRE(torcomb_input_parse(spec, &handle) == TORCOMB_OK); }
  ~Input() { torcomb_input_free(handle); }
};

json take(char* s) {
  REQUIRE(s != nullptr);
  json j = json::parse(s);
  torcomb_string_free(s);
  return j;
}

}  // namespace

TEST_CASE("version and defaults") {
  CHECK(std::string(torcomb_version()).size() > 0);
  torcomb_options opt{};
  torcomb_options_default(&opt);
  CHECK(opt.sreal_max_vertices == 12);
  CHECK(opt.betti_max_vertices == 16);
  CHECK(opt.node_cap == 0);
  torcomb_options_default(nullptr);
}

TEST_CASE("describe through the C interface") {
  Input in(R"({"polygon":[1,1,1,1,1]})");
  char* out = nullptr;
  REQUIRE(torcomb_describe(in.handle, &out) == TORCOMB_OK);
  const json r = take(out);
  CHECK(r.at("h") == json::parse("[1,3,1]"));
  CHECK(r.at("gamma") == 3);
  CHECK(std::string(torcomb_last_error()).empty());
}

TEST_CASE("every report entry point succeeds on a polygon") {
  Input in(R"({"polygon":[2,1,2,1,1,2,1]})");
  torcomb_options opt;
  torcomb_options_default(&opt);
  opt.threads = 1;
  char* out = nullptr;
  REQUIRE(torcomb_buchstaber(in.handle, &opt, &out) == TORCOMB_OK);
  CHECK(take(out).at("s").at("value") == 3);
  REQUIRE(torcomb_betti(in.handle, &opt, &out) == TORCOMB_OK);
  CHECK(take(out).at("closed_form_match") == true);
  REQUIRE(torcomb_cohomology(in.handle, &out) == TORCOMB_OK);
  CHECK(take(out).at("conforms") == true);
  REQUIRE(torcomb_flip(in.handle, 0, &out) == TORCOMB_OK);
  CHECK(take(out).at("flips").is_array());
  REQUIRE(torcomb_convert(in.handle, "table", &out) == TORCOMB_OK);
  CHECK(take(out).contains("table"));
  // Null options fall back to defaults.
  REQUIRE(torcomb_betti(in.handle, nullptr, &out) == TORCOMB_OK);
  take(out);
}

TEST_CASE("status codes and the last error") {
  torcomb_input* h = nullptr;
  CHECK(torcomb_input_parse("{not json", &h) == TORCOMB_ERR_INPUT);
  CHECK(h == nullptr);
  CHECK(std::string(torcomb_last_error()).find("JSON") != std::string::npos);
  CHECK(torcomb_input_parse(R"({"polygon":[1,1]})", &h) == TORCOMB_ERR_INPUT);
  CHECK_FALSE(std::string(torcomb_last_error()).empty());

  Input in(R"({"polygon":[1,1,1,1,1,1,1]})");
  torcomb_options opt;
  torcomb_options_default(&opt);
  opt.sreal_max_vertices = 5;
  char* out = nullptr;
  CHECK(torcomb_buchstaber(in.handle, &opt, &out) == TORCOMB_ERR_DESK_SCALE);
  CHECK(out == nullptr);
  CHECK(std::string(torcomb_last_error()).find("m <=") != std::string::npos);

  Input simplex(R"({"simplex":3})");
  CHECK(torcomb_cohomology(simplex.handle, &out) == TORCOMB_ERR_INPUT);
  CHECK(torcomb_convert(simplex.handle, "polygon", &out) == TORCOMB_ERR_INPUT);
  CHECK(torcomb_convert(in.handle, nullptr, &out) == TORCOMB_ERR_INPUT);

  // A success clears the previous error.
  REQUIRE(torcomb_describe(in.handle, &out) == TORCOMB_OK);
  take(out);
  CHECK(std::string(torcomb_last_error()).empty());
}

TEST_CASE("null arguments are rejected") {
  torcomb_input* h = nullptr;
  char* out = nullptr;
  CHECK(torcomb_input_parse(nullptr, &h) == TORCOMB_ERR_INPUT);
  CHECK(torcomb_input_parse("{}", nullptr) == TORCOMB_ERR_INPUT);
  CHECK(torcomb_describe(nullptr, &out) == TORCOMB_ERR_INPUT);
  Input in(R"({"simplex":2})");
  CHECK(torcomb_describe(in.handle, nullptr) == TORCOMB_ERR_INPUT);
  CHECK(torcomb_buchstaber(nullptr, nullptr, &out) == TORCOMB_ERR_INPUT);
  torcomb_input_free(nullptr);
  torcomb_string_free(nullptr);
}

TEST_CASE("the last error is per thread") {
  torcomb_input* h = nullptr;
  REQUIRE(torcomb_input_parse("{", &h) == TORCOMB_ERR_INPUT);
  const std::string mine = torcomb_last_error();
  std::string other = "unset";
  std::thread t([&] {
    torcomb_input* h2 = nullptr;
    REQUIRE(torcomb_input_parse(R"({"simplex":2})", &h2) == TORCOMB_OK);
    torcomb_input_free(h2);
    other = torcomb_last_error();
  });
  t.join();
  CHECK(other.empty());
  CHECK(std::string(torcomb_last_error()) == mine);
}
