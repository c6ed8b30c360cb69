#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "trimgraph.h"

namespace {
std::string take(char* s) {
  REQUIRE(s);
  std::string r = s;
  tg_string_free(s);
  return r;
}
}  // namespace

TEST_CASE("graph round trip through the C interface") {
  tg_graph* g = nullptr;
  REQUIRE(tg_graph_parse("vertex v\nedge e v v\n", &g) == TG_OK);
  char* text = nullptr;
  REQUIRE(tg_graph_to_text(g, &text) == TG_OK);
  std::string t = take(text);
  tg_graph* g2 = nullptr;
  REQUIRE(tg_graph_parse(t.c_str(), &g2) == TG_OK);
  char* json = nullptr;
  REQUIRE(tg_graph_to_json(g2, &json) == TG_OK);
  tg_graph* g3 = nullptr;
  REQUIRE(tg_graph_from_json(take(json).c_str(), &g3) == TG_OK);
  char* text3 = nullptr;
  REQUIRE(tg_graph_to_text(g3, &text3) == TG_OK);
  CHECK(take(text3) == t);
  tg_graph_free(g);
  tg_graph_free(g2);
  tg_graph_free(g3);
}

TEST_CASE("invalid arguments set the error string") {
  tg_graph* g = nullptr;
  CHECK(tg_graph_parse(nullptr, &g) == TG_ERR_INVALID);
  CHECK(std::strlen(tg_last_error()) > 0);
  CHECK(tg_graph_parse("edge only", &g) == TG_ERR_INVALID);
  CHECK(std::string(tg_last_error()).find("edge") != std::string::npos);

  char* out = nullptr;
  CHECK(tg_catalog_show("nope", 0, &out) == TG_ERR_INVALID);
  CHECK(out == nullptr);
  CHECK(tg_verify_qlpb(1, 3, &out) == TG_ERR_INVALID);  // l must be >= 2

  REQUIRE(tg_catalog_graph("o2", 0, &g) == TG_OK);
  CHECK(tg_check_trim(g, "missing", &out) == TG_ERR_INVALID);
  CHECK(tg_k1_unitary(g, "w", &out) == TG_ERR_INVALID);  // two loops at w
  tg_graph_free(g);
}

TEST_CASE("trim and extension round trip") {
  tg_graph* e = nullptr;
  REQUIRE(tg_catalog_graph("cuntz-ext", 0, &e) == TG_OK);
  char* cert = nullptr;
  REQUIRE(tg_check_trim(e, "vbar", &cert) == TG_OK);
  nlohmann::json j = nlohmann::json::parse(take(cert));
  CHECK(j["trimmable"] == true);

  tg_graph *ep = nullptr, *ed = nullptr;
  REQUIRE(tg_trim(e, "vbar", &ep, &ed) == TG_OK);
  char* edj = nullptr;
  REQUIRE(tg_graph_to_text(ed, &edj) == TG_OK);
  tg_graph* o2 = nullptr;
  REQUIRE(tg_catalog_graph("o2", 0, &o2) == TG_OK);
  char* o2t = nullptr;
  REQUIRE(tg_graph_to_text(o2, &o2t) == TG_OK);
  CHECK(take(edj) == take(o2t));  // E'' is the two-loop graph again

  // extending the quotient by a loop vertex rebuilds the extension
  const char* attach[] = {"w"};
  tg_graph* back = nullptr;
  REQUIRE(tg_extend_loop(o2, "vbar", attach, 1, &back) == TG_OK);
  char *a = nullptr, *b = nullptr;
  REQUIRE(tg_graph_to_text(back, &a) == TG_OK);
  REQUIRE(tg_graph_to_text(e, &b) == TG_OK);
  CHECK(take(a) == take(b));

  tg_graph* sink = nullptr;
  REQUIRE(tg_extend_sink(o2, "vbar", attach, 1, &sink) == TG_OK);
  char* st = nullptr;
  REQUIRE(tg_graph_to_text(sink, &st) == TG_OK);
  CHECK(take(st).find("vbar_loop") == std::string::npos);

  tg_graph_free(e);
  tg_graph_free(ep);
  tg_graph_free(ed);
  tg_graph_free(o2);
  tg_graph_free(back);
  tg_graph_free(sink);
}

TEST_CASE("K-theory reports") {
  tg_graph* g = nullptr;
  REQUIRE(tg_catalog_graph("lens", 3, &g) == TG_OK);
  char* out = nullptr;
  REQUIRE(tg_k_groups(g, &out) == TG_OK);
  nlohmann::json j = nlohmann::json::parse(take(out));
  CHECK(j["k0"]["rank"] == 3);
  CHECK(j["k1"]["rank"] == 3);

  REQUIRE(tg_fixed_k0(g, "v1_2", 8, &out) == TG_OK);
  j = nlohmann::json::parse(take(out));
  CHECK(j["solved"] == true);
  CHECK(j["group"] == "Z^4");
  tg_graph_free(g);

  REQUIRE(tg_catalog_graph("cuntz-ext", 0, &g) == TG_OK);
  REQUIRE(tg_k1_unitary(g, "vbar", &out) == TG_OK);
  j = nlohmann::json::parse(take(out));
  CHECK(j["is_unitary"] == true);
  CHECK(j["in_kernel"] == true);

  REQUIRE(tg_fixed_k0(g, "vbar", 8, &out) == TG_OK);
  j = nlohmann::json::parse(take(out));
  CHECK(j["group"] == "Z + Z[1/2]");
  tg_graph_free(g);
}

TEST_CASE("verification reports are written on failure too") {
  // a trimmable graph where trimming is fine but o2 has no trim vertex
  tg_graph* g = nullptr;
  REQUIRE(tg_catalog_graph("o2", 0, &g) == TG_OK);
  char* out = nullptr;
  CHECK(tg_check_trim(g, "w", &out) == TG_ERR_FAILED);
  nlohmann::json j = nlohmann::json::parse(take(out));
  CHECK(j["trimmable"] == false);
  tg_graph_free(g);

  REQUIRE(tg_catalog_verify("podles", 0, &out) == TG_OK);
  j = nlohmann::json::parse(take(out));
  CHECK(j["passed"] == true);
}

TEST_CASE("pullback, milnor, and chain verbs succeed on catalog inputs") {
  tg_graph* g = nullptr;
  REQUIRE(tg_catalog_graph("sphere", 2, &g) == TG_OK);
  char* out = nullptr;
  REQUIRE(tg_pullback(g, "v2", 2, 2, &out) == TG_OK);
  nlohmann::json j = nlohmann::json::parse(take(out));
  CHECK(j["passed"] == true);

  REQUIRE(tg_milnor(g, "v2", &out) == TG_OK);
  j = nlohmann::json::parse(take(out));
  CHECK(j["passed"] == true);
  tg_graph_free(g);

  REQUIRE(tg_verify_qlpb(2, 3, &out) == TG_OK);
  j = nlohmann::json::parse(take(out));
  CHECK(j["passed"] == true);

  REQUIRE(tg_projective_chain(3, &out) == TG_OK);
  j = nlohmann::json::parse(take(out));
  CHECK(j["k0"] == "Z^4");
  REQUIRE(tg_teardrop_chain(3, &out) == TG_OK);
  j = nlohmann::json::parse(take(out));
  CHECK(j["ok"] == true);
  CHECK(j["stages"].size() == 3);
}

TEST_CASE("repeated calls are deterministic") {
  char *a = nullptr, *b = nullptr;
  REQUIRE(tg_catalog_show("lens", 2, &a) == TG_OK);
  REQUIRE(tg_catalog_show("lens", 2, &b) == TG_OK);
  CHECK(take(a) == take(b));
  REQUIRE(tg_catalog_list(&a) == TG_OK);
  nlohmann::json j = nlohmann::json::parse(take(a));
  CHECK(j.size() >= 14);
}
