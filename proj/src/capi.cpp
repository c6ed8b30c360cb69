#include "trimgraph.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "json.hpp"
#include "trimgraph/catalog.hpp"
#include "trimgraph/graph.hpp"
#include "trimgraph/ktheory.hpp"
#include "trimgraph/mv.hpp"
#include "trimgraph/trim.hpp"

using namespace trimgraph;

struct tg_graph {
  Graph g;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& ex) {
    g_last_error = ex.what();
    return TG_ERR_INVALID;
  }
}

int require(const void* p, const char* what) {
  if (p) return TG_OK;
  g_last_error = std::string("null ") + what;
  return TG_ERR_INVALID;
}

nlohmann::json cert_json(const Graph& g, const TrimCertificate& c) {
  nlohmann::json j;
  j["vertex"] = g.vertex_id(c.vbar);
  j["t1"] = c.t1_holds;
  j["t2"] = c.t2_holds;
  j["trimmable"] = c.ok();
  if (c.ebar >= 0) j["loop"] = g.edge(c.ebar).id;
  j["witnesses"] = c.witnesses;
  return j;
}

nlohmann::json milnor_json(const MilnorResult& m, const std::string& lift) {
  nlohmann::json j;
  j["lift"] = lift;
  j["u_unitary"] = m.u_unitary;
  j["lifts_ok"] = m.lifts_ok;
  j["pairs_agree"] = m.pairs_agree;
  j["self_adjoint"] = m.self_adjoint;
  j["idempotent"] = m.idempotent;
  j["expected_shape"] = m.expected_shape;
  j["top_left"] = m.top_left.to_string();
  j["defect"] = m.defect.to_string();
  if (!m.report.empty()) j["report"] = m.report;
  j["passed"] = m.passed();
  return j;
}

nlohmann::json fixed_json(const FixedK0Result& r, const std::string& fix_label) {
  nlohmann::json j;
  j["solved"] = r.solved;
  j["finitely_generated"] = r.is_fg;
  if (r.is_fg) j["group"] = r.group.to_string();
  if (!r.label.empty()) j["group"] = r.label;
  j["fixed_k0_of_quotient"] = fix_label;
  j["connecting_cokernel"] = r.connecting_cokernel.to_string();
  j["provenance"] = r.provenance;
  return j;
}

nlohmann::json chain_json(const ChainReport& c) {
  nlohmann::json j;
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : c.stages) {
    nlohmann::json js;
    js["param"] = s.param;
    js["k0"] = s.result.is_fg ? s.result.group.to_string() : s.result.label;
    js["milnor_passed"] = s.milnor.passed();
    js["connecting_rank_one"] = s.connecting_rank_one;
    js["generators_span_kernel"] = s.generators_span_kernel;
    js["exact"] = s.exact;
    js["ok"] = s.ok;
    stages.push_back(js);
  }
  j["stages"] = stages;
  j["k0"] = c.k0.to_string();
  j["generators"] = c.k0.ambient_labels;
  j["ok"] = c.ok;
  return j;
}

}  // namespace

extern "C" {

const char* tg_last_error(void) { return g_last_error.c_str(); }

void tg_string_free(char* s) { std::free(s); }

int tg_graph_parse(const char* text, tg_graph** out) {
  if (int e = require(text, "text")) return e;
  if (int e = require(out, "output")) return e;
  return guarded([&] {
    *out = new tg_graph{Graph::parse(text)};
    return TG_OK;
  });
}

int tg_graph_from_json(const char* json_text, tg_graph** out) {
  if (int e = require(json_text, "text")) return e;
  if (int e = require(out, "output")) return e;
  return guarded([&] {
    *out = new tg_graph{Graph::from_json_text(json_text)};
    return TG_OK;
  });
}

void tg_graph_free(tg_graph* g) { delete g; }

int tg_graph_to_text(const tg_graph* g, char** out) {
  if (int e = require(g, "graph")) return e;
  if (int e = require(out, "output")) return e;
  return guarded([&] {
    *out = dup_string(g->g.to_text());
    return TG_OK;
  });
}

int tg_graph_to_json(const tg_graph* g, char** out) {
  if (int e = require(g, "graph")) return e;
  if (int e = require(out, "output")) return e;
  return guarded([&] {
    *out = dup_string(g->g.to_json_text());
    return TG_OK;
  });
}

int tg_catalog_list(char** out) {
  if (int e = require(out, "output")) return e;
  return guarded([&] {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& e : catalog_entries()) {
      nlohmann::json je;
      je["name"] = e.name;
      je["summary"] = e.summary;
      je["has_graph"] = e.has_graph;
      if (e.parametric) {
        je["param"] = e.param_name;
        je["min_param"] = e.min_param;
      }
      j.push_back(je);
    }
    *out = dup_string(j.dump());
    return TG_OK;
  });
}

int tg_catalog_show(const char* name, int param, char** out) {
  if (int e = require(name, "name")) return e;
  if (int e = require(out, "output")) return e;
  return guarded([&] {
    *out = dup_string(catalog_show(name, param));
    return TG_OK;
  });
}

int tg_catalog_graph(const char* name, int param, tg_graph** out) {
  if (int e = require(name, "name")) return e;
  if (int e = require(out, "output")) return e;
  return guarded([&] {
    *out = new tg_graph{catalog_graph(name, param)};
    return TG_OK;
  });
}

int tg_catalog_verify(const char* name, int param, char** out) {
  if (int e = require(name, "name")) return e;
  if (int e = require(out, "output")) return e;
  return guarded([&] {
    CatalogVerifyReport r = catalog_verify(name, param);
    *out = dup_string(r.to_json_text());
    return r.passed() ? TG_OK : TG_ERR_FAILED;
  });
}

int tg_check_trim(const tg_graph* g, const char* vertex, char** out) {
  if (int e = require(g, "graph")) return e;
  if (int e = require(vertex, "vertex")) return e;
  if (int e = require(out, "output")) return e;
  return guarded([&] {
    TrimCertificate c = check_trimmable(g->g, std::string(vertex));
    *out = dup_string(cert_json(g->g, c).dump());
    return c.ok() ? TG_OK : TG_ERR_FAILED;
  });
}

int tg_trim(const tg_graph* g, const char* vertex, tg_graph** e_prime,
            tg_graph** e_dprime) {
  if (int e = require(g, "graph")) return e;
  if (int e = require(vertex, "vertex")) return e;
  if (int e = require(e_prime, "output")) return e;
  if (int e = require(e_dprime, "output")) return e;
  return guarded([&] {
    TrimResult t = trim(g->g, std::string(vertex));
    *e_prime = new tg_graph{std::move(t.e_prime)};
    *e_dprime = new tg_graph{std::move(t.e_dprime)};
    return TG_OK;
  });
}

static int extend_impl(const tg_graph* g, const char* new_vertex,
                       const char* const* attach, int attach_count, tg_graph** out,
                       bool with_loop) {
  if (int e = require(g, "graph")) return e;
  if (int e = require(new_vertex, "vertex")) return e;
  if (int e = require(out, "output")) return e;
  if (attach_count > 0 && !attach) return require(attach, "attach list");
  return guarded([&] {
    std::vector<std::string> ids(attach, attach + attach_count);
    *out = new tg_graph{with_loop ? one_loop_extension(g->g, new_vertex, ids)
                                  : one_sink_extension(g->g, new_vertex, ids)};
    return TG_OK;
  });
}

int tg_extend_loop(const tg_graph* g, const char* new_vertex,
                   const char* const* attach, int attach_count, tg_graph** out) {
  return extend_impl(g, new_vertex, attach, attach_count, out, true);
}

int tg_extend_sink(const tg_graph* g, const char* new_vertex,
                   const char* const* attach, int attach_count, tg_graph** out) {
  return extend_impl(g, new_vertex, attach, attach_count, out, false);
}

int tg_k_groups(const tg_graph* g, char** out) {
  if (int e = require(g, "graph")) return e;
  if (int e = require(out, "output")) return e;
  return guarded([&] {
    *out = dup_string(k_groups(g->g).to_json_text());
    return TG_OK;
  });
}

int tg_k1_unitary(const tg_graph* g, const char* vertex, char** out) {
  if (int e = require(g, "graph")) return e;
  if (int e = require(vertex, "vertex")) return e;
  if (int e = require(out, "output")) return e;
  return guarded([&] {
    K1Unitary u = distinguished_k1_unitary(g->g, g->g.vertex_index(vertex));
    nlohmann::json j;
    j["unitary"] = u.u.to_string();
    j["loop"] = g->g.edge(u.ebar).id;
    j["is_unitary"] = u.unitary;
    j["in_kernel"] = u.in_kernel;
    *out = dup_string(j.dump());
    return (u.unitary && u.in_kernel) ? TG_OK : TG_ERR_FAILED;
  });
}

int tg_fixed_k0(const tg_graph* g, const char* vertex, int levels, char** out) {
  if (int e = require(g, "graph")) return e;
  if (int e = require(vertex, "vertex")) return e;
  if (int e = require(out, "output")) return e;
  return guarded([&] {
    std::string fix_label;
    FixedK0Result r =
        fixed_k0_auto(g->g, g->g.vertex_index(vertex), levels, &fix_label);
    *out = dup_string(fixed_json(r, fix_label).dump());
    return r.solved ? TG_OK : TG_ERR_FAILED;
  });
}

int tg_pullback(const tg_graph* g, const char* vertex, int max_len, int max_u_deg,
                char** out) {
  if (int e = require(g, "graph")) return e;
  if (int e = require(vertex, "vertex")) return e;
  if (int e = require(out, "output")) return e;
  return guarded([&] {
    PullbackDiagram d =
        assemble_pullback(g->g, g->g.vertex_index(vertex), max_len, max_u_deg);
    *out = dup_string(d.to_json_text(g->g));
    return d.passed() ? TG_OK : TG_ERR_FAILED;
  });
}

int tg_milnor(const tg_graph* g, const char* vertex, char** out) {
  if (int e = require(g, "graph")) return e;
  if (int e = require(vertex, "vertex")) return e;
  if (int e = require(out, "output")) return e;
  return guarded([&] {
    std::string lift;
    MilnorResult m = trim_milnor(g->g, g->g.vertex_index(vertex), &lift);
    *out = dup_string(milnor_json(m, lift).dump());
    return m.passed() ? TG_OK : TG_ERR_FAILED;
  });
}

int tg_verify_qlpb(int l, int max_len, char** out) {
  if (int e = require(out, "output")) return e;
  return guarded([&] {
    QlpbReport r = verify_qlpb(l, max_len);
    *out = dup_string(r.to_json_text());
    return r.passed() ? TG_OK : TG_ERR_FAILED;
  });
}

int tg_projective_chain(int n, char** out) {
  if (int e = require(out, "output")) return e;
  return guarded([&] {
    ChainReport c = projective_chain(n);
    *out = dup_string(chain_json(c).dump());
    return c.ok ? TG_OK : TG_ERR_FAILED;
  });
}

int tg_teardrop_chain(int l, char** out) {
  if (int e = require(out, "output")) return e;
  return guarded([&] {
    ChainReport c = teardrop_chain(l);
    *out = dup_string(chain_json(c).dump());
    return c.ok ? TG_OK : TG_ERR_FAILED;
  });
}

}  // extern "C"
