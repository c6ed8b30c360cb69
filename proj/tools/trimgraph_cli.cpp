// Command-line front end; talks to the library through the C interface only.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "trimgraph.h"

namespace {

struct GraphDeleter {
  void operator()(tg_graph* g) const { tg_graph_free(g); }
};
using GraphPtr = std::unique_ptr<tg_graph, GraphDeleter>;

struct StringDeleter {
  void operator()(char* s) const { tg_string_free(s); }
};
using StringPtr = std::unique_ptr<char, StringDeleter>;

int fail_usage(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

int param_value(const std::vector<std::string>& params, int fallback) {
  for (const auto& p : params) {
    auto eq = p.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--param expects k=v");
    try {
      return std::stoi(p.substr(eq + 1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--param value is not an integer");
    }
  }
  return fallback;
}

// input: a file path or `catalog:<name>`
GraphPtr load_graph(const std::string& input, int param, std::string* err) {
  tg_graph* g = nullptr;
  if (input.rfind("catalog:", 0) == 0) {
    if (tg_catalog_graph(input.substr(8).c_str(), param, &g) != TG_OK) {
      *err = tg_last_error();
      return nullptr;
    }
    return GraphPtr(g);
  }
  std::ifstream in(input);
  if (!in) {
    *err = "cannot open " + input;
    return nullptr;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  auto first = text.find_first_not_of(" \t\r\n");
  int rc = (first != std::string::npos && text[first] == '{')
               ? tg_graph_from_json(text.c_str(), &g)
               : tg_graph_parse(text.c_str(), &g);
  if (rc != TG_OK) {
    *err = tg_last_error();
    return nullptr;
  }
  return GraphPtr(g);
}

void print_human(const nlohmann::json& j, int indent = 0) {
  std::string pad(indent, ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_object() || (it.value().is_array() && !it.value().empty() &&
                                     it.value().front().is_structured())) {
        std::cout << pad << it.key() << ":\n";
        print_human(it.value(), indent + 2);
      } else {
        std::cout << pad << it.key() << ": " << it.value().dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      print_human(v, indent);
      if (v.is_structured()) std::cout << "\n";
    }
  } else {
    std::cout << pad << j.dump() << "\n";
  }
}

int emit(int rc, const char* json_text, bool json_mode) {
  if (json_text) {
    if (json_mode)
      std::cout << json_text << "\n";
    else
      print_human(nlohmann::json::parse(json_text));
  }
  if (rc == TG_OK) return 0;
  if (rc == TG_ERR_FAILED) return 1;
  std::cerr << "error: " << tg_last_error() << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trimmable-graph workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_mode = false;
  int levels = 8, max_len = 3, max_u_deg = 2;
  std::string vertex, input;
  std::vector<std::string> params, attach;
  app.add_flag("--json", json_mode, "emit JSON reports");

  auto add_common = [&](CLI::App* c, bool needs_input) {
    if (needs_input)
      c->add_option("input", input, "graph file or catalog:<name>")->required();
    c->add_option("--param", params, "catalog parameter, e.g. n=2");
    return c;
  };

  auto* c_check = add_common(app.add_subcommand("check-trim", "trimmability certificate"), true);
  c_check->add_option("--vertex", vertex, "distinguished vertex")->required();
  auto* c_trim = add_common(app.add_subcommand("trim", "split into (E', E'')"), true);
  c_trim->add_option("--vertex", vertex, "distinguished vertex")->required();
  auto* c_eloop = add_common(app.add_subcommand("extend-loop", "one-loop extension"), true);
  c_eloop->add_option("--vertex", vertex, "new vertex id")->required();
  c_eloop->add_option("--attach", attach, "attaching vertices")->required();
  auto* c_esink = add_common(app.add_subcommand("extend-sink", "one-sink extension"), true);
  c_esink->add_option("--vertex", vertex, "new vertex id")->required();
  c_esink->add_option("--attach", attach, "attaching vertices")->required();
  auto* c_k = add_common(app.add_subcommand("k", "K-groups of the graph algebra"), true);
  auto* c_fixed = add_common(app.add_subcommand("fixed-k0", "fixed-point K0 via the trim square"), true);
  c_fixed->add_option("--vertex", vertex, "distinguished vertex")->required();
  c_fixed->add_option("--levels", levels, "Bratteli truncation depth");
  auto* c_pull = add_common(app.add_subcommand("pullback", "verify the pullback diagram"), true);
  c_pull->add_option("--vertex", vertex, "distinguished vertex")->required();
  c_pull->add_option("--max-len", max_len, "monomial leg bound");
  c_pull->add_option("--max-u-deg", max_u_deg, "winding bound");
  auto* c_milnor = add_common(app.add_subcommand("milnor", "clutching idempotent over the trim square"), true);
  c_milnor->add_option("--vertex", vertex, "distinguished vertex")->required();
  auto* c_qlpb = app.add_subcommand("verify-qlpb", "Toeplitz pullback presentation check");
  c_qlpb->add_option("--param", params, "l=<value>");
  c_qlpb->add_option("--max-len", max_len, "monomial leg bound");
  auto* c_cat = app.add_subcommand("catalog", "worked-example catalog");
  auto* c_list = c_cat->add_subcommand("list", "list entries");
  auto* c_show = c_cat->add_subcommand("show", "entry details");
  std::string name;
  c_show->add_option("name", name, "entry name")->required();
  c_show->add_option("--param", params, "catalog parameter");
  c_cat->require_subcommand(1);
  auto* c_verify = app.add_subcommand("verify", "run a catalog entry's full pipeline");
  std::string verify_name;
  c_verify->add_option("name", verify_name, "entry name, or 'all'")->required();
  c_verify->add_option("--param", params, "catalog parameter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    int param = param_value(params, 2);
    std::string err;

    if (c_check->parsed() || c_trim->parsed() || c_eloop->parsed() || c_esink->parsed() ||
        c_k->parsed() || c_fixed->parsed() || c_pull->parsed() || c_milnor->parsed()) {
      GraphPtr g = load_graph(input, param, &err);
      if (!g) return fail_usage(err);

      char* out = nullptr;
      if (c_check->parsed()) {
        int rc = tg_check_trim(g.get(), vertex.c_str(), &out);
        StringPtr guard(out);
        return emit(rc, out, json_mode);
      }
      if (c_trim->parsed()) {
        tg_graph *ep = nullptr, *ed = nullptr;
        int rc = tg_trim(g.get(), vertex.c_str(), &ep, &ed);
        if (rc != TG_OK) return emit(rc, nullptr, json_mode);
        GraphPtr gp(ep), gd(ed);
        char *jp = nullptr, *jd = nullptr;
        tg_graph_to_json(ep, &jp);
        tg_graph_to_json(ed, &jd);
        StringPtr sp(jp), sd(jd);
        nlohmann::json j;
        j["e_prime"] = nlohmann::json::parse(jp);
        j["e_dprime"] = nlohmann::json::parse(jd);
        if (json_mode) {
          std::cout << j.dump() << "\n";
        } else {
          char *tp = nullptr, *td = nullptr;
          tg_graph_to_text(ep, &tp);
          tg_graph_to_text(ed, &td);
          StringPtr s1(tp), s2(td);
          std::cout << "# E' (loop removed)\n" << tp << "# E'' (vertex removed)\n" << td;
        }
        return 0;
      }
      if (c_eloop->parsed() || c_esink->parsed()) {
        std::vector<const char*> at;
        for (const auto& a : attach) at.push_back(a.c_str());
        tg_graph* ext = nullptr;
        int rc = c_eloop->parsed()
                     ? tg_extend_loop(g.get(), vertex.c_str(), at.data(),
                                      static_cast<int>(at.size()), &ext)
                     : tg_extend_sink(g.get(), vertex.c_str(), at.data(),
                                      static_cast<int>(at.size()), &ext);
        if (rc != TG_OK) return emit(rc, nullptr, json_mode);
        GraphPtr ge(ext);
        char* txt = nullptr;
        int rc2 = json_mode ? tg_graph_to_json(ext, &txt) : tg_graph_to_text(ext, &txt);
        StringPtr guard(txt);
        if (rc2 == TG_OK) std::cout << txt << (json_mode ? "\n" : "");
        return rc2 == TG_OK ? 0 : 2;
      }
      int rc = TG_ERR_INVALID;
      if (c_k->parsed()) rc = tg_k_groups(g.get(), &out);
      if (c_fixed->parsed()) rc = tg_fixed_k0(g.get(), vertex.c_str(), levels, &out);
      if (c_pull->parsed())
        rc = tg_pullback(g.get(), vertex.c_str(), max_len, max_u_deg, &out);
      if (c_milnor->parsed()) rc = tg_milnor(g.get(), vertex.c_str(), &out);
      StringPtr guard(out);
      return emit(rc, out, json_mode);
    }

    if (c_qlpb->parsed()) {
      char* out = nullptr;
      int rc = tg_verify_qlpb(param, max_len, &out);
      StringPtr guard(out);
      return emit(rc, out, json_mode);
    }
    if (c_list->parsed()) {
      char* out = nullptr;
      int rc = tg_catalog_list(&out);
      StringPtr guard(out);
      return emit(rc, out, json_mode);
    }
    if (c_show->parsed()) {
      char* out = nullptr;
      int rc = tg_catalog_show(name.c_str(), param, &out);
      StringPtr guard(out);
      return emit(rc, out, json_mode);
    }
    if (c_verify->parsed()) {
      std::vector<std::string> names;
      if (verify_name == "all") {
        char* list = nullptr;
        if (tg_catalog_list(&list) != TG_OK) return fail_usage(tg_last_error());
        StringPtr guard(list);
        for (const auto& e : nlohmann::json::parse(list)) names.push_back(e["name"]);
      } else {
        names.push_back(verify_name);
      }
      int worst = 0;
      for (const auto& n : names) {
        char* out = nullptr;
        int rc = tg_catalog_verify(n.c_str(), param, &out);
        StringPtr guard(out);
        if (!json_mode) std::cout << "== " << n << "\n";
        int code = emit(rc, out, json_mode);
        worst = std::max(worst, code);
      }
      return worst;
    }
    return fail_usage("no verb");
  } catch (const std::exception& ex) {
    return fail_usage(ex.what());
  }
}
