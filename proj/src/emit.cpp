#include <fstream>
#include <sstream>

#include "resol/io.hpp"

namespace resol {

namespace {

Json strings(const std::vector<Polynomial>& polys) {
  Json out = Json::array();
  for (const auto& p : polys) out.push_back(p.to_string());
  return out;
}

Json substitution(const SubstitutionMap& map) {
  Json images = Json::object();
  if (!map.source()) return images;
  for (std::size_t i = 0; i < map.source()->size(); ++i) images[(*map.source())[i]] = map.images()[i].to_string();
  return images;
}

Json tag_json(const Tag& t) { return Json::array({t.o, t.k, t.ord_n, t.lab_n}); }

Json mobile_json(const Mobile& m) {
  Json j;
  j["J"] = strings(m.J.generators());
  j["c"] = m.c;
  // Index i holds level i+1.
  Json D = Json::array(), E = Json::array();
  for (const auto& level : m.D) {
    Json entries = Json::array();
    for (const auto& e : level) entries.push_back({{"label", e.label}, {"mult", e.mult}});
    D.push_back(std::move(entries));
  }
  for (const auto& level : m.E) E.push_back(level);
  j["D"] = std::move(D);
  j["E"] = std::move(E);
  j["allE"] = m.all_e;
  return j;
}

Json chart_json(const Chart& c) {
  Json j;
  j["id"] = c.id;
  j["parent"] = c.parent.empty() ? Json(nullptr) : Json(c.parent);
  j["step"] = c.step;
  j["variables"] = *c.vars;
  j["pathFromRoot"] = substitution(c.path);
  j["edge"] = substitution(c.edge);
  Json exc = Json::array();
  for (const auto& e : c.exceptional)
    exc.push_back({{"label", e.label}, {"equation", e.equation.to_string()}, {"birthStep", e.birth_step}});
  j["exceptional"] = std::move(exc);
  j["mobile"] = mobile_json(c.mobile);
  j["strict"] = c.strict ? strings(c.strict->generators()) : Json(nullptr);
  j["status"] = to_string(c.status);
  j["resolved"] = c.status == ChartStatus::Resolved;
  j["invariant"] = c.invariant ? Json(c.invariant->flatten()) : Json(nullptr);
  j["center"] = strings(c.center);
  j["centerCoordinates"] = c.center_vars;
  return j;
}

}  // namespace

Json tree_json(const ChartTree& tree, Mode mode) {
  Json j;
  j["mode"] = to_string(mode);
  Json charts = Json::array(), edges = Json::array();
  for (const auto& c : tree.charts) {
    charts.push_back(chart_json(c));
    if (!c.parent.empty()) edges.push_back({{"from", c.parent}, {"to", c.id}});
  }
  j["charts"] = std::move(charts);
  j["edges"] = std::move(edges);
  return j;
}

Json report_json(const Resolution& run) {
  const auto& r = run.report;
  Json j;
  j["rounds"] = r.rounds;
  j["budgetExhausted"] = r.budget_exhausted;
  j["irrationalCandidates"] = r.irrational_candidates;
  j["error"] = r.error.empty() ? Json(nullptr) : Json(r.error);
  j["exitCode"] = r.exit_code();
  j["allChecksPass"] = r.all_checks_pass();
  Json steps = Json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"step", s.step},
                     {"chart", s.chart},
                     {"invariant", s.invariant.flatten()},
                     {"center", s.center},
                     {"chartCount", s.chart_count}});
  j["steps"] = std::move(steps);
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"chart", c.chart}, {"pass", c.pass}, {"witness", c.witness}});
  j["checks"] = std::move(checks);
  Json leaves = Json::array();
  for (const Chart* c : run.tree.leaves()) leaves.push_back({{"id", c->id}, {"status", to_string(c->status)}});
  j["leaves"] = std::move(leaves);
  return j;
}

Json trace_json(const ChartTree& tree) {
  Json out = Json::array();
  for (const auto& c : tree.charts) {
    if (!c.setup) continue;
    const Setup& s = *c.setup;
    Json levels = Json::array();
    for (const auto& L : s.levels) {
      Json l;
      l["level"] = L.level;
      l["variables"] = *L.vars;
      l["control"] = L.control;
      l["o"] = L.o;
      l["k"] = L.k;
      l["m"] = L.shortcut ? Json::array({L.shortcut->order, L.shortcut->label}) : Json(nullptr);
      l["tag"] = tag_json(L.tag);
      l["M"] = L.M.to_string();
      l["flag"] = L.flag ? Json(*L.flag) : Json(nullptr);
      l["flagInChart"] = L.flag_in_chart ? Json(L.flag_in_chart->to_string()) : Json(nullptr);
      levels.push_back(std::move(l));
    }
    out.push_back({{"chart", c.id},
                   {"invariant", s.invariant.flatten()},
                   {"stop", to_string(s.stop)},
                   {"stopLevel", s.stop_level},
                   {"levels", std::move(levels)},
                   {"center", strings(c.center)}});
  }
  return out;
}

std::string tree_dot(const ChartTree& tree) {
  std::ostringstream out;
  out << "digraph charts {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (const auto& c : tree.charts) {
    out << "  \"" << c.id << "\" [label=\"" << c.id << "\\n"
        << (c.invariant ? c.invariant->to_string() : std::string("-")) << "\\n"
        << to_string(c.status) << "\"];\n";
  }
  for (const auto& c : tree.charts)
    if (!c.parent.empty()) out << "  \"" << c.parent << "\" -> \"" << c.id << "\";\n";
  out << "}\n";
  return out.str();
}

void emit_outputs(const Resolution& run, const JobSpec& spec, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    f << text;
    if (!f) throw std::runtime_error("write failed for " + (dir / name).string());
  };
  if (spec.emit != Emit::Dot) write("tree.json", tree_json(run.tree, spec.mode).dump(2) + "\n");
  if (spec.emit != Emit::Json) write("tree.dot", tree_dot(run.tree));
  write("report.json", report_json(run).dump(2) + "\n");
  if (spec.trace) write("trace.json", trace_json(run.tree).dump(2) + "\n");
}

}  // namespace resol
