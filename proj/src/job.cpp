#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "resol/io.hpp"

namespace resol {

JobError::JobError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

std::string to_string(Mode mode) { return mode == Mode::Mobile ? "mobile" : "scheme"; }

std::string to_string(Emit emit) {
  switch (emit) {
    case Emit::Json: return "json";
    case Emit::Dot: return "dot";
    case Emit::Both: return "both";
  }
  return "json";
}

Mode parse_mode(const std::string& text) {
  if (text == "mobile") return Mode::Mobile;
  if (text == "scheme") return Mode::Scheme;
  throw std::invalid_argument("mode must be mobile or scheme, got '" + text + "'");
}

Emit parse_emit(const std::string& text) {
  if (text == "json") return Emit::Json;
  if (text == "dot") return Emit::Dot;
  if (text == "both") return Emit::Both;
  throw std::invalid_argument("emit must be json, dot or both, got '" + text + "'");
}

namespace {

// A piece of the input with its 1-based position.
struct Span {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

Span trim(const Span& s) {
  std::size_t b = 0, e = s.text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s.text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s.text[e - 1]))) --e;
  return {s.text.substr(b, e - b), s.line, s.column + b};
}

std::vector<Span> split(const Span& s, char sep) {
  std::vector<Span> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.text.size(); ++i) {
    if (i == s.text.size() || s.text[i] == sep) {
      out.push_back(trim({s.text.substr(start, i - start), s.line, s.column + start}));
      start = i + 1;
    }
  }
  return out;
}

std::vector<Span> words(const Span& s) {
  std::vector<Span> out;
  std::size_t i = 0;
  while (i < s.text.size()) {
    while (i < s.text.size() && std::isspace(static_cast<unsigned char>(s.text[i]))) ++i;
    std::size_t b = i;
    while (i < s.text.size() && !std::isspace(static_cast<unsigned char>(s.text[i]))) ++i;
    if (i > b) out.push_back({s.text.substr(b, i - b), s.line, s.column + b});
  }
  return out;
}

unsigned parse_natural(const Span& s, const char* what) {
  if (s.text.empty() || !std::all_of(s.text.begin(), s.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw JobError(s.line, s.column, std::string("expected a natural number for ") + what + ", got '" + s.text + "'");
  if (s.text.size() > 9) throw JobError(s.line, s.column, std::string(what) + " is too large");
  return static_cast<unsigned>(std::stoul(s.text));
}

bool parse_flag(const Span& s) {
  static const std::map<std::string, bool> values = {{"yes", true}, {"no", false},  {"true", true},
                                                     {"false", false}, {"1", true}, {"0", false}};
  auto it = values.find(s.text);
  if (it == values.end()) throw JobError(s.line, s.column, "expected yes or no, got '" + s.text + "'");
  return it->second;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

HandicapSpec parse_handicap(const Span& entry, bool reduced, const std::vector<std::string>& vars) {
  auto w = words(entry);
  const char* key = reduced ? "E" : "D";
  if (w.size() != 3 && !(reduced && w.size() == 2))
    throw JobError(entry.line, entry.column,
                   std::string("expected '") + (reduced ? "level label:variable" : "level label:variable mult") +
                       "' in " + key + " entry");
  HandicapSpec h;
  h.level = parse_natural(w[0], "level");
  if (h.level == 0 || h.level > vars.size())
    throw JobError(w[0].line, w[0].column, "level must be between 1 and " + std::to_string(vars.size()));
  auto colon = w[1].text.find(':');
  if (colon == std::string::npos) throw JobError(w[1].line, w[1].column, "expected label:variable");
  h.label = parse_natural({w[1].text.substr(0, colon), w[1].line, w[1].column}, "label");
  if (h.label == 0 || h.label > 32) throw JobError(w[1].line, w[1].column, "label must be between 1 and 32");
  h.variable = w[1].text.substr(colon + 1);
  if (std::find(vars.begin(), vars.end(), h.variable) == vars.end())
    throw JobError(w[1].line, w[1].column + colon + 1, "unknown variable '" + h.variable + "'");
  if (w.size() == 3) {
    h.mult = parse_natural(w[2], "multiplicity");
    if (h.mult == 0) throw JobError(w[2].line, w[2].column, "multiplicity must be at least 1");
    if (reduced && h.mult != 1) throw JobError(w[2].line, w[2].column, "E entries are reduced (multiplicity 1)");
  }
  return h;
}

}  // namespace

JobSpec parse_job(const std::string& text) {
  static const std::set<std::string> single = {"vars", "J", "mode", "control", "max-steps", "emit", "verify", "trace"};
  std::map<std::string, Span> values;
  std::vector<std::pair<std::string, Span>> handicaps;

  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    Span line = trim({raw, line_no, 1});
    if (line.text.empty()) continue;
    auto colon = line.text.find(':');
    if (colon == std::string::npos) throw JobError(line.line, line.column, "expected 'key: value'");
    Span key = trim({line.text.substr(0, colon), line.line, line.column});
    Span value = trim({line.text.substr(colon + 1), line.line, line.column + colon + 1});
    if (key.text == "D" || key.text == "E") {
      handicaps.emplace_back(key.text, value);
      continue;
    }
    if (!single.count(key.text)) throw JobError(key.line, key.column, "unknown key '" + key.text + "'");
    if (values.count(key.text)) throw JobError(key.line, key.column, "duplicate key '" + key.text + "'");
    values[key.text] = value;
  }

  JobSpec spec;
  auto vars_it = values.find("vars");
  if (vars_it == values.end()) throw JobError(line_no + 1, 1, "missing 'vars'");
  for (const auto& w : words(vars_it->second)) {
    if (!is_identifier(w.text)) throw JobError(w.line, w.column, "invalid variable name '" + w.text + "'");
    if (std::find(spec.variables.begin(), spec.variables.end(), w.text) != spec.variables.end())
      throw JobError(w.line, w.column, "duplicate variable '" + w.text + "'");
    spec.variables.push_back(w.text);
  }
  if (spec.variables.empty()) throw JobError(vars_it->second.line, vars_it->second.column, "no variables");
  VarList vars = make_vars(spec.variables);

  auto j_it = values.find("J");
  if (j_it == values.end()) throw JobError(line_no + 1, 1, "missing 'J'");
  for (const auto& piece : split(j_it->second, ';')) {
    if (piece.text.empty()) throw JobError(piece.line, piece.column, "empty generator");
    Polynomial p;
    try {
      p = Polynomial::parse(piece.text, vars);
    } catch (const ParseError& e) {
      throw JobError(piece.line, piece.column + e.column(), e.what());
    }
    if (!p.is_zero()) spec.generators.push_back(p.to_string());
  }
  if (spec.generators.empty()) throw JobError(j_it->second.line, j_it->second.column, "the ideal is zero");

  std::optional<Span> control_span;
  for (const auto& [key, value] : values) {
    try {
      if (key == "mode") spec.mode = parse_mode(value.text);
      if (key == "emit") spec.emit = parse_emit(value.text);
    } catch (const std::invalid_argument& e) {
      throw JobError(value.line, value.column, e.what());
    }
    if (key == "control") {
      spec.control = parse_natural(value, "control");
      if (spec.control == 0) throw JobError(value.line, value.column, "control must be at least 1");
      control_span = value;
    }
    if (key == "max-steps") {
      spec.max_steps = parse_natural(value, "max-steps");
      if (spec.max_steps == 0) throw JobError(value.line, value.column, "max-steps must be at least 1");
    }
    if (key == "verify") spec.verify = parse_flag(value);
    if (key == "trace") spec.trace = parse_flag(value);
  }

  std::map<unsigned, std::string> label_vars;
  for (const auto& [key, value] : handicaps) {
    if (spec.mode == Mode::Scheme)
      throw JobError(value.line, value.column, "scheme mode uses empty handicaps");
    for (const auto& entry : split(value, ';')) {
      if (entry.text.empty()) throw JobError(entry.line, entry.column, "empty " + key + " entry");
      HandicapSpec h = parse_handicap(entry, key == "E", spec.variables);
      auto [it, fresh] = label_vars.emplace(h.label, h.variable);
      if (!fresh && it->second != h.variable)
        throw JobError(entry.line, entry.column,
                       "label " + std::to_string(h.label) + " already names variable '" + it->second + "'");
      (key == "D" ? spec.D : spec.E).push_back(h);
    }
  }
  if (spec.mode == Mode::Scheme && control_span && spec.control != 1)
    throw JobError(control_span->line, control_span->column, "scheme mode uses control 1");
  return spec;
}

std::string print_job(const JobSpec& spec) {
  std::ostringstream out;
  out << "vars:";
  for (const auto& v : spec.variables) out << ' ' << v;
  out << "\nJ: ";
  for (std::size_t i = 0; i < spec.generators.size(); ++i) out << (i ? "; " : "") << spec.generators[i];
  out << "\nmode: " << to_string(spec.mode) << "\ncontrol: " << spec.control << '\n';
  for (const auto& h : spec.D) out << "D: " << h.level << ' ' << h.label << ':' << h.variable << ' ' << h.mult << '\n';
  for (const auto& h : spec.E) out << "E: " << h.level << ' ' << h.label << ':' << h.variable << '\n';
  out << "max-steps: " << spec.max_steps << "\nemit: " << to_string(spec.emit)
      << "\nverify: " << (spec.verify ? "yes" : "no") << "\ntrace: " << (spec.trace ? "yes" : "no") << '\n';
  return out.str();
}

Ideal job_ideal(const JobSpec& spec) {
  VarList vars = make_vars(spec.variables);
  std::vector<Polynomial> gens;
  for (const auto& g : spec.generators) gens.push_back(Polynomial::parse(g, vars));
  return Ideal(vars, std::move(gens));
}

Mobile job_mobile(const JobSpec& spec, std::vector<ExceptionalComponent>& components) {
  Mobile m;
  m.J = job_ideal(spec);
  m.c = spec.control;
  const VarList& vars = m.J.vars();
  const std::size_t n = vars->size();
  m.D.assign(n, {});
  m.E.assign(n, {});
  std::map<unsigned, std::string> labels;
  for (const auto& h : spec.D) {
    labels[h.label] = h.variable;
    m.D[h.level - 1].push_back({h.label, h.mult});
  }
  for (const auto& h : spec.E) {
    labels[h.label] = h.variable;
    m.E[h.level - 1].push_back(h.label);
  }
  components.clear();
  for (const auto& [label, var] : labels) components.push_back({label, Polynomial::parse(var, vars), 0});
  return m;
}

Resolution run_job(const JobSpec& spec, const ResolveOptions& options) {
  ResolveOptions opts = options;
  opts.mode = spec.mode;
  if (spec.mode == Mode::Scheme) return resolve_scheme(job_ideal(spec), opts);
  std::vector<ExceptionalComponent> components;
  Mobile m = job_mobile(spec, components);
  return resolve_mobile(m, components, opts);
}

}  // namespace resol
