// Job files, and JSON / DOT emission of resolution runs.
//
// Job format, one `key: value` per line, `#` starts a comment:
//
//   vars: x y
//   J: x^2*y^3            (generators separated by ';')
//   mode: mobile          (mobile | scheme)
//   control: 4
//   D: 2 1:x 2            (level label:variable multiplicity; ';' separates entries)
//   E: 2 3:y              (level label:variable)
//   max-steps: 64
//   emit: both            (json | dot | both)
//   verify: yes
//   trace: no
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "resol/resolver.hpp"

namespace resol {

class JobError : public std::runtime_error {
 public:
  JobError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

enum class Emit { Json, Dot, Both };

struct HandicapSpec {
  unsigned level = 0;
  unsigned label = 0;
  std::string variable;
  unsigned mult = 1;
  friend bool operator==(const HandicapSpec&, const HandicapSpec&) = default;
};

struct JobSpec {
  std::vector<std::string> variables;
  std::vector<std::string> generators;  // canonical polynomial strings
  Mode mode = Mode::Scheme;
  unsigned control = 1;
  std::vector<HandicapSpec> D;
  std::vector<HandicapSpec> E;
  unsigned max_steps = 64;
  Emit emit = Emit::Json;
  bool verify = false;
  bool trace = false;
  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

JobSpec parse_job(const std::string& text);
std::string print_job(const JobSpec& spec);

std::string to_string(Mode mode);
std::string to_string(Emit emit);
Mode parse_mode(const std::string& text);
Emit parse_emit(const std::string& text);

Ideal job_ideal(const JobSpec& spec);
Mobile job_mobile(const JobSpec& spec, std::vector<ExceptionalComponent>& components);

/// Runs the job in its mode; InputRejected propagates.
Resolution run_job(const JobSpec& spec, const ResolveOptions& options);

using Json = nlohmann::ordered_json;

Json tree_json(const ChartTree& tree, Mode mode);
/// Steps, checks and the final leaves of a run.
Json report_json(const Resolution& run);
/// Per processed chart: the setup levels with (o, k, m), controls and flags.
Json trace_json(const ChartTree& tree);
std::string tree_dot(const ChartTree& tree);

/// Writes tree.json / report.json / tree.dot / trace.json into `dir` as requested.
void emit_outputs(const Resolution& run, const JobSpec& spec, const std::filesystem::path& dir);

}  // namespace resol
