// Resolution drivers, center location and verification.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resol/chart.hpp"

namespace resol {

enum class Mode { Mobile, Scheme };

struct ResolveOptions {
  Mode mode = Mode::Scheme;
  unsigned max_steps = 64;
  bool verify = true;
  bool trace = false;
  unsigned jobs = 1;
  OsculatingPolicy policy = OsculatingPolicy::First;
};

struct StepRecord {
  unsigned step = 0;
  std::string chart;
  InvariantVector invariant;
  std::vector<std::string> center;  // generators in the chart's coordinates
  std::size_t chart_count = 0;      // charts created by this blowup
};

struct Check {
  std::string name;
  std::string chart;
  bool pass = true;
  std::string witness;  // ideal describing the failure locus, empty on success
};

struct ResolutionReport {
  std::vector<StepRecord> steps;
  std::vector<Check> checks;
  unsigned rounds = 0;
  bool budget_exhausted = false;
  bool irrational_candidates = false;  // some non-rational candidate points were skipped
  std::string error;                   // set when the run was aborted

  bool all_checks_pass() const;
  int exit_code() const;
};

struct Resolution {
  ChartTree tree;
  ResolutionReport report;
};

class InputRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The top locus of a chart has no rational point to evaluate the invariant at.
class NoRationalCenter : public AlgorithmError {
 public:
  using AlgorithmError::AlgorithmError;
};

/// Outcome of searching one chart for its top-invariant center.
struct CenterSearch {
  bool resolved = false;        // order of J below c everywhere on the chart
  Setup setup;                  // setup at the chosen point (translated to the origin)
  Point point;                  // the chosen point in chart coordinates
  std::vector<Polynomial> center;  // center generators in chart coordinates
  bool irrational = false;
  std::size_t candidates = 0;
};

CenterSearch locate_center(const Chart& chart, OsculatingPolicy policy = OsculatingPolicy::First);

/// Mobile on the root chart with the given exceptional components.
Resolution resolve_mobile(const Mobile& mobile, const std::vector<ExceptionalComponent>& components,
                          const ResolveOptions& options);

/// Embedded resolution of V(X): control 1, empty handicaps, strict transforms tracked.
Resolution resolve_scheme(const Ideal& X, const ResolveOptions& options);

struct SeparatedMobile {
  Mobile mobile;                                // lives on X1 = {z = 0}
  std::vector<ExceptionalComponent> components; // restricted to X1
  SubstitutionMap change;                       // makes X1 a coordinate hyperplane
  std::size_t z = 0;
};

/// The mobile whose resolution separates X2 from the smooth hypersurface X1.
SeparatedMobile separate_components(const Ideal& X1, const Ideal& X2,
                                    const std::vector<ExceptionalComponent>& exceptional);

// ---------------------------------------------------------------- verification

/// Normal crossings of the given hypersurfaces and (optionally) an ideal of the given codimension.
Check normal_crossings(const std::optional<Ideal>& strict, unsigned codim,
                       const std::vector<ExceptionalComponent>& components, const VarList& vars);

/// Center smooth and transversal to every component that does not contain it.
Check center_transversality(const std::vector<Polynomial>& center, const std::vector<ExceptionalComponent>& components,
                            const VarList& vars);

/// Leaf checks: strict transform smooth, components smooth, normal crossings, order below control.
std::vector<Check> verify_chart(const Chart& chart, Mode mode, unsigned codim);

/// All leaf checks of a finished tree.
std::vector<Check> verify_resolution(const ChartTree& tree, Mode mode, unsigned codim);

}  // namespace resol
