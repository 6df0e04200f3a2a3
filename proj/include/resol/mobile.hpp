// Mobiles, handicaps, tags, and the punctual setup (descent in dimension).
//
// Levels are numbered n (the ambient chart) down to 1. Containers indexed by
// level use index level-1.
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "resol/ideal.hpp"

namespace resol {

class AlgorithmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExceptionalComponent {
  unsigned label = 0;
  Polynomial equation;
  unsigned birth_step = 0;
};

const ExceptionalComponent* find_component(const std::vector<ExceptionalComponent>& comps, unsigned label);

struct DEntry {
  unsigned label = 0;
  unsigned mult = 0;
  friend bool operator==(const DEntry&, const DEntry&) = default;
};

using DList = std::vector<DEntry>;
using EList = std::vector<unsigned>;

struct Tag {
  unsigned o = 0;
  unsigned k = 0;
  unsigned ord_n = 0;
  std::uint64_t lab_n = 0;
  friend auto operator<=>(const Tag&, const Tag&) = default;
  std::string to_string() const;
};

/// Tags t_n, ..., t_1 (index 0 is the top level); compared lexicographically.
struct InvariantVector {
  std::vector<Tag> tags;
  friend auto operator<=>(const InvariantVector&, const InvariantVector&) = default;
  std::vector<std::uint64_t> flatten() const;
  std::string to_string() const;
};

/// Parent data used to resolve the D'/E' case split lazily in a child chart.
struct HandicapReference {
  InvariantVector parent_tags;
  std::vector<unsigned> parent_o;  // by level, 0 below the parent's stopping level
};

/// (J, c, D, E). D and E hold the candidate entries valid on the loci where the
/// child invariant agrees with the parent (the "on" branch of the split); the
/// root mobile has no reference and always uses them as they are.
struct Mobile {
  Ideal J;
  unsigned c = 1;
  std::vector<DList> D;
  std::vector<EList> E;
  EList all_e;  // |E|, the union of the transversal handicap
  std::optional<HandicapReference> reference;

  std::size_t dim() const { return J.nvars(); }
};

struct Shortcut {
  std::vector<unsigned> labels;  // ascending
  unsigned order = 0;
  std::uint64_t label = 0;
};

/// Bitmask encoding of a set of component labels (labels are 1..64).
std::uint64_t shortcut_label(const std::vector<unsigned>& labels);

// ---------------------------------------------------------------- elementary operations

Ideal companion_ideal(const Ideal& I, const Polynomial& M, unsigned o, unsigned c);

/// Product of the restricted component equations; each must have order one at the origin.
Ideal transversality_ideal(const std::vector<Polynomial>& restricted_equations, const VarList& vars);

Ideal composition_ideal(const Ideal& P, const Ideal& Q, const Ideal& I);

enum class OsculatingPolicy { First, Last };

struct Osculating {
  std::size_t variable = 0;   // distinguished variable index in the input ring
  Polynomial g;               // normalized: variable + h, h free of variable
  std::string new_name;       // name of the new coordinate
  SubstitutionMap change;     // old ring -> ring with the variable renamed to new_name
  Polynomial generator;       // chosen element of minimal order
  std::vector<Exponent> multi_index;
  bool coordinable = true;    // false: {g = 0} is regular but not a polynomial graph; change is the identity
};

/// Order-1 derivative of a minimal-order generator, and the triangular change making it a coordinate.
/// Picks whose hyperplane meets one of `transversal_to` non-transversally are skipped when possible.
Osculating osculating_hypersurface(const Ideal& I, const std::string& new_name,
                                   OsculatingPolicy policy = OsculatingPolicy::First,
                                   const std::vector<Polynomial>& transversal_to = {});

/// All distinct picks in preference order; the first is what osculating_hypersurface returns.
std::vector<Osculating> osculating_candidates(const Ideal& I, const std::string& new_name,
                                              OsculatingPolicy policy = OsculatingPolicy::First,
                                              const std::vector<Polynomial>& transversal_to = {});

/// sum_{j<c} (a_{f,j})^{c!/(c-j)} in the ring without variable z.
Ideal coefficient_ideal(const Ideal& K, unsigned c, std::size_t z);

struct Junior {
  Ideal J;
  bool bold_regular = false;
};
Junior junior_ideal(const Ideal& K, unsigned c, std::size_t z);

/// Lex-maximal (order, label) tight shortcut; entries are (label, order at the point).
Shortcut maximal_tight_shortcut(const std::vector<DEntry>& entries, unsigned c);

Tag compute_tag(unsigned o, unsigned k, const std::optional<Shortcut>& shortcut);

unsigned long long factorial(unsigned k);

// ---------------------------------------------------------------- setup

enum class StopKind { BoldRegular, Combinatorial, Resolved };
std::string to_string(StopKind kind);

struct SetupLevel {
  unsigned level = 0;
  VarList vars;                    // coordinates of W_level
  Ideal J, I, P, Q, K;
  Polynomial M;
  unsigned control = 0;            // c_{level+1}
  unsigned o = 0;
  unsigned k = 0;
  Tag tag;
  DList D;                         // selected D_level (all entries)
  EList E;                         // selected E_level
  std::optional<std::string> flag; // name of the osculating coordinate
  std::optional<Polynomial> flag_in_chart;
  std::optional<Shortcut> shortcut;
};

struct Setup {
  std::vector<SetupLevel> levels;  // from level n downwards
  StopKind stop = StopKind::Resolved;
  unsigned stop_level = 0;
  InvariantVector invariant;
  /// Generators of the center in the chart coordinates (at the origin).
  std::vector<Polynomial> center;

  /// o_j and c_{j+1} by level; zero below the stopping level.
  std::vector<unsigned> o_by_level() const;
  std::vector<unsigned> control_by_level() const;
};

/// The descent at the origin of the chart. Components are in chart coordinates.
Setup build_setup(const Mobile& mobile, const std::vector<ExceptionalComponent>& components,
                  OsculatingPolicy policy = OsculatingPolicy::First);

}  // namespace resol
