// Affine charts, centers, blowups and the transport of mobiles.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resol/mobile.hpp"

namespace resol {

enum class ChartStatus { Active, BlownUp, Resolved, Failed };
std::string to_string(ChartStatus status);

struct Chart {
  std::string id;
  std::string parent;  // empty for the root
  unsigned step = 0;   // blowup round that created the chart
  VarList vars;
  SubstitutionMap path;               // root coordinates -> this chart
  SubstitutionMap edge;               // parent coordinates -> this chart
  std::vector<ExceptionalComponent> exceptional;
  Mobile mobile;
  std::optional<Ideal> strict;        // strict transform (scheme mode)

  // Filled in when the chart is processed.
  ChartStatus status = ChartStatus::Active;
  std::optional<InvariantVector> invariant;
  std::optional<Setup> setup;
  std::vector<Polynomial> center;     // center generators in this chart's coordinates
  SubstitutionMap center_change;      // coordinate change applied before the blowup
  std::vector<std::string> center_vars;
};

struct ChartTree {
  std::vector<Chart> charts;  // in creation order, root first
  const Chart* find(const std::string& id) const;
  std::vector<const Chart*> leaves() const;
};

struct CenterCoordinates {
  std::vector<std::size_t> Z;   // indices in the new variable list
  SubstitutionMap change;       // chart variables -> new variables
};

/// Triangular change after which the center is exactly {z = 0 : z in Z}.
CenterCoordinates coordinatize_center(const VarList& vars, const std::vector<Polynomial>& center);

/// Rewrites all chart data through an invertible coordinate change.
Chart change_coordinates(const Chart& chart, const SubstitutionMap& change);

enum class TransformKind { Total, Weak, Controlled };

/// Total transform under the chart map, divided by y^amount for weak/controlled.
Ideal transform_ideal(const Ideal& I, TransformKind kind, const SubstitutionMap& map, std::size_t y,
                      unsigned amount = 0);

/// The chart map for one pivot of a blowup with center {Z = 0}.
SubstitutionMap blowup_map(const VarList& vars, const std::vector<std::size_t>& Z, std::size_t pivot);

/// D'/E' candidates and reference tags for the child chart; J' is the controlled transform.
Mobile transform_mobile(const Mobile& parent, const Setup& setup, const std::vector<ExceptionalComponent>& parent_comps,
                        const std::vector<std::size_t>& Z, const SubstitutionMap& map, std::size_t y,
                        unsigned y_label, const std::vector<ExceptionalComponent>& child_comps);

/// Children of a chart whose coordinates already make the center {Z = 0}.
/// The new exceptional component gets `label`; the parent's setup drives the handicap transport.
std::vector<Chart> blowup_chart(const Chart& chart, const std::vector<std::size_t>& Z, const Setup& setup,
                                unsigned label, unsigned step);

/// Blowup in the smooth hypersurface {g = 0}: an isomorphism, so a single child with the
/// same coordinates, J' = J / g^c and the new component {g = 0}.
Chart blowup_hypersurface(const Chart& chart, const Polynomial& g, const Setup& setup, unsigned label, unsigned step);

}  // namespace resol
