#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "plancomp/pairwise.hpp"

namespace plancomp {

enum class EdgeKind {
  Solid,   // Wilcoxon significant on the at-least-one sample
  Dotted,  // double-hits Wilcoxon significant, adding to or inverting the solid picture
  Dashed,  // Wilcoxon insignificant, win proportion significant
};

std::string_view to_string(EdgeKind kind) noexcept;

struct OrderEdge {
  std::string from;  // the better planner
  std::string to;
  EdgeKind kind = EdgeKind::Solid;
  double p = 1.0;
  int n = 0;
  bool inverts_solid = false;  // Dotted edge opposing a Solid edge on the same pair

  friend bool operator==(const OrderEdge&, const OrderEdge&) = default;
};

struct PartialOrder {
  Level level = Level::Strips;
  Measure measure = Measure::Speed;
  double alpha = 0.001;
  std::vector<std::string> nodes;  // sorted
  std::vector<OrderEdge> edges;    // sorted by (from, to, kind)
  std::vector<std::string> annotations;
};

// Builds the graph from at-least-one and double-hits comparisons sharing a
// level and measure. Input order and duplicates (either orientation) do not
// matter; conflicting duplicates raise InconsistentComparisons. Comparisons
// flagged too_small contribute nodes only.
PartialOrder build_order(const std::vector<ComparisonResult>& comparisons, double alpha = 0.001);

// Drops Solid edges implied by a longer Solid path. Left unchanged when the
// Solid edges contain a cycle.
PartialOrder transitive_reduction(const PartialOrder& order);

// 3 significant figures, e.g. "5.00e-4".
std::string format_p_label(double p);

std::string to_dot(const PartialOrder& order, const std::vector<std::string>& header_comments = {});

}  // namespace plancomp
