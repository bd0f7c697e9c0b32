#include "plancomp/ordering.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "plancomp/error.hpp"

namespace plancomp {

std::string_view to_string(EdgeKind kind) noexcept {
  switch (kind) {
    case EdgeKind::Solid: return "solid";
    case EdgeKind::Dotted: return "dotted";
    case EdgeKind::Dashed: return "dashed";
  }
  return "?";
}

namespace {

// A comparison re-expressed with planner_a < planner_b.
ComparisonResult canonical(const ComparisonResult& c) {
  if (c.planner_a <= c.planner_b) return c;
  ComparisonResult r = c;
  std::swap(r.planner_a, r.planner_b);
  std::swap(r.wilcoxon.rank_sum_pos, r.wilcoxon.rank_sum_neg);
  r.wilcoxon.favored = mirror(r.wilcoxon.favored);
  r.proportion.wins = r.proportion.n - r.proportion.wins;
  r.proportion.z = -r.proportion.z;
  return r;
}

bool same_outcome(const ComparisonResult& x, const ComparisonResult& y) {
  auto close = [](double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(a)); };
  return x.n == y.n && x.too_small == y.too_small && x.wilcoxon.favored == y.wilcoxon.favored &&
         close(x.wilcoxon.p_two_sided.value(), y.wilcoxon.p_two_sided.value()) &&
         x.proportion.wins == y.proportion.wins && x.proportion.n == y.proportion.n;
}

bool significant(const ComparisonResult& c, double alpha) {
  return !c.too_small && c.wilcoxon.favored != Favored::None && c.wilcoxon.p_two_sided.value() <= alpha;
}

std::string quote_id(const std::string& id) {
  const bool plain = !id.empty() && !std::isdigit(static_cast<unsigned char>(id.front())) &&
                     std::all_of(id.begin(), id.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
  if (plain) return id;
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

PartialOrder build_order(const std::vector<ComparisonResult>& comparisons, double alpha) {
  PartialOrder order;
  order.alpha = alpha;
  if (comparisons.empty()) return order;

  order.level = comparisons.front().level;
  order.measure = comparisons.front().measure;
  std::set<std::string> nodes;
  using Key = std::tuple<std::string, std::string, PairingMode>;
  std::map<Key, ComparisonResult> unique;
  for (const auto& raw : comparisons) {
    if (raw.level != order.level || raw.measure != order.measure)
      throw Error(ErrorCode::MixedLevels, "build_order: comparisons span several levels or measures");
    auto c = canonical(raw);
    nodes.insert(c.planner_a);
    nodes.insert(c.planner_b);
    Key key{c.planner_a, c.planner_b, c.mode};
    auto [it, inserted] = unique.emplace(key, c);
    if (!inserted && !same_outcome(it->second, c))
      throw Error(ErrorCode::InconsistentComparisons, "build_order: conflicting " + std::string(to_string(c.mode)) +
                                                          " results for " + c.planner_a + " / " + c.planner_b);
  }
  order.nodes.assign(nodes.begin(), nodes.end());

  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& [key, c] : unique) pairs.emplace(std::get<0>(key), std::get<1>(key));

  for (const auto& [a, b] : pairs) {
    const auto whole = unique.find(Key{a, b, PairingMode::AtLeastOne});
    const auto hits = unique.find(Key{a, b, PairingMode::DoubleHits});

    std::optional<OrderEdge> solid;
    if (whole != unique.end()) {
      const auto& c = whole->second;
      if (significant(c, alpha)) {
        const auto winner = *c.favored_planner();
        solid = OrderEdge{winner, winner == a ? b : a, EdgeKind::Solid, c.wilcoxon.p_two_sided.value(), c.n, false};
        order.edges.push_back(*solid);
      } else if (!c.too_small && c.proportion.n > 0 && c.proportion.p_two_sided.value() <= alpha) {
        if (auto leader = c.proportion_leader())
          order.edges.push_back(
              {*leader, *leader == a ? b : a, EdgeKind::Dashed, c.proportion.p_two_sided.value(), c.n, false});
      }
    }
    if (hits != unique.end() && significant(hits->second, alpha)) {
      const auto& c = hits->second;
      const auto winner = *c.favored_planner();
      if (!solid || solid->from != winner) {
        const bool inverts = solid.has_value();
        order.edges.push_back(
            {winner, winner == a ? b : a, EdgeKind::Dotted, c.wilcoxon.p_two_sided.value(), c.n, inverts});
        if (inverts)
          order.annotations.push_back("double hits invert the whole-sample ordering: " + winner + " over " +
                                      solid->from);
      }
    }
  }

  std::sort(order.edges.begin(), order.edges.end(), [](const OrderEdge& x, const OrderEdge& y) {
    return std::tie(x.from, x.to, x.kind) < std::tie(y.from, y.to, y.kind);
  });

  // Solid antisymmetry holds by construction (one at-least-one result per
  // unordered pair); intransitive triples are reported, not repaired.
  std::set<std::pair<std::string, std::string>> solid_edges;
  for (const auto& e : order.edges)
    if (e.kind == EdgeKind::Solid) solid_edges.emplace(e.from, e.to);
  std::set<std::vector<std::string>> cycles;
  for (const auto& [x, y] : solid_edges)
    for (const auto& [y2, z] : solid_edges) {
      if (y2 != y || z == x) continue;
      if (!solid_edges.count({z, x})) continue;
      std::vector<std::string> cycle{x, y, z};
      std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
      cycles.insert(cycle);
    }
  for (const auto& c : cycles)
    order.annotations.push_back("intransitive triple: " + c[0] + " > " + c[1] + " > " + c[2] + " > " + c[0]);
  std::sort(order.annotations.begin(), order.annotations.end());
  return order;
}

PartialOrder transitive_reduction(const PartialOrder& order) {
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& e : order.edges)
    if (e.kind == EdgeKind::Solid) succ[e.from].push_back(e.to);

  auto reaches = [&](const std::string& from, const std::string& to, const std::string& skip_direct) {
    std::vector<std::string> stack;
    std::set<std::string> seen;
    for (const auto& next : succ[from])
      if (next != skip_direct) stack.push_back(next);
    while (!stack.empty()) {
      auto cur = stack.back();
      stack.pop_back();
      if (cur == to) return true;
      if (!seen.insert(cur).second) continue;
      for (const auto& next : succ[cur]) stack.push_back(next);
    }
    return false;
  };

  for (const auto& node : order.nodes)
    if (reaches(node, node, "")) return order;

  PartialOrder reduced = order;
  reduced.edges.clear();
  for (const auto& e : order.edges)
    if (e.kind != EdgeKind::Solid || !reaches(e.from, e.to, e.to)) reduced.edges.push_back(e);
  return reduced;
}

std::string format_p_label(double p) {
  if (!(p > 0.0)) return "0.00e0";
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.2e", p);
  std::string text(buf.data());
  const auto e = text.find('e');
  const int exponent = std::stoi(text.substr(e + 1));
  return text.substr(0, e + 1) + std::to_string(exponent);
}

std::string to_dot(const PartialOrder& order, const std::vector<std::string>& header_comments) {
  std::string out;
  for (const auto& line : header_comments) out += "// " + line + "\n";
  out += "digraph " + quote_id(std::string(to_string(order.level)) + "_" + std::string(to_string(order.measure))) +
         " {\n";
  for (const auto& a : order.annotations) out += "// warning: " + a + "\n";
  for (const auto& node : order.nodes) out += quote_id(node) + ";\n";
  for (const auto& e : order.edges)
    out += quote_id(e.from) + " -> " + quote_id(e.to) + " [style=" + std::string(to_string(e.kind)) + ", label=\"" +
           format_p_label(e.p) + "\"];\n";
  out += "}\n";
  return out;
}

}  // namespace plancomp
