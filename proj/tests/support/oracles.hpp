#pragma once

// Independent reference implementations the tests compare the library
// against. Everything here is deliberately written the slow, obvious way and
// shares no code with the implementation under test beyond public data types
// (and, for the star oracle, the public validate() entry point).

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "dsk/delta.hpp"
#include "dsk/pattern.hpp"

namespace oracle {

// ---------------------------------------------------------------------------
// Dependency-propagation invariant.
//
// For every functionality f of the base: if any dependency of f ends in the
// Removed state while f itself does not, the op list must contain an explicit
// Restore of f placed after the last Remove of every such dependency. States
// are taken from the final map; op positions from the raw list. Returns an
// explanation on failure so property tests can print the counterexample.
inline std::optional<std::string> propagation_violation(const dsk::BaseConcept& base,
                                                        const dsk::Delta& delta,
                                                        const dsk::MemberStateMap& states) {
  auto state_of = [&](dsk::MemberKind kind, const dsk::ConceptName& name) {
    auto it = states.find({kind, name});
    return it == states.end() ? dsk::MemberState::Untouched : it->second;
  };

  for (const auto& f : base.functionalities()) {
    std::vector<dsk::ConceptName> removed_needs;
    for (const auto& need : f.needs) {
      auto kind = base.member_kind(need);
      if (kind && *kind != dsk::MemberKind::Functionality &&
          state_of(*kind, need) == dsk::MemberState::Removed) {
        removed_needs.push_back(need);
      }
    }
    if (removed_needs.empty()) continue;
    if (state_of(dsk::MemberKind::Functionality, f.name) == dsk::MemberState::Removed) continue;

    // f survived a removed dependency: find the last Remove of any removed
    // dependency and demand a later explicit Restore of f.
    int last_remove = -1;
    for (size_t i = 0; i < delta.ops.size(); ++i) {
      const auto* rm = std::get_if<dsk::RemoveOp>(&delta.ops[i]);
      if (!rm) continue;
      for (const auto& need : removed_needs) {
        if (rm->name == need && base.has_member(rm->kind, need)) {
          last_remove = static_cast<int>(i);
        }
      }
    }
    if (last_remove < 0) {
      return "dependency '" + removed_needs.front().str() +
             "' of '" + f.name.str() + "' is Removed without any Remove op";
    }
    bool restored_later = false;
    for (size_t i = static_cast<size_t>(last_remove) + 1; i < delta.ops.size(); ++i) {
      const auto* rs = std::get_if<dsk::RestoreOp>(&delta.ops[i]);
      if (rs && rs->kind == dsk::MemberKind::Functionality && rs->name == f.name) {
        restored_later = true;
      }
    }
    if (!restored_later) {
      return "functionality '" + f.name.str() + "' survived with state != removed while '" +
             removed_needs.front().str() + "' is removed, with no later explicit restore";
    }
  }

  // Dual direction: a functionality may only end Removed through its own
  // explicit Remove or through a dependency that is still removed.
  for (const auto& f : base.functionalities()) {
    if (state_of(dsk::MemberKind::Functionality, f.name) != dsk::MemberState::Removed) continue;
    bool any_need_removed = false;
    for (const auto& need : f.needs) {
      auto kind = base.member_kind(need);
      if (kind && state_of(*kind, need) == dsk::MemberState::Removed) any_need_removed = true;
    }
    if (any_need_removed) continue;
    // No removed dependency: the last explicit op on f must be a Remove.
    std::optional<bool> last_was_remove;
    for (const auto& op : delta.ops) {
      if (const auto* rm = std::get_if<dsk::RemoveOp>(&op)) {
        if (rm->kind == dsk::MemberKind::Functionality && rm->name == f.name)
          last_was_remove = true;
      } else if (const auto* ad = std::get_if<dsk::AddOp>(&op)) {
        if (ad->kind == dsk::MemberKind::Functionality && ad->name == f.name)
          last_was_remove = false;
      } else if (const auto* rs = std::get_if<dsk::RestoreOp>(&op)) {
        if (rs->kind == dsk::MemberKind::Functionality && rs->name == f.name)
          last_was_remove = false;
      }
    }
    if (!last_was_remove.value_or(false)) {
      return "functionality '" + f.name.str() +
             "' is Removed although no dependency is removed and its last explicit op "
             "is not a Remove";
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Brute-force star detection by subset enumeration (graphs up to ~12 nodes).
//
// A connector c is attachable to root r when its entire edge neighbourhood
// is exactly one composition edge r->c plus plugged-in edges from c to nodes
// other than r and c, and the extracted {r, c, children} star passes the
// public validate() with no violations. A subset S of nodes is an instance
// with root r when r is a class not labeled "Non-" whose full attachable
// connector set C contains exactly one iSocket and at most one socket, and
// S = {r} | C | {all plugged children of C}.

struct MiniStar {
  std::vector<dsk::GraphNode> nodes;
  std::vector<dsk::GraphEdge> edges;
};

inline bool oracle_attachable(const dsk::OntologyGraph& g, const dsk::GraphNode& root,
                              const dsk::GraphNode& connector) {
  if (connector.kind != dsk::NodeKind::Socket && connector.kind != dsk::NodeKind::ISocket)
    return false;
  if (connector.id == root.id) return false;

  int compositions_from_root = 0;
  std::vector<const dsk::GraphEdge*> plugs;
  for (const auto& e : g.edges()) {
    bool touches = e.from == connector.id || e.to == connector.id;
    if (!touches) continue;
    if (e.kind == dsk::EdgeKind::Composition && e.from == root.id && e.to == connector.id) {
      ++compositions_from_root;
      continue;
    }
    if (e.kind == dsk::EdgeKind::PluggedIn && e.from == connector.id && e.to != root.id &&
        e.to != connector.id) {
      plugs.push_back(&e);
      continue;
    }
    return false;  // any other incident edge breaks the neighbourhood
  }
  if (compositions_from_root != 1) return false;

  MiniStar star;
  star.nodes.push_back(root);
  star.nodes.push_back(connector);
  star.edges.push_back({root.id, connector.id, dsk::EdgeKind::Composition, 1});
  std::set<std::string> added;
  for (const auto* e : plugs) {
    const dsk::GraphNode* kid = g.find_node(e->to);
    if (!kid) return false;
    if (added.insert(kid->id).second) star.nodes.push_back(*kid);
    star.edges.push_back(*e);
  }
  dsk::OntologyGraph mini(star.nodes, star.edges);
  return dsk::validate(mini).ok();
}

inline std::vector<dsk::PatternInstance> oracle_detect(const dsk::OntologyGraph& g) {
  const auto& nodes = g.nodes();
  size_t n = nodes.size();
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < n; ++i) index[nodes[i].id] = i;

  // Precompute attachable connectors per root candidate.
  std::map<std::string, std::vector<const dsk::GraphNode*>> attachable;
  for (const auto& r : nodes) {
    if (r.kind != dsk::NodeKind::Class) continue;
    for (const auto& c : nodes) {
      if (oracle_attachable(g, r, c)) attachable[r.id].push_back(&c);
    }
  }

  auto plugged_of = [&](const std::string& connector_id) {
    std::vector<std::pair<std::string, int>> kids;
    for (const auto& e : g.edges()) {
      if (e.kind == dsk::EdgeKind::PluggedIn && e.from == connector_id) {
        kids.emplace_back(e.to, e.cardinality);
      }
    }
    std::sort(kids.begin(), kids.end());
    return kids;
  };

  std::vector<dsk::PatternInstance> found;
  // Enumerate every node subset and test whether it is exactly some root's
  // maximal star. Each root admits at most one qualifying subset, so the
  // enumeration double-checks both existence and extent.
  for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
    for (size_t ri = 0; ri < n; ++ri) {
      if (!(mask & (1ul << ri))) continue;
      const dsk::GraphNode& root = nodes[ri];
      if (root.kind != dsk::NodeKind::Class || root.label == dsk::kNonToken) continue;
      auto it = attachable.find(root.id);
      if (it == attachable.end()) continue;
      const auto& connectors = it->second;

      std::vector<const dsk::GraphNode*> socks, isocks;
      for (const auto* c : connectors) {
        (c->kind == dsk::NodeKind::Socket ? socks : isocks).push_back(c);
      }
      if (isocks.size() != 1 || socks.size() > 1) continue;

      std::set<std::string> expected = {root.id};
      for (const auto* c : connectors) {
        expected.insert(c->id);
        for (const auto& [kid, card] : plugged_of(c->id)) expected.insert(kid);
      }
      std::set<std::string> subset;
      for (size_t i = 0; i < n; ++i) {
        if (mask & (1ul << i)) subset.insert(nodes[i].id);
      }
      if (subset != expected) continue;

      dsk::PatternInstance inst;
      inst.root = root.id;
      inst.isocket = isocks.front()->id;
      if (!socks.empty()) {
        inst.socket = socks.front()->id;
        for (auto& kid : plugged_of(socks.front()->id)) inst.plugged.push_back(kid);
      }
      for (auto& kid : plugged_of(isocks.front()->id)) inst.plugged.push_back(kid);
      if (std::find(found.begin(), found.end(), inst) == found.end()) {
        found.push_back(std::move(inst));
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.root < b.root; });
  return found;
}

// ---------------------------------------------------------------------------
// Diff as plain set algebra over the two touched maps.
inline dsk::DiffReport oracle_diff(const dsk::BaseConcept& base, const dsk::Delta& a,
                                   const dsk::Delta& b) {
  dsk::MemberStateMap ta = dsk::touched(dsk::apply(base, a));
  dsk::MemberStateMap tb = dsk::touched(dsk::apply(base, b));
  dsk::DiffReport r;
  for (const auto& [ref, st] : ta) {
    if (!tb.count(ref)) r.only_a.push_back({ref, st});
  }
  for (const auto& [ref, st] : tb) {
    if (!ta.count(ref)) r.only_b.push_back({ref, st});
  }
  for (const auto& [ref, st] : ta) {
    auto it = tb.find(ref);
    if (it != tb.end() && it->second != st) r.changed.push_back({ref, st, it->second});
  }
  return r;
}

// ---------------------------------------------------------------------------
// Tiny DOT census: counts statements instead of parsing the full language.
struct DotCensus {
  int node_statements = 0;
  int edge_statements = 0;
  bool digraph = false;
  bool balanced = false;
};

inline DotCensus dot_census(const std::string& dot) {
  DotCensus c;
  c.digraph = dot.rfind("digraph ", 0) == 0;
  int depth = 0;
  size_t line_start = 0;
  std::vector<std::string> lines;
  for (size_t i = 0; i <= dot.size(); ++i) {
    if (i == dot.size() || dot[i] == '\n') {
      lines.push_back(dot.substr(line_start, i - line_start));
      line_start = i + 1;
    }
  }
  for (char ch : dot) {
    if (ch == '{') ++depth;
    if (ch == '}') --depth;
  }
  c.balanced = depth == 0;
  for (const auto& line : lines) {
    if (line.find(" -> ") != std::string::npos) {
      ++c.edge_statements;
    } else if (line.size() > 4 && line.rfind("  \"", 0) == 0 &&
               line.find('[') != std::string::npos) {
      ++c.node_statements;
    }
  }
  return c;
}

}  // namespace oracle
