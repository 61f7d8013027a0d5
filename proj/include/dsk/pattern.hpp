#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dsk/core.hpp"

// Socket-pattern validation and detection over plain labeled graphs.
//
// A conformant pattern instance is star-shaped: one root class node owning,
// via composition, at most one socket and exactly one iSocket, each with
// plugged-in children. The rule set:
//   R1  plugged-in cardinality is Boolean (0 or 1)
//   R2  an iSocket holds at most one node labeled "Non-"
//   R3  nodes labeled "Non-" attach to iSockets only
//   R4  every socket/iSocket hangs off exactly one class via composition,
//       is never itself plugged or composed elsewhere, and a class owns at
//       most one socket and at most one iSocket
//   R5  no inheritance edges (unrepresentable: the edge kind enum is closed)
//   R6  pos/neg quality nodes appear only as the sole, paired children of a
//       plain socket
//
// Detection finds every maximal instance, also inside graphs that fail
// validation: a connector is *attachable* to a class when its entire edge
// neighbourhood is one composition edge from that class plus plugged-in
// edges to non-connector children, and that local star breaks none of the
// rules above. A class node not labeled "Non-" roots an instance exactly
// when it has one attachable iSocket child and at most one attachable
// socket child; the instance then contains all plugged children of those
// connectors. Ill-formed connectors are invisible to detection, and a class
// with two attachable sockets or iSockets roots nothing.

namespace dsk {

enum class NodeKind { Class, Socket, ISocket, Pos, Neg };

std::string_view to_string(NodeKind kind);

enum class EdgeKind { Composition, PluggedIn };

struct GraphNode {
  std::string id;
  std::string label;
  NodeKind kind = NodeKind::Class;

  auto operator<=>(const GraphNode&) const = default;
};

struct GraphEdge {
  std::string from;
  std::string to;
  EdgeKind kind = EdgeKind::Composition;
  int cardinality = 1;  // meaningful for PluggedIn edges only

  auto operator<=>(const GraphEdge&) const = default;
};

// A labeled graph. Construction checks node-id uniqueness and that edges
// reference existing nodes (Errc::malformed_graph otherwise).
class OntologyGraph {
public:
  OntologyGraph() = default;
  OntologyGraph(std::vector<GraphNode> nodes, std::vector<GraphEdge> edges);

  const std::vector<GraphNode>& nodes() const noexcept { return nodes_; }
  const std::vector<GraphEdge>& edges() const noexcept { return edges_; }
  const GraphNode* find_node(std::string_view id) const;

  bool operator==(const OntologyGraph&) const = default;

private:
  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
};

struct Violation {
  std::string rule;     // "R1".."R6"
  std::string where;    // node id or "from->to"
  std::string message;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  // Advisory only, e.g. a socket-kind node whose label is not the
  // conventional "Socket"/"iSocket". Never affects conformance.
  std::vector<Violation> warnings;

  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const OntologyGraph& graph);

// One detected star: connector ids plus the plugged children, socket
// children first, each group ordered by child id. One entry per plugged
// edge, carrying that edge's cardinality.
struct PatternInstance {
  std::string root;
  std::optional<std::string> socket;
  std::string isocket;
  std::vector<std::pair<std::string, int>> plugged;

  bool operator==(const PatternInstance&) const = default;
};

// All maximal pattern instances, ordered by root node id.
std::vector<PatternInstance> detect(const OntologyGraph& graph);

// Encodes an ontology as a graph: root class, "Socket"/"iSocket" connector
// nodes, one child per socket entry (pos/neg entries become quality nodes)
// and per identity label. Negated identities are labeled "Non-" + name.
// Every ontology the engine produces encodes to a graph that validates
// cleanly.
OntologyGraph encode(const PluggableOntology& ontology);

}  // namespace dsk
