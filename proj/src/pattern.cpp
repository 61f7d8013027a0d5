#include "dsk/pattern.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace dsk {

namespace {

bool is_connector(NodeKind kind) {
  return kind == NodeKind::Socket || kind == NodeKind::ISocket;
}

bool is_quality(NodeKind kind) { return kind == NodeKind::Pos || kind == NodeKind::Neg; }

struct Index {
  const OntologyGraph& g;
  std::map<std::string_view, const GraphNode*> node_by_id;

  explicit Index(const OntologyGraph& graph) : g(graph) {
    for (const auto& n : g.nodes()) node_by_id[n.id] = &n;
  }

  const GraphNode& node(std::string_view id) const { return *node_by_id.at(id); }

  std::string edge_key(const GraphEdge& e) const { return e.from + "->" + e.to; }
};

// Plugged children of a connector, as edges.
std::vector<const GraphEdge*> plugged_children(const OntologyGraph& g,
                                               std::string_view connector_id) {
  std::vector<const GraphEdge*> out;
  for (const auto& e : g.edges()) {
    if (e.kind == EdgeKind::PluggedIn && e.from == connector_id) out.push_back(&e);
  }
  return out;
}

// See the header: a connector is attachable to `root_id` when its whole edge
// neighbourhood is the local star and that star is rule-clean.
bool attachable(const Index& ix, const GraphNode& connector, std::string_view root_id) {
  int parent_edges = 0;
  int non_children = 0;
  int pos_children = 0;
  int neg_children = 0;
  int children = 0;
  for (const auto& e : ix.g.edges()) {
    bool from_c = e.from == connector.id;
    bool to_c = e.to == connector.id;
    if (!from_c && !to_c) continue;
    if (e.kind == EdgeKind::Composition) {
      if (!to_c || e.from != root_id) return false;  // wrong parent or outgoing
      ++parent_edges;
      continue;
    }
    // PluggedIn
    if (to_c) return false;  // a connector is never itself plugged somewhere
    if (e.cardinality != 0 && e.cardinality != 1) return false;
    const GraphNode& child = ix.node(e.to);
    if (child.id == connector.id || child.id == root_id) return false;
    if (is_connector(child.kind)) return false;
    ++children;
    if (child.label == kNonToken) ++non_children;
    if (child.kind == NodeKind::Pos) ++pos_children;
    if (child.kind == NodeKind::Neg) ++neg_children;
  }
  if (parent_edges != 1) return false;
  if (connector.kind == NodeKind::ISocket) {
    if (pos_children + neg_children > 0) return false;
    if (non_children > 1) return false;
  } else {
    if (non_children > 0) return false;
    if (pos_children + neg_children > 0) {
      // Quality children come as exactly one pos/neg pair and nothing else.
      if (pos_children != 1 || neg_children != 1 || children != 2) return false;
    }
  }
  return true;
}

}  // namespace

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Class: return "class";
    case NodeKind::Socket: return "socket";
    case NodeKind::ISocket: return "isocket";
    case NodeKind::Pos: return "pos";
    case NodeKind::Neg: return "neg";
  }
  return "?";
}

OntologyGraph::OntologyGraph(std::vector<GraphNode> nodes, std::vector<GraphEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  std::set<std::string_view> ids;
  for (const auto& n : nodes_) {
    if (!ids.insert(n.id).second) {
      throw Error(Errc::malformed_graph, "duplicate node id '" + n.id + "'");
    }
  }
  for (const auto& e : edges_) {
    if (!ids.count(e.from) || !ids.count(e.to)) {
      throw Error(Errc::malformed_graph,
                  "edge " + e.from + "->" + e.to + " references a missing node");
    }
  }
}

const GraphNode* OntologyGraph::find_node(std::string_view id) const {
  for (const auto& n : nodes_)
    if (n.id == id) return &n;
  return nullptr;
}

ValidationReport validate(const OntologyGraph& g) {
  Index ix(g);
  ValidationReport report;
  auto flag = [&](std::string rule, std::string where, std::string message) {
    report.violations.push_back({std::move(rule), std::move(where), std::move(message)});
  };

  // R1: Boolean cardinality on every plugged-in edge.
  for (const auto& e : g.edges()) {
    if (e.kind == EdgeKind::PluggedIn && e.cardinality != 0 && e.cardinality != 1) {
      flag("R1", ix.edge_key(e),
           "plugged-in cardinality must be 0 or 1, got " + std::to_string(e.cardinality));
    }
  }

  for (const auto& n : g.nodes()) {
    // R2: at most one Non- plugged into an iSocket.
    if (n.kind == NodeKind::ISocket) {
      int non_count = 0;
      for (const auto* e : plugged_children(g, n.id)) {
        if (ix.node(e->to).label == kNonToken) ++non_count;
      }
      if (non_count > 1) {
        flag("R2", n.id, "iSocket holds " + std::to_string(non_count) +
                             " Non- nodes, at most one is allowed");
      }
    }

    // R3: Non--labeled nodes only ever hang plugged in an iSocket.
    if (n.label == kNonToken) {
      for (const auto& e : g.edges()) {
        bool ok = e.kind == EdgeKind::PluggedIn && e.to == n.id &&
                  ix.node(e.from).kind == NodeKind::ISocket;
        if ((e.from == n.id || e.to == n.id) && !ok) {
          flag("R3", ix.edge_key(e), "a Non- node may only be plugged into an iSocket");
        }
      }
    }

    // R4, connector side.
    if (is_connector(n.kind)) {
      int parents = 0;
      for (const auto& e : g.edges()) {
        if (e.kind == EdgeKind::Composition && e.from == n.id) {
          flag("R4", ix.edge_key(e), "a connector cannot compose other nodes");
        }
        if (e.kind == EdgeKind::Composition && e.to == n.id) {
          if (ix.node(e.from).kind != NodeKind::Class) {
            flag("R4", ix.edge_key(e), "connector parent must be a class node");
          } else {
            ++parents;
          }
        }
        if (e.kind == EdgeKind::PluggedIn && e.to == n.id) {
          flag("R4", ix.edge_key(e), "a connector cannot be plugged into another node");
        }
      }
      if (parents != 1) {
        flag("R4", n.id, "connector has " + std::to_string(parents) +
                             " class parents, exactly one is required");
      }
      // Naming convention check, advisory only.
      std::string_view conventional = n.kind == NodeKind::Socket ? "Socket" : "iSocket";
      if (n.label != conventional) {
        report.warnings.push_back(
            {"naming", n.id,
             "connector is labeled '" + n.label + "', conventionally '" +
                 std::string(conventional) + "'"});
      }
    }

    // R4, class side: at most one socket and one iSocket child.
    if (n.kind == NodeKind::Class) {
      int sockets = 0;
      int isockets = 0;
      for (const auto& e : g.edges()) {
        if (e.kind != EdgeKind::Composition || e.from != n.id) continue;
        NodeKind child = ix.node(e.to).kind;
        if (child == NodeKind::Socket) ++sockets;
        if (child == NodeKind::ISocket) ++isockets;
      }
      if (sockets > 1) flag("R4", n.id, "class owns more than one socket");
      if (isockets > 1) flag("R4", n.id, "class owns more than one iSocket");
    }

    // R6: pos/neg nodes are the sole, paired children of a plain socket.
    if (is_quality(n.kind)) {
      int incident = 0;
      bool well_attached = false;
      for (const auto& e : g.edges()) {
        if (e.from != n.id && e.to != n.id) continue;
        ++incident;
        well_attached = e.kind == EdgeKind::PluggedIn && e.to == n.id &&
                        ix.node(e.from).kind == NodeKind::Socket;
      }
      if (incident != 1 || !well_attached) {
        flag("R6", n.id, "pos/neg nodes attach to exactly one plain socket and nothing else");
      }
    }
    if (n.kind == NodeKind::Socket) {
      int pos_children = 0;
      int neg_children = 0;
      int children = 0;
      for (const auto* e : plugged_children(g, n.id)) {
        ++children;
        NodeKind k = ix.node(e->to).kind;
        if (k == NodeKind::Pos) ++pos_children;
        if (k == NodeKind::Neg) ++neg_children;
      }
      if ((pos_children > 0 || neg_children > 0) &&
          (pos_children != 1 || neg_children != 1 || children != 2)) {
        flag("R6", n.id,
             "a socket with quality children holds exactly one pos/neg pair and nothing else");
      }
    }
  }

  return report;
}

std::vector<PatternInstance> detect(const OntologyGraph& g) {
  Index ix(g);
  std::vector<PatternInstance> instances;

  for (const auto& root : g.nodes()) {
    if (root.kind != NodeKind::Class || root.label == kNonToken) continue;
    std::vector<const GraphNode*> sockets;
    std::vector<const GraphNode*> isockets;
    for (const auto& e : g.edges()) {
      if (e.kind != EdgeKind::Composition || e.from != root.id) continue;
      const GraphNode& child = ix.node(e.to);
      if (!is_connector(child.kind)) continue;
      if (!attachable(ix, child, root.id)) continue;
      (child.kind == NodeKind::Socket ? sockets : isockets).push_back(&child);
    }
    if (isockets.size() != 1 || sockets.size() > 1) continue;

    PatternInstance instance;
    instance.root = root.id;
    instance.isocket = isockets.front()->id;
    if (!sockets.empty()) instance.socket = sockets.front()->id;
    auto append_children = [&](std::string_view connector_id) {
      auto kids = plugged_children(g, connector_id);
      std::sort(kids.begin(), kids.end(), [](const GraphEdge* a, const GraphEdge* b) {
        return std::tie(a->to, a->cardinality) < std::tie(b->to, b->cardinality);
      });
      for (const auto* e : kids) instance.plugged.emplace_back(e->to, e->cardinality);
    };
    if (instance.socket) append_children(*instance.socket);
    append_children(instance.isocket);
    instances.push_back(std::move(instance));
  }

  std::sort(instances.begin(), instances.end(),
            [](const PatternInstance& a, const PatternInstance& b) { return a.root < b.root; });
  return instances;
}

OntologyGraph encode(const PluggableOntology& ontology) {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  std::set<std::string> used;
  auto claim = [&](const std::string& wanted) {
    if (used.insert(wanted).second) return wanted;
    for (int i = 2;; ++i) {
      std::string candidate = wanted + "_" + std::to_string(i);
      if (used.insert(candidate).second) return candidate;
    }
  };

  std::string root_id = claim(ontology.root.str());
  nodes.push_back({root_id, ontology.root.str(), NodeKind::Class});

  if (!ontology.socket.entries.empty()) {
    std::string socket_id = claim("Socket");
    nodes.push_back({socket_id, "Socket", NodeKind::Socket});
    edges.push_back({root_id, socket_id, EdgeKind::Composition, 1});
    for (const auto* entry : canonical_entries(ontology.socket)) {
      NodeKind kind = NodeKind::Class;
      if (ontology.pos && entry->item == ontology.pos->text()) kind = NodeKind::Pos;
      else if (ontology.neg && entry->item == ontology.neg->text()) kind = NodeKind::Neg;
      std::string id = claim(entry->item);
      nodes.push_back({id, entry->item, kind});
      edges.push_back({socket_id, id, EdgeKind::PluggedIn, entry->cardinality});
    }
  }

  if (!ontology.isocket.identities.empty()) {
    std::string isocket_id = claim("iSocket");
    nodes.push_back({isocket_id, "iSocket", NodeKind::ISocket});
    edges.push_back({root_id, isocket_id, EdgeKind::Composition, 1});
    for (const auto& label : ontology.isocket.identities) {
      std::string text = label.is_non()
                             ? std::string(kNonToken)
                             : (label.negated() ? std::string(kNonToken) + label.text()
                                                : label.text());
      std::string id = claim(text);
      nodes.push_back({id, text, NodeKind::Class});
      edges.push_back({isocket_id, id, EdgeKind::PluggedIn, 1});
    }
  }

  return OntologyGraph(std::move(nodes), std::move(edges));
}

}  // namespace dsk
