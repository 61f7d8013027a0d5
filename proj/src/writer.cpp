#include <string>

#include "dsk/textio.hpp"

namespace dsk {

namespace {

std::string quoted(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

// Socket items print bare when they read back as one identifier token.
std::string item_text(const std::string& item) {
  if (is_valid_name(item) && item != kNonToken) return item;
  return quoted(item);
}

void write_mods(std::string& out, const std::vector<ModOp>& ops, std::string_view indent) {
  for (const auto& op : ops) {
    out += indent;
    if (const auto* r = std::get_if<RemoveOp>(&op)) {
      out += "remove " + std::string(to_string(r->kind)) + " " + r->name.str();
    } else if (const auto* a = std::get_if<AddOp>(&op)) {
      out += "add " + std::string(to_string(a->kind)) + " " + a->name.str();
    } else if (const auto* s = std::get_if<RestoreOp>(&op)) {
      out += "restore " + std::string(to_string(s->kind)) + " " + s->name.str();
    } else {
      const auto& label = std::get<SetIdentityOp>(op).label;
      out += "identity " + label.text();
      if (label.negated()) out += " negated";
    }
    out += "\n";
  }
}

void write_concept(std::string& out, const BaseConcept& c) {
  out += "concept " + c.name().str() + " {\n";
  for (const auto& p : c.parts()) {
    out += "  part " + p.name.str();
    if (p.essential) out += " essential";
    out += "\n";
  }
  for (const auto& f : c.functionalities()) {
    out += "  functionality " + f.name.str();
    for (size_t i = 0; i < f.needs.size(); ++i) {
      out += i == 0 ? " requires " : ", ";
      out += f.needs[i].str();
    }
    out += "\n";
  }
  for (const auto& p : c.properties()) {
    out += "  property " + p.name.str() + "\n";
  }
  out += "}\n";
}

void write_nonconcept(std::string& out, const NonConceptDef& d) {
  out += "nonconcept " + d.name.str() + " from " + d.delta.base.str() + " {\n";
  write_mods(out, d.delta.ops, "  ");
  out += "}\n";
}

void write_intangible(std::string& out, const IntangibleSpec& d) {
  out += "intangible " + d.term.str() + " {\n";
  out += "  pos " + quoted(d.pos.text()) + "\n";
  out += "  neg " + quoted(d.neg.text()) + "\n";
  out += "}\n";
}

void write_productline(std::string& out, const ProductLineDef& d) {
  out += "productline " + d.name.str() + " from " + d.line.base.str() + " {\n";
  for (const auto& v : d.line.variants) {
    out += "  variant " + v.name.str() + " stage " + std::string(to_string(v.stage)) + " {\n";
    write_mods(out, v.delta.ops, "    ");
    out += "  }\n";
  }
  out += "}\n";
}

void write_graph(std::string& out, const GraphDef& d) {
  out += "graph " + d.name.str() + " {\n";
  for (const auto& n : d.graph.nodes()) {
    out += "  node " + n.id + " : " + std::string(to_string(n.kind));
    if (n.label != n.id) out += " label " + quoted(n.label);
    out += "\n";
  }
  for (const auto& e : d.graph.edges()) {
    out += "  edge " + e.from + " -> " + e.to + " : ";
    if (e.kind == EdgeKind::Composition) {
      out += "composition";
    } else {
      out += "plugged " + std::to_string(e.cardinality);
    }
    out += "\n";
  }
  out += "}\n";
}

std::string dot_quoted(std::string_view text) { return quoted(text); }

}  // namespace

std::string serialize(const PluggableOntology& ontology) {
  std::string out = "pluggable " + ontology.root.str() + "\n";
  auto entries = canonical_entries(ontology.socket);
  if (!entries.empty()) {
    out += "socket {\n";
    for (const auto* e : entries) {
      out += "  " + std::string(to_string(e->kind)) + " " + item_text(e->item) + " = " +
             std::to_string(e->cardinality) + "\n";
    }
    out += "}\n";
  }
  if (!ontology.isocket.identities.empty()) {
    out += "isocket {\n";
    for (const auto& id : ontology.isocket.identities) {
      if (id.is_non()) out += "  Non-\n";
    }
    for (const auto& id : ontology.isocket.identities) {
      if (id.is_non()) continue;
      out += "  " + id.text();
      if (id.negated()) out += " negated";
      out += "\n";
    }
    out += "}\n";
  }
  if (ontology.pos) out += "pos " + quoted(ontology.pos->text()) + "\n";
  if (ontology.neg) out += "neg " + quoted(ontology.neg->text()) + "\n";
  return out;
}

std::string serialize(const Document& doc) {
  std::string out = "# dsocket-dsl v1\n";
  for (const auto& item : doc.items) {
    out += "\n";
    if (const auto* c = std::get_if<BaseConcept>(&item)) {
      write_concept(out, *c);
    } else if (const auto* n = std::get_if<NonConceptDef>(&item)) {
      write_nonconcept(out, *n);
    } else if (const auto* i = std::get_if<IntangibleSpec>(&item)) {
      write_intangible(out, *i);
    } else if (const auto* p = std::get_if<ProductLineDef>(&item)) {
      write_productline(out, *p);
    } else {
      write_graph(out, std::get<GraphDef>(item));
    }
  }
  return out;
}

std::string to_dot(const OntologyGraph& graph, std::string_view name) {
  std::string out = "digraph " + dot_quoted(name) + " {\n";
  out += "  rankdir=TB;\n";
  out += "  node [shape=box];\n";
  for (const auto& n : graph.nodes()) {
    std::string label = n.label;
    if (n.kind == NodeKind::Pos) label = "pos: " + label;
    if (n.kind == NodeKind::Neg) label = "neg: " + label;
    out += "  " + dot_quoted(n.id) + " [label=" + dot_quoted(label);
    if (n.kind == NodeKind::Pos || n.kind == NodeKind::Neg) out += ", shape=ellipse";
    out += "];\n";
  }
  for (const auto& e : graph.edges()) {
    out += "  " + dot_quoted(e.from) + " -> " + dot_quoted(e.to);
    if (e.kind == EdgeKind::Composition) {
      out += " [dir=both, arrowtail=odiamond, arrowhead=none];\n";
    } else {
      out += " [label=" + dot_quoted("plugged-in (" + std::to_string(e.cardinality) + ")") +
             "];\n";
    }
  }
  out += "}\n";
  return out;
}

std::string to_dot(const PluggableOntology& ontology) {
  return to_dot(encode(ontology), ontology.root.str());
}

}  // namespace dsk
