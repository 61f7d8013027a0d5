#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dsk/intangible.hpp"
#include "dsk/pattern.hpp"
#include "dsk/product_line.hpp"
#include "dsk/registry.hpp"

// Textual format: a parser for the dsocket DSL, canonical serializers whose
// output is byte-stable (structural equality implies identical bytes), and a
// DOT exporter for rendering.

namespace dsk {

/// A named modification: `nonconcept <name> from <base> { ... }`.
struct NonConceptDef {
  ConceptName name;
  Delta delta;  // delta.base is the `from` concept

  bool operator==(const NonConceptDef&) const = default;
};

/// A named product line: `productline <name> from <base> { ... }`.
struct ProductLineDef {
  ConceptName name;
  VariantSet line;  // line.base is the `from` concept

  bool operator==(const ProductLineDef&) const = default;
};

/// A named labeled graph: `graph <name> { node... edge... }`.
struct GraphDef {
  ConceptName name;
  OntologyGraph graph;

  bool operator==(const GraphDef&) const = default;
};

using DocItem = std::variant<BaseConcept, NonConceptDef, IntangibleSpec, ProductLineDef, GraphDef>;

/// An ordered collection of parsed items. Names are unique per item kind.
struct Document {
  std::vector<DocItem> items;

  const BaseConcept* find_concept(const ConceptName& name) const;
  const NonConceptDef* find_nonconcept(const ConceptName& name) const;
  const IntangibleSpec* find_intangible(const ConceptName& name) const;
  const ProductLineDef* find_productline(const ConceptName& name) const;
  const GraphDef* find_graph(const ConceptName& name) const;

  bool operator==(const Document&) const = default;
};

/// Parses a DSL document. `from` references resolve against concepts defined
/// anywhere in the document (forward references are fine) and then against
/// `ambient`. Throws ParseError (carrying 1-based line and column) with
/// Errc::syntax_error, Errc::duplicate_name, or Errc::unknown_reference; the
/// one-argument form uses the built-in corpus as the ambient registry.
Document parse(std::string_view text, const Registry& ambient);
Document parse(std::string_view text);

/// The ambient registry extended (and overridden) by the document's own
/// concept definitions.
Registry effective_registry(const Document& doc, const Registry& ambient);
Registry effective_registry(const Document& doc);

/// Canonical ontology form:
///
///   pluggable <root>
///   socket {
///     <kind> <item> = <0|1>
///   }
///   isocket {
///     Non-
///     <label> [negated]
///   }
///   pos "<text>"
///   neg "<text>"
///
/// Socket entries are sorted by kind (part < functionality < property) then
/// item text; empty socket or isocket blocks are elided entirely; identity
/// labels keep their original order except that Non- always prints first.
/// Items that are not plain names, and the pos/neg texts, are double-quoted
/// with `\"` and `\\` escapes. 2-space indent, LF endings, trailing newline.
std::string serialize(const PluggableOntology& ontology);

/// Canonical document form: the `# dsocket-dsl v1` header, then each item as
/// a DSL block, blank-line separated. parse(serialize(doc)) == doc.
std::string serialize(const Document& doc);

/// DOT export of a graph: box nodes (quality nodes as ellipses, labeled
/// "pos: <text>" / "neg: <text>"), composition edges with an open-diamond
/// tail, plugged edges labeled "plugged-in (<cardinality>)".
std::string to_dot(const OntologyGraph& graph, std::string_view name);

/// DOT export of an ontology: encode(ontology) rendered under the root name.
std::string to_dot(const PluggableOntology& ontology);

}  // namespace dsk
