#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dsk/errors.hpp"

// Core value model: named concepts made of parts, functionalities and
// properties, plus the socket structures a concept modification plugs into.
// Everything here is an immutable value with structural equality.

namespace dsk {

// The reserved identity token that marks a modified concept as a non-concept.
inline constexpr std::string_view kNonToken = "Non-";

// True when `text` is a well-formed name: starts with a letter, continues
// with letters, digits, '-' or '_'. Does not check the Non- reservation.
bool is_valid_name(std::string_view text);

// A validated, case-sensitive name. "Non-" itself is rejected: it is a
// reserved token, never a name.
class ConceptName {
public:
  explicit ConceptName(std::string text);
  explicit ConceptName(std::string_view text) : ConceptName(std::string(text)) {}
  explicit ConceptName(const char* text) : ConceptName(std::string(text)) {}

  const std::string& str() const noexcept { return text_; }

  auto operator<=>(const ConceptName&) const = default;

private:
  std::string text_;
};

enum class MemberKind { Part, Functionality, Property };

// DSL spelling of a member kind ("part", "functionality", "property").
std::string_view to_string(MemberKind kind);

struct PartSpec {
  ConceptName name;
  bool essential = false;

  auto operator<=>(const PartSpec&) const = default;
};

struct FunctionalitySpec {
  ConceptName name;
  // Names of parts or properties of the owning concept this functionality
  // depends on. Removing any of them removes the functionality too.
  std::vector<ConceptName> needs;

  auto operator<=>(const FunctionalitySpec&) const = default;
};

struct PropertySpec {
  ConceptName name;

  auto operator<=>(const PropertySpec&) const = default;
};

// A base concept: the unmodified starting point a delta is applied to.
// Construction validates that member names are pairwise distinct across all
// three lists and that every `needs` entry resolves to a part or property.
class BaseConcept {
public:
  BaseConcept(ConceptName name, std::vector<PartSpec> parts,
              std::vector<FunctionalitySpec> functionalities,
              std::vector<PropertySpec> properties);

  const ConceptName& name() const noexcept { return name_; }
  const std::vector<PartSpec>& parts() const noexcept { return parts_; }
  const std::vector<FunctionalitySpec>& functionalities() const noexcept {
    return functionalities_;
  }
  const std::vector<PropertySpec>& properties() const noexcept { return properties_; }

  // Kind of the member with this name, if any.
  std::optional<MemberKind> member_kind(const ConceptName& name) const;
  const PartSpec* find_part(const ConceptName& name) const;
  const FunctionalitySpec* find_functionality(const ConceptName& name) const;
  bool has_member(MemberKind kind, const ConceptName& name) const;

  bool operator==(const BaseConcept&) const = default;

private:
  ConceptName name_;
  std::vector<PartSpec> parts_;
  std::vector<FunctionalitySpec> functionalities_;
  std::vector<PropertySpec> properties_;
};

// One socket slot: a member together with its Boolean plugged-in cardinality
// (0 = removed/absent, 1 = added/present). `item` is a member name for
// tangible modifications; quality ontologies mirror their free-text
// attributes here, so it is a plain string rather than a ConceptName.
struct PluggedEntry {
  std::string item;
  MemberKind kind = MemberKind::Part;
  int cardinality = 0;

  auto operator<=>(const PluggedEntry&) const = default;
};

// An identity plugged into an iSocket: either the reserved Non- token or a
// named label, optionally negated. The Non- token can never be negated; the
// factories make that unrepresentable.
class IdentityLabel {
public:
  static IdentityLabel non() { return IdentityLabel(true, std::string(kNonToken), false); }
  static IdentityLabel named(const ConceptName& name, bool negated = false) {
    return IdentityLabel(false, name.str(), negated);
  }

  bool is_non() const noexcept { return is_non_; }
  const std::string& text() const noexcept { return text_; }
  bool negated() const noexcept { return negated_; }

  bool operator==(const IdentityLabel&) const = default;

private:
  IdentityLabel(bool is_non, std::string text, bool negated)
      : is_non_(is_non), text_(std::move(text)), negated_(negated) {}

  bool is_non_;
  std::string text_;
  bool negated_;
};

// Ordered collection of plugged entries, unique per (item, kind).
struct Socket {
  std::vector<PluggedEntry> entries;

  bool operator==(const Socket&) const = default;
};

// Insert or replace: an entry with the same (item, kind) is overwritten in
// place, otherwise the entry is appended. Rejects non-Boolean cardinality.
Socket socket_insert(Socket socket, PluggedEntry entry);

// Socket entries in canonical order: parts, then functionalities, then
// properties, each group sorted by item text. Serialization and graph
// encoding share this order.
std::vector<const PluggedEntry*> canonical_entries(const Socket& socket);

// Ordered identity labels. Producers guarantee at most one Non- token.
struct ISocket {
  std::vector<IdentityLabel> identities;

  bool has_non() const;

  bool operator==(const ISocket&) const = default;
};

// Positive quality attribute of an intangible modification. Free text,
// trimmed, non-empty, and never the reserved Non- token.
class PosAttribute {
public:
  explicit PosAttribute(std::string_view text);
  const std::string& text() const noexcept { return text_; }

  bool operator==(const PosAttribute&) const = default;

private:
  std::string text_;
};

// Negative counterpart of PosAttribute.
class NegAttribute {
public:
  explicit NegAttribute(std::string_view text);
  const std::string& text() const noexcept { return text_; }

  bool operator==(const NegAttribute&) const = default;

private:
  std::string text_;
};

// A pluggable ontology: the root concept, the socket of modified members,
// the identity socket, and (for intangible modifications only) the pos/neg
// quality attribute pair. pos and neg are always both absent or both set.
struct PluggableOntology {
  ConceptName root;
  Socket socket;
  ISocket isocket;
  std::optional<PosAttribute> pos;
  std::optional<NegAttribute> neg;

  bool operator==(const PluggableOntology&) const = default;
};

}  // namespace dsk
