#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "dsk/core.hpp"

// Modification deltas over base concepts: ordered operations, the effective
// member-state map they induce, classification of the result, and the
// derivation of a pluggable ontology from it.
//
// Dependency propagation: removing a part or property also removes every
// functionality that needs it, unless a later operation restores or re-adds
// the dependency (or explicitly restores the functionality). Ops are applied
// in order and the last write to a member wins.

namespace dsk {

enum class MemberState { Untouched, Removed, Added };

std::string_view to_string(MemberState state);

// Map key: members are identified by kind and name together.
struct MemberRef {
  MemberKind kind;
  ConceptName name;

  auto operator<=>(const MemberRef&) const = default;
};

struct RemoveOp {
  MemberKind kind;
  ConceptName name;

  auto operator<=>(const RemoveOp&) const = default;
};

struct AddOp {
  MemberKind kind;
  ConceptName name;

  auto operator<=>(const AddOp&) const = default;
};

// Marks a member as if never touched by this delta.
struct RestoreOp {
  MemberKind kind;
  ConceptName name;

  auto operator<=>(const RestoreOp&) const = default;
};

struct SetIdentityOp {
  IdentityLabel label;

  bool operator==(const SetIdentityOp&) const = default;
};

using ModOp = std::variant<RemoveOp, AddOp, RestoreOp, SetIdentityOp>;

struct Delta {
  ConceptName base;
  std::vector<ModOp> ops;

  bool operator==(const Delta&) const = default;
};

using MemberStateMap = std::map<MemberRef, MemberState>;

// Applies the ops in order and returns the effective state of every member:
// all base members plus any member the delta introduced. Errors:
// Errc::unknown_member for a Remove/Restore of a name that is neither a base
// member nor previously added, Errc::restore_of_untouched for restoring an
// untouched member, Errc::base_mismatch when delta.base != base.name().
MemberStateMap apply(const BaseConcept& base, const Delta& delta);

// The non-Untouched projection of a state map.
MemberStateMap touched(const MemberStateMap& states);

// Outcome of a delta: the concept is unchanged, it became a non-concept with
// preserved identity, or an essential part was removed and the identity
// broke down entirely (no ontology can represent that, only this value).
struct Classification {
  enum class Kind { Original, NonConcept, IdentityBreakdown };

  Kind kind = Kind::Original;
  std::optional<ConceptName> cause;  // essential part, for IdentityBreakdown

  static Classification original() { return {Kind::Original, std::nullopt}; }
  static Classification non_concept() { return {Kind::NonConcept, std::nullopt}; }
  static Classification breakdown(ConceptName essential_part) {
    return {Kind::IdentityBreakdown, std::move(essential_part)};
  }

  bool operator==(const Classification&) const = default;
};

std::string to_string(const Classification& c);

// Original if every member is untouched and no identity op is present;
// IdentityBreakdown(part) if an essential part ends up removed; NonConcept
// otherwise.
Classification classify(const BaseConcept& base, const Delta& delta);

// Builds the pluggable ontology of a non-concept: one socket entry per
// removed (cardinality 0) or added (cardinality 1) member, and an iSocket
// holding the Non- token followed by the identity labels in op order.
// Errors: Errc::cannot_derive when classification is IdentityBreakdown or
// Original, Errc::duplicate_non for an explicit Non- identity op (the token
// is already implied).
PluggableOntology derive(const BaseConcept& base, const Delta& delta);

struct DiffEntry {
  MemberRef member;
  MemberState state;

  bool operator==(const DiffEntry&) const = default;
};

struct DiffChange {
  MemberRef member;
  MemberState in_a;
  MemberState in_b;

  bool operator==(const DiffChange&) const = default;
};

// Set comparison of two deltas' touched members, ordered by member.
struct DiffReport {
  std::vector<DiffEntry> only_a;
  std::vector<DiffEntry> only_b;
  std::vector<DiffChange> changed;

  bool operator==(const DiffReport&) const = default;
};

// Compares the effective maps of two deltas over the same base, not their
// op lists. Errors: Errc::base_mismatch when a and b name different bases.
DiffReport diff(const BaseConcept& base, const Delta& a, const Delta& b);

}  // namespace dsk
