#include "dsk/delta.hpp"

#include <algorithm>

namespace dsk {

namespace {

// A member's explicit state is whatever the last Remove/Add/Restore op set.
// Dependency propagation is an overlay on top of that: a base functionality
// is suppressed (effectively Removed) while a dependency is missing. The
// overlay lifts when every dependency is back or when the functionality
// itself is explicitly restored; the explicit state underneath survives.
struct Cell {
  MemberState explicit_state = MemberState::Untouched;
  bool suppressed = false;

  MemberState effective() const {
    return suppressed ? MemberState::Removed : explicit_state;
  }
};

struct Engine {
  const BaseConcept& base;
  std::map<MemberRef, Cell> cells;

  explicit Engine(const BaseConcept& b) : base(b) {
    for (const auto& p : b.parts()) cells[{MemberKind::Part, p.name}];
    for (const auto& f : b.functionalities()) cells[{MemberKind::Functionality, f.name}];
    for (const auto& p : b.properties()) cells[{MemberKind::Property, p.name}];
  }

  bool is_base_member(const MemberRef& ref) const {
    return base.has_member(ref.kind, ref.name);
  }

  // Functionalities of the base that depend on this part/property. Only base
  // members can be depended on; a delta-introduced member that shadows a base
  // name under a different kind never triggers propagation.
  std::vector<const FunctionalitySpec*> dependents(const MemberRef& ref) const {
    std::vector<const FunctionalitySpec*> out;
    if (!is_base_member(ref)) return out;
    for (const auto& f : base.functionalities()) {
      if (std::find(f.needs.begin(), f.needs.end(), ref.name) != f.needs.end()) {
        out.push_back(&f);
      }
    }
    return out;
  }

  bool any_need_removed(const FunctionalitySpec& f) const {
    for (const auto& need : f.needs) {
      auto kind = base.member_kind(need);
      if (!kind) continue;
      auto it = cells.find({*kind, need});
      if (it != cells.end() && it->second.effective() == MemberState::Removed) return true;
    }
    return false;
  }

  void suppress_dependents(const MemberRef& ref) {
    for (const auto* f : dependents(ref)) {
      cells[{MemberKind::Functionality, f->name}].suppressed = true;
    }
  }

  // Called when ref leaves the Removed state: suppressions whose
  // dependencies are all back lift, re-exposing the explicit state.
  void recover_dependents(const MemberRef& ref) {
    for (const auto* f : dependents(ref)) {
      Cell& cell = cells[{MemberKind::Functionality, f->name}];
      if (cell.suppressed && !any_need_removed(*f)) cell.suppressed = false;
    }
  }

  void run(const Delta& delta) {
    for (const auto& op : delta.ops) {
      std::visit([&](const auto& o) { step(o); }, op);
    }
  }

  void step(const RemoveOp& op) {
    MemberRef ref{op.kind, op.name};
    if (!cells.count(ref)) {
      throw Error(Errc::unknown_member,
                  "cannot remove unknown " + std::string(to_string(op.kind)) + " '" +
                      op.name.str() + "' of concept '" + base.name().str() + "'");
    }
    cells[ref] = {MemberState::Removed, false};
    if (op.kind != MemberKind::Functionality) suppress_dependents(ref);
  }

  void step(const AddOp& op) {
    MemberRef ref{op.kind, op.name};
    cells[ref] = {MemberState::Added, false};
    if (op.kind != MemberKind::Functionality) {
      recover_dependents(ref);
    } else if (const auto* f = base.find_functionality(op.name);
               f && any_need_removed(*f)) {
      // Re-adding a functionality while a dependency is missing: the standing
      // removal keeps it down until the dependency is back.
      cells[ref].suppressed = true;
    }
  }

  void step(const RestoreOp& op) {
    MemberRef ref{op.kind, op.name};
    auto it = cells.find(ref);
    if (it == cells.end()) {
      throw Error(Errc::unknown_member,
                  "cannot restore unknown " + std::string(to_string(op.kind)) + " '" +
                      op.name.str() + "' of concept '" + base.name().str() + "'");
    }
    if (it->second.effective() == MemberState::Untouched) {
      throw Error(Errc::restore_of_untouched,
                  "restore of untouched " + std::string(to_string(op.kind)) + " '" +
                      op.name.str() + "'");
    }
    if (is_base_member(ref)) {
      // The escape hatch: restoring clears both the explicit state and any
      // suppression, even while a dependency is still missing.
      it->second = {MemberState::Untouched, false};
    } else {
      // A restored delta-introduced member vanishes as if never added.
      cells.erase(it);
    }
    if (op.kind != MemberKind::Functionality) recover_dependents(ref);
  }

  void step(const SetIdentityOp&) {}

  MemberStateMap states() const {
    MemberStateMap out;
    for (const auto& [ref, cell] : cells) out[ref] = cell.effective();
    return out;
  }
};

void check_base(const BaseConcept& base, const Delta& delta) {
  if (delta.base != base.name()) {
    throw Error(Errc::base_mismatch, "delta targets '" + delta.base.str() +
                                         "' but was applied to '" + base.name().str() + "'");
  }
}

Classification classify_states(const BaseConcept& base, const Delta& delta,
                               const MemberStateMap& states) {
  for (const auto& p : base.parts()) {
    if (!p.essential) continue;
    auto it = states.find({MemberKind::Part, p.name});
    if (it != states.end() && it->second == MemberState::Removed) {
      return Classification::breakdown(p.name);
    }
  }
  bool any_touched = std::any_of(states.begin(), states.end(), [](const auto& kv) {
    return kv.second != MemberState::Untouched;
  });
  bool any_identity = std::any_of(delta.ops.begin(), delta.ops.end(), [](const ModOp& op) {
    return std::holds_alternative<SetIdentityOp>(op);
  });
  if (!any_touched && !any_identity) return Classification::original();
  return Classification::non_concept();
}

}  // namespace

std::string_view to_string(MemberState state) {
  switch (state) {
    case MemberState::Untouched: return "untouched";
    case MemberState::Removed: return "removed";
    case MemberState::Added: return "added";
  }
  return "?";
}

std::string to_string(const Classification& c) {
  switch (c.kind) {
    case Classification::Kind::Original: return "original";
    case Classification::Kind::NonConcept: return "nonconcept";
    case Classification::Kind::IdentityBreakdown:
      return "identity-breakdown " + (c.cause ? c.cause->str() : std::string("?"));
  }
  return "?";
}

MemberStateMap apply(const BaseConcept& base, const Delta& delta) {
  check_base(base, delta);
  Engine engine(base);
  engine.run(delta);
  return engine.states();
}

MemberStateMap touched(const MemberStateMap& states) {
  MemberStateMap out;
  for (const auto& [ref, state] : states) {
    if (state != MemberState::Untouched) out[ref] = state;
  }
  return out;
}

Classification classify(const BaseConcept& base, const Delta& delta) {
  return classify_states(base, delta, apply(base, delta));
}

PluggableOntology derive(const BaseConcept& base, const Delta& delta) {
  MemberStateMap states = apply(base, delta);
  Classification cls = classify_states(base, delta, states);
  if (cls.kind == Classification::Kind::IdentityBreakdown) {
    throw Error(Errc::cannot_derive, "cannot derive an ontology for '" + base.name().str() +
                                         "': identity breaks down when essential part '" +
                                         cls.cause->str() + "' is removed");
  }
  if (cls.kind == Classification::Kind::Original) {
    throw Error(Errc::cannot_derive, "cannot derive an ontology for '" + base.name().str() +
                                         "': the delta leaves the concept unmodified");
  }

  Socket socket;
  auto push = [&](const MemberRef& ref) {
    auto it = states.find(ref);
    if (it == states.end() || it->second == MemberState::Untouched) return;
    socket = socket_insert(std::move(socket),
                           PluggedEntry{ref.name.str(), ref.kind,
                                        it->second == MemberState::Added ? 1 : 0});
  };
  // Base members first, in declaration order, then introduced members in
  // the order the delta first added them.
  for (const auto& p : base.parts()) push({MemberKind::Part, p.name});
  for (const auto& f : base.functionalities()) push({MemberKind::Functionality, f.name});
  for (const auto& p : base.properties()) push({MemberKind::Property, p.name});
  std::vector<MemberRef> introduced;
  for (const auto& op : delta.ops) {
    const auto* add = std::get_if<AddOp>(&op);
    if (!add) continue;
    MemberRef ref{add->kind, add->name};
    if (base.has_member(ref.kind, ref.name)) continue;
    if (std::find(introduced.begin(), introduced.end(), ref) != introduced.end()) continue;
    introduced.push_back(ref);
  }
  for (const auto& ref : introduced) push(ref);

  ISocket isocket;
  isocket.identities.push_back(IdentityLabel::non());
  for (const auto& op : delta.ops) {
    const auto* set = std::get_if<SetIdentityOp>(&op);
    if (!set) continue;
    if (set->label.is_non()) {
      throw Error(Errc::duplicate_non,
                  "the Non- identity is already implied and cannot be set explicitly");
    }
    isocket.identities.push_back(set->label);
  }

  return PluggableOntology{base.name(), std::move(socket), std::move(isocket),
                           std::nullopt, std::nullopt};
}

DiffReport diff(const BaseConcept& base, const Delta& a, const Delta& b) {
  if (a.base != b.base) {
    throw Error(Errc::base_mismatch, "cannot diff deltas over different bases ('" +
                                         a.base.str() + "' vs '" + b.base.str() + "')");
  }
  MemberStateMap ta = touched(apply(base, a));
  MemberStateMap tb = touched(apply(base, b));

  DiffReport report;
  for (const auto& [ref, state] : ta) {
    auto it = tb.find(ref);
    if (it == tb.end()) {
      report.only_a.push_back({ref, state});
    } else if (it->second != state) {
      report.changed.push_back({ref, state, it->second});
    }
  }
  for (const auto& [ref, state] : tb) {
    if (!ta.count(ref)) report.only_b.push_back({ref, state});
  }
  return report;
}

}  // namespace dsk
