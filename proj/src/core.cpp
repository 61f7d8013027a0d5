#include "dsk/core.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace dsk {

namespace {

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
}

std::string trim_copy(std::string_view text) {
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return std::string(text.substr(begin, end - begin));
}

}  // namespace

bool is_valid_name(std::string_view text) {
  if (text.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(text[0]))) return false;
  return std::all_of(text.begin() + 1, text.end(), name_char);
}

ConceptName::ConceptName(std::string text) : text_(std::move(text)) {
  if (!is_valid_name(text_)) {
    throw Error(Errc::invalid_name, "invalid name '" + text_ +
                                        "': names start with a letter and contain only "
                                        "letters, digits, '-' and '_'");
  }
  if (text_ == kNonToken) {
    throw Error(Errc::invalid_name, "'Non-' is reserved and cannot be used as a name");
  }
}

std::string_view to_string(MemberKind kind) {
  switch (kind) {
    case MemberKind::Part: return "part";
    case MemberKind::Functionality: return "functionality";
    case MemberKind::Property: return "property";
  }
  return "?";
}

BaseConcept::BaseConcept(ConceptName name, std::vector<PartSpec> parts,
                         std::vector<FunctionalitySpec> functionalities,
                         std::vector<PropertySpec> properties)
    : name_(std::move(name)),
      parts_(std::move(parts)),
      functionalities_(std::move(functionalities)),
      properties_(std::move(properties)) {
  std::set<std::string_view> seen;
  auto claim = [&](const ConceptName& member) {
    if (!seen.insert(member.str()).second) {
      throw Error(Errc::duplicate_member, "concept '" + name_.str() +
                                              "' declares member '" + member.str() +
                                              "' more than once");
    }
  };
  for (const auto& p : parts_) claim(p.name);
  for (const auto& f : functionalities_) claim(f.name);
  for (const auto& p : properties_) claim(p.name);

  for (auto& f : functionalities_) {
    // Dependencies form a set; drop repeats while keeping first-seen order.
    std::vector<ConceptName> deduped;
    for (const auto& need : f.needs) {
      if (std::find(deduped.begin(), deduped.end(), need) != deduped.end()) continue;
      auto kind = member_kind(need);
      if (!kind || *kind == MemberKind::Functionality) {
        throw Error(Errc::unresolved_requirement,
                    "functionality '" + f.name.str() + "' of concept '" + name_.str() +
                        "' requires '" + need.str() +
                        "', which is not a part or property of the concept");
      }
      deduped.push_back(need);
    }
    f.needs = std::move(deduped);
  }
}

std::optional<MemberKind> BaseConcept::member_kind(const ConceptName& name) const {
  for (const auto& p : parts_)
    if (p.name == name) return MemberKind::Part;
  for (const auto& f : functionalities_)
    if (f.name == name) return MemberKind::Functionality;
  for (const auto& p : properties_)
    if (p.name == name) return MemberKind::Property;
  return std::nullopt;
}

const PartSpec* BaseConcept::find_part(const ConceptName& name) const {
  for (const auto& p : parts_)
    if (p.name == name) return &p;
  return nullptr;
}

const FunctionalitySpec* BaseConcept::find_functionality(const ConceptName& name) const {
  for (const auto& f : functionalities_)
    if (f.name == name) return &f;
  return nullptr;
}

bool BaseConcept::has_member(MemberKind kind, const ConceptName& name) const {
  auto found = member_kind(name);
  return found && *found == kind;
}

Socket socket_insert(Socket socket, PluggedEntry entry) {
  if (entry.cardinality != 0 && entry.cardinality != 1) {
    throw Error(Errc::invalid_cardinality,
                "plugged-in cardinality must be 0 or 1, got " +
                    std::to_string(entry.cardinality));
  }
  for (auto& existing : socket.entries) {
    if (existing.item == entry.item && existing.kind == entry.kind) {
      existing = std::move(entry);
      return socket;
    }
  }
  socket.entries.push_back(std::move(entry));
  return socket;
}

std::vector<const PluggedEntry*> canonical_entries(const Socket& socket) {
  std::vector<const PluggedEntry*> out;
  out.reserve(socket.entries.size());
  for (const auto& e : socket.entries) out.push_back(&e);
  std::stable_sort(out.begin(), out.end(), [](const PluggedEntry* a, const PluggedEntry* b) {
    if (a->kind != b->kind) return static_cast<int>(a->kind) < static_cast<int>(b->kind);
    return a->item < b->item;
  });
  return out;
}

bool ISocket::has_non() const {
  return std::any_of(identities.begin(), identities.end(),
                     [](const IdentityLabel& l) { return l.is_non(); });
}

PosAttribute::PosAttribute(std::string_view text) : text_(trim_copy(text)) {
  if (text_.empty()) {
    throw Error(Errc::empty_attribute, "pos attribute must be non-empty");
  }
  if (text_ == kNonToken) {
    throw Error(Errc::invalid_name, "the reserved token 'Non-' cannot be a quality attribute");
  }
}

NegAttribute::NegAttribute(std::string_view text) : text_(trim_copy(text)) {
  if (text_.empty()) {
    throw Error(Errc::empty_attribute, "neg attribute must be non-empty");
  }
  if (text_ == kNonToken) {
    throw Error(Errc::invalid_name, "the reserved token 'Non-' cannot be a quality attribute");
  }
}

}  // namespace dsk
