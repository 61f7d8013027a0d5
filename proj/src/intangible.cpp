#include "dsk/intangible.hpp"

namespace dsk {

PluggableOntology build_intangible(const IntangibleSpec& spec) {
  if (spec.pos.text() == spec.neg.text()) {
    throw Error(Errc::duplicate_member,
                "pos and neg attributes of '" + spec.term.str() + "' must differ");
  }
  Socket socket;
  socket = socket_insert(std::move(socket),
                         PluggedEntry{spec.pos.text(), MemberKind::Property, 1});
  socket = socket_insert(std::move(socket),
                         PluggedEntry{spec.neg.text(), MemberKind::Property, 1});
  ISocket isocket;
  isocket.identities.push_back(IdentityLabel::non());
  return PluggableOntology{spec.term, std::move(socket), std::move(isocket), spec.pos,
                           spec.neg};
}

std::vector<PluggableOntology> intangible_variants(
    const ConceptName& term, const std::vector<std::pair<std::string, std::string>>& pairs) {
  if (pairs.empty()) {
    throw Error(Errc::empty_list,
                "at least one pos/neg pair is required for '" + term.str() + "'");
  }
  std::vector<PluggableOntology> out;
  out.reserve(pairs.size());
  for (const auto& [pos, neg] : pairs) {
    out.push_back(build_intangible({term, PosAttribute(pos), NegAttribute(neg)}));
  }
  return out;
}

}  // namespace dsk
