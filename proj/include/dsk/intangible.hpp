#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dsk/core.hpp"

// Intangible non-concepts: a term qualified by a positive/negative quality
// attribute pair instead of removed or added parts. The attributes are free
// text and are mirrored into the socket so the pattern machinery treats
// tangible and intangible ontologies uniformly.

namespace dsk {

struct IntangibleSpec {
  ConceptName term;
  PosAttribute pos;
  NegAttribute neg;

  bool operator==(const IntangibleSpec&) const = default;
};

// Builds the ontology of an intangible non-concept: root = term, socket with
// the pos and neg texts plugged in at cardinality 1, iSocket = {Non-}, and
// the pos/neg fields set. Errors: Errc::empty_attribute comes from attribute
// construction; Errc::duplicate_member when pos and neg are the same text
// (the pair must name opposite qualities).
PluggableOntology build_intangible(const IntangibleSpec& spec);

// One ontology per pos/neg pair, for terms with several meanings.
// Errors: Errc::empty_list when no pair is given.
std::vector<PluggableOntology> intangible_variants(
    const ConceptName& term, const std::vector<std::pair<std::string, std::string>>& pairs);

}  // namespace dsk
