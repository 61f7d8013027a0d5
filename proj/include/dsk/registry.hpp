#pragma once

#include <vector>

#include "dsk/core.hpp"

// Named lookup of base concepts, plus the built-in corpus the toolkit ships
// with. Registries are immutable values: registration returns a new one.

namespace dsk {

class Registry {
public:
  Registry() = default;

  const BaseConcept* find(const ConceptName& name) const;
  // Like find, but throws Errc::unknown_base when absent.
  const BaseConcept& at(const ConceptName& name) const;
  bool contains(const ConceptName& name) const { return find(name) != nullptr; }

  // Concepts in registration order.
  const std::vector<BaseConcept>& concepts() const noexcept { return concepts_; }

  bool operator==(const Registry&) const = default;

  friend Registry register_concept(Registry registry, BaseConcept entry,
                                   bool replace_existing);

private:
  std::vector<BaseConcept> concepts_;
};

// Adds a concept. An existing concept with the same name is an
// Errc::name_collision unless replace_existing is set, in which case it is
// overwritten in place.
Registry register_concept(Registry registry, BaseConcept entry, bool replace_existing);

// The built-in example concepts: Clock, Printer, Car, Pipe, Apple, Person.
// Deterministic: every call yields the same value.
Registry builtin_corpus();

}  // namespace dsk
