#include "dsk/registry.hpp"

namespace dsk {

const BaseConcept* Registry::find(const ConceptName& name) const {
  for (const auto& c : concepts_)
    if (c.name() == name) return &c;
  return nullptr;
}

const BaseConcept& Registry::at(const ConceptName& name) const {
  if (const BaseConcept* c = find(name)) return *c;
  throw Error(Errc::unknown_base, "unknown base concept '" + name.str() + "'");
}

Registry register_concept(Registry registry, BaseConcept entry, bool replace_existing) {
  for (auto& existing : registry.concepts_) {
    if (existing.name() == entry.name()) {
      if (!replace_existing) {
        throw Error(Errc::name_collision,
                    "concept '" + entry.name().str() + "' is already registered");
      }
      existing = std::move(entry);
      return registry;
    }
  }
  registry.concepts_.push_back(std::move(entry));
  return registry;
}

Registry builtin_corpus() {
  static const Registry corpus = [] {
    auto n = [](const char* s) { return ConceptName(s); };
    Registry r;

    r = register_concept(
        std::move(r),
        BaseConcept(n("Clock"),
                    {{n("Battery"), false}, {n("SynchPart"), false}, {n("Scale"), true}},
                    {{n("Periodicity"), {n("Battery")}},
                     {n("Adjustability"), {n("Scale")}},
                     {n("Synchronization"), {n("SynchPart")}}},
                    {}),
        false);

    r = register_concept(
        std::move(r),
        BaseConcept(n("Printer"),
                    {{n("StandardToner"), false}, {n("DowngradedToner"), false}},
                    {{n("Printing"), {}}}, {}),
        false);

    r = register_concept(
        std::move(r),
        BaseConcept(n("Car"), {{n("Battery"), false}, {n("Engine"), false}},
                    {{n("Driving"), {n("Battery")}}}, {}),
        false);

    r = register_concept(
        std::move(r),
        BaseConcept(n("Pipe"), {}, {{n("Smoking"), {n("ThreeDimensions")}}},
                    {{n("ThreeDimensions")}, {n("TwoDimensions")}}),
        false);

    r = register_concept(
        std::move(r),
        BaseConcept(n("Apple"), {{n("FruitImage"), false}}, {{n("Edibility"), {}}},
                    {{n("ThreeDimensions")}, {n("TwoDimensions")}, {n("StylizedImage")}}),
        false);

    r = register_concept(
        std::move(r),
        BaseConcept(n("Person"), {}, {},
                    {{n("ThreeDimensions")},
                     {n("TwoDimensions")},
                     {n("Servant")},
                     {n("WithoutPersonalName")}}),
        false);

    return r;
  }();
  return corpus;
}

}  // namespace dsk
