#include "dsk/product_line.hpp"

#include <algorithm>
#include <set>

namespace dsk {

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Design: return "design";
    case Stage::Manufacturing: return "manufacturing";
    case Stage::Delivery: return "delivery";
  }
  return "?";
}

namespace {

const BaseConcept& checked_base(const Registry& registry, const VariantSet& line) {
  const BaseConcept& base = registry.at(line.base);
  std::set<ConceptName> seen;
  for (const auto& v : line.variants) {
    if (v.delta.base != line.base) {
      throw Error(Errc::base_mismatch, "variant '" + v.name.str() + "' targets '" +
                                           v.delta.base.str() + "', the line is based on '" +
                                           line.base.str() + "'");
    }
    if (!seen.insert(v.name).second) {
      throw Error(Errc::duplicate_name, "duplicate variant name '" + v.name.str() + "'");
    }
  }
  return base;
}

}  // namespace

std::map<ConceptName, VariantResult> expand(const Registry& registry, const VariantSet& line) {
  const BaseConcept& base = checked_base(registry, line);
  std::map<ConceptName, VariantResult> results;
  for (const auto& v : line.variants) {
    VariantResult r;
    r.classification = classify(base, v.delta);
    if (r.classification.kind == Classification::Kind::NonConcept) {
      r.ontology = derive(base, v.delta);
    }
    results.emplace(v.name, std::move(r));
  }
  return results;
}

std::map<MemberRef, std::vector<StageEntry>> stage_report(const Registry& registry,
                                                          const VariantSet& line) {
  const BaseConcept& base = checked_base(registry, line);
  std::vector<const Variant*> ordered;
  for (const auto& v : line.variants) ordered.push_back(&v);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Variant* a, const Variant* b) { return a->name < b->name; });

  std::map<MemberRef, std::vector<StageEntry>> report;
  for (const auto* v : ordered) {
    for (const auto& [ref, state] : touched(apply(base, v->delta))) {
      report[ref].push_back({v->name, v->stage, state});
    }
  }
  return report;
}

}  // namespace dsk
