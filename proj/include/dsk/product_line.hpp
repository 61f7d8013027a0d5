#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dsk/delta.hpp"
#include "dsk/registry.hpp"

namespace dsk {

/// Lifecycle stage at which a variant's modification is applied.
enum class Stage { Design, Manufacturing, Delivery };

std::string_view to_string(Stage stage);

/// One named member of a product line: a delta against the shared base,
/// tagged with the stage where the deviation happens.
struct Variant {
  ConceptName name;
  Delta delta;
  Stage stage = Stage::Design;

  bool operator==(const Variant&) const = default;
};

/// A product line: a shared base concept plus its named variants.
struct VariantSet {
  ConceptName base;
  std::vector<Variant> variants;

  bool operator==(const VariantSet&) const = default;
};

/// Expansion result for one variant. `ontology` is present only when the
/// variant classifies as a proper modified concept; identity breakdowns are
/// surveyed as a classification with no ontology.
struct VariantResult {
  Classification classification;
  std::optional<PluggableOntology> ontology;

  bool operator==(const VariantResult&) const = default;
};

/// Expand every variant of a product line against its base.
///
/// All variant deltas must target `line.base` (BaseMismatch otherwise) and
/// variant names must be unique (DuplicateName). Throws UnknownBase when the
/// base is not registered. Variants whose delta breaks identity or leaves the
/// base untouched still appear in the result, carrying only a classification.
std::map<ConceptName, VariantResult> expand(const Registry& registry, const VariantSet& line);

/// One row of a stage report: which variant touches a member, at which stage,
/// leaving it in which state.
struct StageEntry {
  ConceptName variant;
  Stage stage;
  MemberState state;

  bool operator==(const StageEntry&) const = default;
};

/// Invert a product line member-wise: for every member any variant touches,
/// list the variants touching it in variant-name order.
std::map<MemberRef, std::vector<StageEntry>> stage_report(const Registry& registry,
                                                          const VariantSet& line);

}  // namespace dsk
