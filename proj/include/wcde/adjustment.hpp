#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wcde/graph.hpp"
#include "wcde/query.hpp"
#include "wcde/separation.hpp"

namespace wcde {

// Adjustment set z split against the mediators of the query: z1 = z cap M
// (the mediating part), z2 = z minus M (the backdoor part).
struct AdjustmentSet {
  VertexSet z;
  VertexSet z1;
  VertexSet z2;

  friend bool operator==(const AdjustmentSet&, const AdjustmentSet&) = default;
};

AdjustmentSet split_adjustment(const Dag& g, const QuerySpec& q, const VertexSet& z);

struct CriterionResult {
  int id = 0;
  bool pass = false;
  // Human-readable evidence: the offending open path for failures, or a
  // vacuity note. Empty for ordinary passes.
  std::string witness;
  // Structured form of the witness when it is a path.
  std::optional<Path> witness_path;
};

struct VasReport {
  bool valid = false;
  std::array<CriterionResult, 4> criteria;
};

struct VasOptions {
  // The default evaluates criterion 2 for each mediator m with the
  // conditioning set (z union {exposure}) minus {m}. Setting this flag
  // drops the exposure from that set, which is stricter: it rejects sets
  // that block mediator-side backdoor paths only through the exposure.
  bool literal_criterion2 = false;
};

// Verifies the four validity criteria:
//   1. no member of z2 descends from the exposure (descendants outside the
//      mediator set act as colliders that couple the exposure with the
//      outcome's parents), and every backdoor path exposure..outcome is
//      blocked by z;
//   2. for each mediator m, every backdoor path m..outcome is blocked by
//      (z union {exposure}) minus {m} (see VasOptions);
//   3. every directed exposure..outcome path with an intermediate vertex
//      has one of its intermediates in z;
//   4. mediating parents of the outcome left out of z1 are d-separated
//      from the outcome's non-mediating parents given z1 (vacuous when
//      either side is empty).
// z must exclude the exposure and the outcome.
VasReport check_vas(const Dag& g, const QuerySpec& q, const VertexSet& z,
                    const VasOptions& opts = {});

// All valid adjustment sets over subsets of V minus {exposure, outcome},
// ordered by size then lexicographically by member names. Guarded to at
// most 20 candidate vertices.
std::vector<AdjustmentSet> enumerate_vas(const Dag& g, const QuerySpec& q,
                                         std::optional<int> max_size = {},
                                         const VasOptions& opts = {});

}  // namespace wcde
