#pragma once

#include "wcde/graph.hpp"
#include "wcde/query.hpp"

namespace wcde {

// Mediators of the query: m is every vertex on a directed exposure ->
// outcome path, m_prime the mediators that are also parents of the outcome.
struct MediatorSets {
  VertexSet m;        // De(A) cap An(Y), endpoints removed
  VertexSet m_prime;  // m cap Pa(Y)
};

MediatorSets mediator_sets(const Dag& g, const QuerySpec& q);

// Eight-way role of a vertex relative to (exposure, outcome). Labels for
// vertices outside Pa(Y) are informational; only X1/X3/X4 parents of the
// outcome feed the optimal set.
enum class PartitionLabel { X1, X2, X3, X4, X5, X6, X7, X8 };

// Decision order: mediators, then descendants of the outcome, then other
// descendants of the exposure; remaining non-descendants are told apart by
// d-separation signatures (see classify in taxonomy.cpp). w must differ
// from both endpoints.
PartitionLabel classify(const Dag& g, const QuerySpec& q, NodeId w);

const char* partition_label_name(PartitionLabel label);

struct OsetResult {
  VertexSet set;  // always Pa(outcome) minus exposure
  // False when the exposure is not an ancestor of the outcome; the effect
  // is degenerate (zero) and the optimality guarantee does not apply.
  bool exposure_is_ancestor = true;
};

// Optimal adjustment set. Computed twice (partition route and parent
// route) with an internal equality check, then validated as an adjustment
// set; either failure raises InternalCheckError.
OsetResult oset(const Dag& g, const QuerySpec& q);

}  // namespace wcde
