#include "wcde/taxonomy.hpp"

#include "wcde/adjustment.hpp"
#include "wcde/separation.hpp"

namespace wcde {

void validate_query(const Dag& g, const QuerySpec& q) {
  g.name(q.exposure);
  g.name(q.outcome);
  if (q.exposure == q.outcome) {
    throw PreconditionError("exposure and outcome coincide");
  }
  if (q.a == q.a_star) {
    throw PreconditionError("contrast levels a and a_star coincide");
  }
}

MediatorSets mediator_sets(const Dag& g, const QuerySpec& q) {
  validate_query(g, q);
  VertexSet m = g.descendants(q.exposure).intersect(g.ancestors(q.outcome));
  m = m.without(q.exposure).without(q.outcome);
  MediatorSets out;
  out.m_prime = m.intersect(g.parents(q.outcome));
  out.m = std::move(m);
  return out;
}

PartitionLabel classify(const Dag& g, const QuerySpec& q, NodeId w) {
  validate_query(g, q);
  if (w == q.exposure || w == q.outcome) {
    throw IsEndpointError("cannot classify endpoint '" + g.name(w) + "'");
  }
  const NodeId a = q.exposure;
  const NodeId y = q.outcome;
  const VertexSet ws(std::vector<NodeId>{w});
  const VertexSet as(std::vector<NodeId>{a});
  const VertexSet ys(std::vector<NodeId>{y});
  const VertexSet empty;

  const VertexSet de_a = g.descendants(a);
  if (de_a.contains(w) && g.ancestors(y).contains(w)) return PartitionLabel::X3;
  if (g.descendants(y).contains(w)) return PartitionLabel::X6;
  if (de_a.contains(w)) return PartitionLabel::X7;

  // w is a non-descendant of both endpoints from here on.
  const bool sep_a = is_d_separated(g, ws, as, empty);
  const bool sep_y = is_d_separated(g, ws, ys, empty);
  if (sep_a && sep_y) return PartitionLabel::X8;
  if (!sep_a) {
    return is_d_separated(g, ws, ys, as) ? PartitionLabel::X5 : PartitionLabel::X1;
  }
  // Separated from the exposure marginally; conditioning on the outcome
  // opens a collider route for its non-mediating parents.
  if (!is_d_separated(g, ws, as, ys)) return PartitionLabel::X4;
  return PartitionLabel::X2;
}

const char* partition_label_name(PartitionLabel label) {
  switch (label) {
    case PartitionLabel::X1: return "X1";
    case PartitionLabel::X2: return "X2";
    case PartitionLabel::X3: return "X3";
    case PartitionLabel::X4: return "X4";
    case PartitionLabel::X5: return "X5";
    case PartitionLabel::X6: return "X6";
    case PartitionLabel::X7: return "X7";
    case PartitionLabel::X8: return "X8";
  }
  return "?";
}

OsetResult oset(const Dag& g, const QuerySpec& q) {
  validate_query(g, q);
  OsetResult out;
  out.set = g.parents(q.outcome).without(q.exposure);
  out.exposure_is_ancestor = g.ancestors(q.outcome).contains(q.exposure);
  if (!out.exposure_is_ancestor) {
    // Degenerate effect: every set "adjusts" for a zero effect, and the
    // partition route below is not meaningful. Flag and return.
    return out;
  }

  // Independent route: parents of the outcome labelled X1, X3, or X4.
  std::vector<NodeId> picked;
  for (NodeId w : out.set) {
    const PartitionLabel label = classify(g, q, w);
    if (label == PartitionLabel::X1 || label == PartitionLabel::X3 ||
        label == PartitionLabel::X4) {
      picked.push_back(w);
    }
  }
  if (!(VertexSet(std::move(picked)) == out.set)) {
    throw InternalCheckError(
        "optimal-set routes disagree: partition union differs from parent set");
  }
  const VasReport report = check_vas(g, q, out.set);
  if (!report.valid) {
    throw InternalCheckError("optimal set failed the adjustment-set check");
  }
  return out;
}

}  // namespace wcde
