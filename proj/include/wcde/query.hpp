#pragma once

#include "wcde/graph.hpp"

namespace wcde {

// Causal query: effect of exposure on outcome contrasting levels a vs
// a_star. Levels are numeric codes matched against the exposure column.
struct QuerySpec {
  NodeId exposure;
  NodeId outcome;
  double a = 1.0;
  double a_star = 0.0;
};

// Throws PreconditionError unless exposure != outcome and a != a_star.
void validate_query(const Dag& g, const QuerySpec& q);

}  // namespace wcde
