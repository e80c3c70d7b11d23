#pragma once

#include <string>
#include <vector>

#include "typesql/slots/model.hpp"
#include "typesql/sqlgen/sql_query.hpp"

namespace typesql {

/// Positive-class weight of the per-column condition-column loss.
inline constexpr double kCondColPositiveWeight = 3.0;

/// Gold labels for a teacher-forced pass. Values are located in the
/// question tokens; a value that is not a contiguous span gets no pointer
/// targets.
SlotTargets make_targets(const SqlQuery& gold, const std::vector<std::string>& tokens);

/// Sum of: cross-entropy for the select column, condition count, aggregator
/// and each operator; weighted binary cross-entropy over every column for
/// condition membership; cross-entropy of every pointer step over the T+1
/// choices (gold span tokens, then END).
Var total_loss(const SlotScores& scores, const SlotTargets& gold);

}  // namespace typesql
