#pragma once

#include <array>

#include "ccqbf/formula.hpp"
#include "ccqbf/solve_stats.hpp"

namespace ccqbf {

/// Outcome of one look-ahead step on the outermost prefix variable.
struct StepDecision {
    enum class Kind { Reject, Follow, Branch };
    enum class Rationale {
        BothSidesFalse,      // neither value leaves a true 2-CNF part
        OneSideTrue,         // exactly one value does; ∃ follows it, ∀ rejects
        DisjointFromBackdoor,// both true and one side avoids the backdoor
        BothHitBackdoor,     // both true, both sides touch the backdoor: branch
    };

    Kind kind = Kind::Reject;
    Rationale rationale = Rationale::BothSidesFalse;
    Var pivot;
    /// Follow: the single assignment to apply.
    PartialAssignment follow;
    /// Branch: U^0 and U^1.
    std::array<PartialAssignment, 2> branch;
};

/// Decides how to treat the outermost variable. The tractable part must be a
/// non-contradictory 2-CNF, the prefix nonempty and no backdoor clause empty
/// (StateError otherwise).
StepDecision step(const QbfFormula& formula);

/// Exact evaluation with at most 2^k leaves, k the backdoor size into 2-CNF.
/// A formula without a class tag is partitioned first; a different tag is a ClassError.
SolveResult solve_2cnf(const QbfFormula& formula);

}  // namespace ccqbf
