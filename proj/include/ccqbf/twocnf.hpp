#pragma once

#include <array>
#include <set>
#include <span>
#include <vector>

#include "ccqbf/formula.hpp"

namespace ccqbf {

/// A 2-CNF closed under resolution with subsumed clauses removed, or the
/// contradiction marker {⊥}. Only `prop` creates these, so every instance is
/// propagated by construction.
class Prop2Cnf {
public:
    bool is_contradiction() const { return contradiction_; }
    /// Canonically ordered clauses; empty for the contradiction marker.
    std::span<const Clause> clauses() const { return clauses_; }
    std::vector<Lit> units() const;
    std::set<Var> vars() const;

    friend bool operator==(const Prop2Cnf&, const Prop2Cnf&) = default;
    friend Prop2Cnf prop(std::span<const Clause> phi);

private:
    Prop2Cnf() = default;
    bool contradiction_ = false;
    std::vector<Clause> clauses_;
};

/// Resolution closure of a clause set with at most two literals per clause,
/// computed as transitive reachability in the implication graph.
/// At most |V|² clauses. Throws ArityError on a wider clause.
Prop2Cnf prop(std::span<const Clause> phi);

/// One side (pivot := b) of the look-ahead.
struct LookAheadSide {
    enum class Status { Consistent, Contradiction };

    Status status = Status::Consistent;
    /// The unit literals newly derived by fixing the pivot (u^b), pivot included.
    std::vector<Lit> units;
    /// Pivot plus forced existential variables (U^b).
    PartialAssignment assignment;

    bool consistent() const { return status == Status::Consistent; }
    std::set<Var> domain() const { return assignment.domain(); }
};

struct LookAhead {
    Var pivot;
    std::array<LookAheadSide, 2> side;  // indexed by the pivot value
};

/// Fixes `pivot` to both values on top of a propagated 2-CNF and reports what is forced.
/// Throws StateError for the contradiction marker, DomainError if a forced variable
/// is not quantified, InternalError if the closure difference is not a set of units.
LookAhead look_ahead(const Prop2Cnf& phi1, Var pivot, const Prefix& prefix);

/// Polynomial-time truth value of a quantified 2-CNF. False iff the closure is
/// contradictory, has a universal unit, a clause over two universals, or equates an
/// existential with a universal literal quantified inside it.
bool eval_q2cnf(const Prefix& prefix, std::span<const Clause> phi);

}  // namespace ccqbf
