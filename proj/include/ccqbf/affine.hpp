#pragma once

#include <memory>
#include <set>
#include <vector>

#include "ccqbf/formula.hpp"
#include "ccqbf/solve_stats.hpp"

namespace ccqbf {

/// A GF(2) system over quantified variables. Construction and every operation
/// drop ({},0) rows and structural duplicates (first occurrence kept); ({},1) rows stay.
class AffSystem {
public:
    AffSystem() : prefix_(std::make_shared<Prefix>()), index_(std::make_shared<PrefixIndex>()) {}
    /// Throws DomainError if an equation mentions a variable missing from `prefix`.
    AffSystem(std::vector<AffineEquation> equations, const Prefix& prefix);

    const std::vector<AffineEquation>& equations() const { return eqs_; }
    std::size_t size() const { return eqs_.size(); }
    bool empty() const { return eqs_.empty(); }
    const AffineEquation& operator[](std::size_t i) const { return eqs_[i]; }

    /// The prefix that fixes inner/outer order for this system.
    const Prefix& prefix() const { return *prefix_; }
    std::size_t position(Var v) const { return index_->position(v); }
    bool is_universal(Var v) const { return index_->is_universal(v); }

    /// Variable of equation i quantified last. Throws IndexError / StateError on an empty row.
    Var innermost(std::size_t i) const;
    /// Occurs in exactly one equation.
    bool is_private(Var v) const;
    bool has_contradiction() const;
    std::set<Var> vars() const;

    /// Same prefix, new rows (normalized).
    AffSystem with_equations(std::vector<AffineEquation> equations) const;

    friend bool operator==(const AffSystem& a, const AffSystem& b) { return a.eqs_ == b.eqs_; }

private:
    void normalize();

    std::vector<AffineEquation> eqs_;
    std::shared_ptr<const Prefix> prefix_;
    std::shared_ptr<const PrefixIndex> index_;
};

/// Adds row i to every other row containing x. Throws IndexError, MissingVarError.
AffSystem pivot(const AffSystem& sys, Var x, std::size_t i);

/// pivot followed by removing row i. x must be existential (QuantifierError) and
/// the innermost variable of row i (InnermostError).
AffSystem elim(const AffSystem& sys, Var x, std::size_t i);

/// Truth of the QBF whose prefix is the system's and whose matrix is the system.
bool eval_qaff(const AffSystem& sys);
bool eval_qaff(const Prefix& prefix, std::vector<AffineEquation> equations);

struct ForcedVar {
    Var var;
    /// Row in which `var` is private and innermost; its value follows from the outer variables.
    AffineEquation equation;
};

struct KernelResult {
    Prefix reduced_prefix;
    AffSystem reduced_system;
    /// One entry per row, ordered outermost first.
    std::vector<ForcedVar> forced;
};

/// Shrinks a true affine system to at most |X| rows over at most 2|X| variables while keeping
/// Q.(phi1 ∧ psi) equivalent for every CNF psi over X. Throws PreconditionError when a
/// universal innermost variable or a ({},1) row shows the system was false.
KernelResult kernelize(const Prefix& prefix, const AffSystem& phi1, const std::set<Var>& X);

/// Exact evaluation with at most 2^k leaves, k the backdoor size into affine formulas.
SolveResult solve_aff(const QbfFormula& formula);

}  // namespace ccqbf
