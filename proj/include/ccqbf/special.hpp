#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ccqbf/base_class.hpp"
#include "ccqbf/formula.hpp"
#include "ccqbf/oracle.hpp"
#include "ccqbf/solve_stats.hpp"

namespace ccqbf {

/// Backdoor into positive clauses plus negative units: unit propagation, then every
/// non-backdoor existential := 1 and universal := 0, then brute force on the rest.
SolveResult solve_posneg(const QbfFormula& formula);

/// The same for negative clauses plus positive units, by dualizing first.
SolveResult solve_dual_posneg(const QbfFormula& formula);

enum class Algorithm { Auto, TwoCnf, Aff, PosNeg, DualPosNeg, Brute };
enum class AlgorithmTag { TwoCnfBackdoor, AffBackdoor, PosNegUnit, DualPosNegUnit, BruteForce };

/// auto, 2cnf, aff, posneg, dual-posneg, brute. Throws UnknownTag.
Algorithm parse_algorithm(std::string_view name);
std::string to_string(AlgorithmTag tag);

struct DispatchOptions {
    Algorithm algorithm = Algorithm::Auto;
    std::size_t brute_cap = kDefaultBruteCap;
    /// When false, auto mode refuses (CapError) to go past the cap without an FPT gain.
    bool allow_fallback = true;
};

struct Verdict {
    bool value = false;
    AlgorithmTag algorithm = AlgorithmTag::BruteForce;
    SolveStats stats;
    /// Class whose backdoor drove the solver; empty for brute force.
    std::optional<BaseClass> cls;
    std::string explanation;
};

/// Runs the requested solver, or in auto mode the FPT solver with the smallest backdoor,
/// falling back to brute force when no backdoor is smaller than the variable count.
/// A forced solver whose class does not match the formula's tag raises ClassError.
Verdict dispatch(const QbfFormula& formula, const DispatchOptions& options = {});

}  // namespace ccqbf
