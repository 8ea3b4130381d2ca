#include "ccqbf/special.hpp"

#include "ccqbf/affine.hpp"
#include "ccqbf/backdoor.hpp"
#include "ccqbf/error.hpp"
#include "ccqbf/reductions.hpp"
#include "ccqbf/solver_2cnf.hpp"

namespace ccqbf {

namespace {

QbfFormula with_class(const QbfFormula& formula, BaseClass cls, const char* solver) {
    if (!formula.base_class) return partition(formula, cls);
    if (!(*formula.base_class == cls)) {
        throw ClassError(std::string(solver) + " solver given a formula of class " + to_string(*formula.base_class));
    }
    for (const auto& atom : formula.matrix.tractable) {
        if (!atom_in_class(atom, cls)) throw ClassError("tractable atom outside class " + to_string(cls));
    }
    return formula;
}

}  // namespace

SolveResult solve_posneg(const QbfFormula& formula) {
    QbfFormula f = with_class(formula, BaseClass::pos_and_neg_units(), "positive-clause");
    for (Var v : f.matrix.vars()) {
        if (!f.prefix.contains(v)) throw DomainError("x" + std::to_string(v.id) + " is not quantified");
    }
    SolveResult out;
    out.stats.initial_k = f.backdoor_size();

    for (;;) {
        std::optional<Lit> unit;
        bool empty = false;
        auto scan = [&](const Clause& c) {
            if (c.empty()) empty = true;
            if (c.size() == 1 && !unit) unit = c.literals()[0];
        };
        for (const auto& atom : f.matrix.tractable) scan(std::get<Clause>(atom));
        for (const auto& c : f.matrix.backdoor) scan(c);
        if (empty) {
            out.stats.leaves = 1;
            return out;
        }
        if (!unit) break;
        if (*f.prefix.quant_of(unit->var()) == Quant::Forall) {
            out.stats.leaves = 1;
            return out;
        }
        f = apply_assignment(f, {{unit->var(), !unit->is_negative()}});
    }

    const std::set<Var> backdoor = f.matrix.backdoor_vars();
    PartialAssignment sweep;
    for (const auto& e : f.prefix.entries()) {
        if (!backdoor.count(e.var)) sweep.set(e.var, e.quant == Quant::Exists);
    }
    f = apply_assignment(f, sweep);

    const auto [value, leaves] = eval_bruteforce_counted(f, 63);
    out.value = value;
    out.stats.leaves = leaves;
    out.stats.max_depth = f.prefix.size();
    if (!out.stats.within_budget()) throw InternalError("positive-clause solver exceeded its leaf budget");
    return out;
}

SolveResult solve_dual_posneg(const QbfFormula& formula) {
    const QbfFormula f = with_class(formula, BaseClass::neg_and_pos_units(), "negative-clause");
    return solve_posneg(dualize(f));
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "auto") return Algorithm::Auto;
    if (name == "2cnf") return Algorithm::TwoCnf;
    if (name == "aff") return Algorithm::Aff;
    if (name == "posneg") return Algorithm::PosNeg;
    if (name == "dual-posneg") return Algorithm::DualPosNeg;
    if (name == "brute") return Algorithm::Brute;
    throw UnknownTag("unknown algorithm '" + std::string(name) + "'");
}

std::string to_string(AlgorithmTag tag) {
    switch (tag) {
        case AlgorithmTag::TwoCnfBackdoor: return "TwoCnfBackdoor";
        case AlgorithmTag::AffBackdoor: return "AffBackdoor";
        case AlgorithmTag::PosNegUnit: return "PosNegUnit";
        case AlgorithmTag::DualPosNegUnit: return "DualPosNegUnit";
        case AlgorithmTag::BruteForce: return "BruteForce";
    }
    return "?";
}

namespace {

Verdict run_fpt(const QbfFormula& f, BaseClass cls) {
    using K = BaseClass::Kind;
    Verdict v;
    v.cls = cls;
    SolveResult r;
    switch (cls.kind) {
        case K::TwoCnf:
            r = solve_2cnf(f);
            v.algorithm = AlgorithmTag::TwoCnfBackdoor;
            break;
        case K::Aff:
            r = solve_aff(f);
            v.algorithm = AlgorithmTag::AffBackdoor;
            break;
        case K::PosAndNegUnits:
            r = solve_posneg(f);
            v.algorithm = AlgorithmTag::PosNegUnit;
            break;
        case K::NegAndPosUnits:
            r = solve_dual_posneg(f);
            v.algorithm = AlgorithmTag::DualPosNegUnit;
            break;
        default: throw ClassError("no backdoor solver for class " + to_string(cls));
    }
    v.value = r.value;
    v.stats = r.stats;
    return v;
}

Verdict run_brute(const QbfFormula& f, std::size_t cap) {
    Verdict v;
    v.algorithm = AlgorithmTag::BruteForce;
    const auto [value, leaves] = eval_bruteforce_counted(f, cap);
    v.value = value;
    v.stats.leaves = leaves;
    v.stats.initial_k = f.prefix.size();
    v.stats.max_depth = f.prefix.size();
    return v;
}

}  // namespace

Verdict dispatch(const QbfFormula& formula, const DispatchOptions& options) {
    switch (options.algorithm) {
        case Algorithm::TwoCnf: return run_fpt(formula, BaseClass::two_cnf());
        case Algorithm::Aff: return run_fpt(formula, BaseClass::aff());
        case Algorithm::PosNeg: return run_fpt(formula, BaseClass::pos_and_neg_units());
        case Algorithm::DualPosNeg: return run_fpt(formula, BaseClass::neg_and_pos_units());
        case Algorithm::Brute: return run_brute(formula, options.brute_cap);
        case Algorithm::Auto: break;
    }

    const std::size_t n = formula.prefix.size();
    if (formula.base_class && has_fpt_solver(*formula.base_class)) {
        const std::size_t k = formula.backdoor_size();
        if (k < n || n > options.brute_cap) {
            Verdict v = run_fpt(formula, *formula.base_class);
            v.explanation = "declared class " + to_string(*formula.base_class) + ", backdoor of size " + std::to_string(k);
            return v;
        }
    }
    const auto ranks = rank_classes(all_atoms(formula.matrix));
    const ClassRank* best = nullptr;
    for (const auto& r : ranks) {
        if (r.fpt) {
            best = &r;
            break;
        }
    }
    if (best && (best->k < n || n > options.brute_cap)) {
        if (best->k >= n && !options.allow_fallback) {
            throw CapError(std::to_string(n) + " variables exceed the brute-force cap and no backdoor is smaller");
        }
        Verdict v = run_fpt(partition(formula, best->cls), best->cls);
        v.explanation = "backdoor of size " + std::to_string(best->k) + " into " + to_string(best->cls);
        return v;
    }
    if (n > options.brute_cap) {
        throw CapError(std::to_string(n) + " variables exceed the brute-force cap and no backdoor solver applies");
    }
    Verdict v = run_brute(formula, options.brute_cap);
    v.explanation = best ? "smallest backdoor (" + std::to_string(best->k) + " into " + to_string(best->cls) +
                               ") is no smaller than the " + std::to_string(n) + " variables"
                         : "no backdoor solver applies";
    return v;
}

}  // namespace ccqbf
