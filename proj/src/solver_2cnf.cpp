#include "ccqbf/solver_2cnf.hpp"

#include <algorithm>
#include <optional>

#include "ccqbf/backdoor.hpp"
#include "ccqbf/error.hpp"
#include "ccqbf/twocnf.hpp"

namespace ccqbf {

namespace {

std::vector<Clause> tractable_clauses(const Matrix& m) {
    std::vector<Clause> out;
    out.reserve(m.tractable.size());
    for (const auto& atom : m.tractable) {
        const auto* c = std::get_if<Clause>(&atom);
        if (!c || c->size() > 2) throw ClassError("tractable part is not a 2-CNF");
        out.push_back(*c);
    }
    return out;
}

// φ[τ] on plain clauses: satisfied clauses go, falsified literals are removed.
std::vector<Clause> restrict_clauses(std::span<const Clause> phi, const PartialAssignment& tau) {
    std::vector<Clause> out;
    for (const auto& c : phi) {
        std::vector<Lit> rest;
        bool sat = false;
        for (Lit l : c.literals()) {
            const auto v = tau.get(l.var());
            if (!v) {
                rest.push_back(l);
            } else if (l.satisfied_by(*v)) {
                sat = true;
                break;
            }
        }
        if (!sat) out.emplace_back(std::move(rest));
    }
    return out;
}

bool intersects(const std::set<Var>& a, const std::set<Var>& b) {
    return std::any_of(a.begin(), a.end(), [&](Var v) { return b.count(v) != 0; });
}

StepDecision decide(const Prefix& prefix, const Prop2Cnf& phi1, const std::set<Var>& backdoor_vars) {
    const PrefixEntry outer = prefix[0];
    const auto la = look_ahead(phi1, outer.var, prefix);

    bool truth[2];
    for (int b = 0; b < 2; ++b) {
        const auto& side = la.side[b];
        if (!side.consistent()) {
            truth[b] = false;
            continue;
        }
        const auto rest = restrict_clauses(phi1.clauses(), side.assignment);
        truth[b] = eval_q2cnf(prefix.without(side.domain()), rest);
    }

    StepDecision d;
    d.pivot = outer.var;
    const bool exists = outer.quant == Quant::Exists;
    if (!truth[0] && !truth[1]) {
        d.kind = StepDecision::Kind::Reject;
        d.rationale = StepDecision::Rationale::BothSidesFalse;
        return d;
    }
    if (truth[0] != truth[1]) {
        d.rationale = StepDecision::Rationale::OneSideTrue;
        if (exists) {
            d.kind = StepDecision::Kind::Follow;
            d.follow = la.side[truth[1] ? 1 : 0].assignment;
        } else {
            d.kind = StepDecision::Kind::Reject;
        }
        return d;
    }
    for (int b : {1, 0}) {
        if (intersects(la.side[b].domain(), backdoor_vars)) continue;
        d.kind = StepDecision::Kind::Follow;
        d.rationale = StepDecision::Rationale::DisjointFromBackdoor;
        d.follow = la.side[exists ? b : 1 - b].assignment;
        return d;
    }
    d.kind = StepDecision::Kind::Branch;
    d.rationale = StepDecision::Rationale::BothHitBackdoor;
    d.branch = {la.side[0].assignment, la.side[1].assignment};
    return d;
}

class Solver {
public:
    bool run(QbfFormula f, std::size_t depth) {
        stats.max_depth = std::max(stats.max_depth, depth);
        for (;;) {
            // short backdoor clauses already fit the tractable side
            auto& bd = f.matrix.backdoor;
            auto small = std::stable_partition(bd.begin(), bd.end(), [](const Clause& c) { return c.size() > 2; });
            for (auto it = small; it != bd.end(); ++it) f.matrix.tractable.emplace_back(*it);
            bd.erase(small, bd.end());

            const auto closure = prop(tractable_clauses(f.matrix));
            if (closure.is_contradiction()) return leaf(false);

            const PrefixIndex index(f.prefix);
            PartialAssignment units;
            for (Lit l : closure.units()) {
                if (index.is_universal(l.var())) return leaf(false);
                units.set(l.var(), !l.is_negative());
            }
            f.matrix.tractable.assign(closure.clauses().begin(), closure.clauses().end());
            if (!units.empty()) {
                f = apply_assignment(f, units);
                continue;
            }

            if (f.matrix.backdoor.empty()) {
                return leaf(eval_q2cnf(f.prefix, tractable_clauses(f.matrix)));
            }
            if (f.prefix.empty()) return leaf(eval_matrix(f.matrix, {}));

            const auto d = decide(f.prefix, closure, f.matrix.backdoor_vars());
            switch (d.kind) {
                case StepDecision::Kind::Reject: return leaf(false);
                case StepDecision::Kind::Follow: f = apply_assignment(f, d.follow); continue;
                case StepDecision::Kind::Branch: break;
            }
            ++stats.branch_nodes;
            const bool exists = f.prefix[0].quant == Quant::Exists;
            for (const auto& arm : d.branch) {
                const bool v = run(apply_assignment(f, arm), depth + 1);
                if (v == exists) return v;
            }
            return !exists;
        }
    }

    SolveStats stats;

private:
    bool leaf(bool v) {
        ++stats.leaves;
        return v;
    }
};

}  // namespace

StepDecision step(const QbfFormula& formula) {
    if (formula.prefix.empty()) throw StateError("step on an empty prefix");
    for (const auto& c : formula.matrix.backdoor) {
        if (c.empty()) throw StateError("backdoor contains the empty clause");
    }
    std::vector<Clause> phi1;
    for (const auto& atom : formula.matrix.tractable) {
        const auto* c = std::get_if<Clause>(&atom);
        if (!c || c->size() > 2) throw StateError("tractable part is not a 2-CNF");
        phi1.push_back(*c);
    }
    const auto closure = prop(phi1);
    if (closure.is_contradiction()) throw StateError("tractable part is contradictory");
    return decide(formula.prefix, closure, formula.matrix.backdoor_vars());
}

SolveResult solve_2cnf(const QbfFormula& formula) {
    QbfFormula f = formula;
    if (!f.base_class) {
        f = partition(f, BaseClass::two_cnf());
    } else if (f.base_class->kind != BaseClass::Kind::TwoCnf) {
        throw ClassError("2-CNF solver given a formula of class " + to_string(*f.base_class));
    }
    for (Var v : f.matrix.vars()) {
        if (!f.prefix.contains(v)) throw DomainError("x" + std::to_string(v.id) + " unquantified");
    }
    Solver solver;
    solver.stats.initial_k = f.backdoor_size();
    SolveResult out;
    out.value = solver.run(std::move(f), 0);
    out.stats = solver.stats;
    if (!out.stats.within_budget()) {
        throw InternalError("2-CNF solver used " + std::to_string(out.stats.leaves) + " leaves for k=" +
                            std::to_string(out.stats.initial_k));
    }
    return out;
}

}  // namespace ccqbf
