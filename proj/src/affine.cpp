#include "ccqbf/affine.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "ccqbf/backdoor.hpp"
#include "ccqbf/error.hpp"

namespace ccqbf {

namespace {

AffineEquation add_rows(const AffineEquation& a, const AffineEquation& b) {
    std::vector<Var> vars(a.vars().begin(), a.vars().end());
    vars.insert(vars.end(), b.vars().begin(), b.vars().end());
    return AffineEquation(std::move(vars), a.rhs() != b.rhs());
}

void check_row(const AffSystem& sys, std::size_t i) {
    if (i >= sys.size()) {
        throw IndexError("row " + std::to_string(i) + " out of range (" + std::to_string(sys.size()) + " rows)");
    }
}

std::string name(Var v) { return "x" + std::to_string(v.id); }

}  // namespace

AffSystem::AffSystem(std::vector<AffineEquation> equations, const Prefix& prefix)
    : eqs_(std::move(equations)),
      prefix_(std::make_shared<Prefix>(prefix)),
      index_(std::make_shared<PrefixIndex>(prefix)) {
    for (const auto& e : eqs_) {
        for (Var v : e.vars()) {
            if (!index_->contains(v)) throw DomainError(name(v) + " is not quantified");
        }
    }
    normalize();
}

void AffSystem::normalize() {
    std::vector<AffineEquation> out;
    std::set<AffineEquation> seen;
    for (auto& e : eqs_) {
        if (e.is_trivially_true()) continue;
        if (!seen.insert(e).second) continue;
        out.push_back(std::move(e));
    }
    eqs_ = std::move(out);
}

AffSystem AffSystem::with_equations(std::vector<AffineEquation> equations) const {
    AffSystem out;
    out.eqs_ = std::move(equations);
    out.prefix_ = prefix_;
    out.index_ = index_;
    out.normalize();
    return out;
}

Var AffSystem::innermost(std::size_t i) const {
    check_row(*this, i);
    const auto vars = eqs_[i].vars();
    if (vars.empty()) throw StateError("row " + std::to_string(i) + " has no variables");
    return *std::max_element(vars.begin(), vars.end(),
                             [&](Var a, Var b) { return position(a) < position(b); });
}

bool AffSystem::is_private(Var v) const {
    return std::count_if(eqs_.begin(), eqs_.end(), [&](const AffineEquation& e) { return e.contains(v); }) == 1;
}

bool AffSystem::has_contradiction() const {
    return std::any_of(eqs_.begin(), eqs_.end(), [](const AffineEquation& e) { return e.is_contradiction(); });
}

std::set<Var> AffSystem::vars() const {
    std::set<Var> out;
    for (const auto& e : eqs_) out.insert(e.vars().begin(), e.vars().end());
    return out;
}

AffSystem pivot(const AffSystem& sys, Var x, std::size_t i) {
    check_row(sys, i);
    const auto& row = sys[i];
    if (!row.contains(x)) throw MissingVarError(name(x) + " does not occur in row " + std::to_string(i));
    std::vector<AffineEquation> out;
    out.reserve(sys.size());
    for (std::size_t j = 0; j < sys.size(); ++j) {
        out.push_back(j != i && sys[j].contains(x) ? add_rows(sys[j], row) : sys[j]);
    }
    return sys.with_equations(std::move(out));
}

AffSystem elim(const AffSystem& sys, Var x, std::size_t i) {
    check_row(sys, i);
    if (!sys[i].contains(x)) throw MissingVarError(name(x) + " does not occur in row " + std::to_string(i));
    if (sys.is_universal(x)) throw QuantifierError(name(x) + " is universal");
    if (sys.innermost(i) != x) throw InnermostError(name(x) + " is not innermost in row " + std::to_string(i));
    const AffineEquation removed = sys[i];
    auto pivoted = pivot(sys, x, i);
    // pivot never yields a copy of row i (other rows lose x), so the row is still present
    std::vector<AffineEquation> out;
    for (const auto& e : pivoted.equations()) {
        if (!(e == removed)) out.push_back(e);
    }
    return pivoted.with_equations(std::move(out));
}

bool eval_qaff(const AffSystem& sys) {
    AffSystem cur = sys;
    while (!cur.empty()) {
        if (cur.has_contradiction()) return false;
        const Var x = cur.innermost(0);
        if (cur.is_universal(x)) return false;
        cur = elim(cur, x, 0);
    }
    return true;
}

bool eval_qaff(const Prefix& prefix, std::vector<AffineEquation> equations) {
    return eval_qaff(AffSystem(std::move(equations), prefix));
}

KernelResult kernelize(const Prefix& prefix, const AffSystem& phi1, const std::set<Var>& X) {
    AffSystem sys(phi1.equations(), prefix);

    // eliminate innermost non-X variables and split shared innermost X variables until nothing applies
    for (bool changed = true; changed;) {
        changed = false;
        if (sys.has_contradiction()) throw PreconditionError("affine part is false (contradictory row)");
        for (std::size_t i = 0; i < sys.size(); ++i) {
            const Var y = sys.innermost(i);
            if (X.count(y)) continue;
            if (sys.is_universal(y)) throw PreconditionError("affine part is false (" + name(y) + " universal innermost)");
            sys = elim(sys, y, i);
            changed = true;
            break;
        }
        if (changed) continue;
        for (std::size_t i = 0; i < sys.size() && !changed; ++i) {
            const Var x = sys.innermost(i);
            for (std::size_t j = i + 1; j < sys.size(); ++j) {
                if (sys.innermost(j) == x) {
                    sys = pivot(sys, x, i);
                    changed = true;
                    break;
                }
            }
        }
    }

    // outermost rows first: keep only the innermost non-X variable of each row, made private
    std::vector<Var> heads;
    for (std::size_t i = 0; i < sys.size(); ++i) heads.push_back(sys.innermost(i));
    std::sort(heads.begin(), heads.end(), [&](Var a, Var b) { return sys.position(a) < sys.position(b); });
    for (Var head : heads) {
        // heads stay distinct and in place, so each row is found by its head
        std::size_t i = 0;
        while (sys.innermost(i) != head) ++i;
        std::optional<Var> y;
        for (Var v : sys[i].vars()) {
            if (X.count(v)) continue;
            if (!y || sys.position(v) > sys.position(*y)) y = v;
        }
        if (!y) continue;
        if (!sys.is_private(*y)) sys = pivot(sys, *y, i);
        std::vector<Var> kept;
        for (Var v : sys[i].vars()) {
            if (X.count(v) || v == *y) kept.push_back(v);
        }
        auto rows = sys.equations();
        rows[i] = AffineEquation(std::move(kept), rows[i].rhs());
        sys = sys.with_equations(std::move(rows));
    }

    KernelResult out;
    std::set<Var> keep = sys.vars();
    keep.insert(X.begin(), X.end());
    out.reduced_prefix = prefix.restricted_to(keep);

    // which variable each row determines, privatized on a copy from the innermost row outwards
    AffSystem solved = sys;
    const std::vector<Var> det(heads.rbegin(), heads.rend());
    for (Var x : det) {
        std::size_t i = 0;
        while (solved.innermost(i) != x) ++i;
        if (solved.is_universal(x)) throw PreconditionError("affine part is false (" + name(x) + " universal innermost)");
        solved = pivot(solved, x, i);
    }
    for (auto it = det.rbegin(); it != det.rend(); ++it) {
        std::size_t i = 0;
        while (solved.innermost(i) != *it) ++i;
        out.forced.push_back({*it, solved[i]});
    }

    out.reduced_system = AffSystem(sys.equations(), out.reduced_prefix);

    const std::size_t k = X.size();
    const auto& rs = out.reduced_system;
    std::set<Var> innermost;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        innermost.insert(rs.innermost(i));
        const auto outside = std::count_if(rs[i].vars().begin(), rs[i].vars().end(),
                                           [&](Var v) { return X.count(v) == 0; });
        if (outside > 1) throw InternalError("kernel row with more than one non-backdoor variable");
    }
    if (rs.size() > k || rs.vars().size() > 2 * k || innermost.size() != rs.size()) {
        throw InternalError("kernel size bound violated");
    }
    return out;
}

namespace {

class AffSolver {
public:
    AffSolver(const KernelResult& kernel, const std::vector<Clause>& backdoor)
        : kernel_(kernel), backdoor_(backdoor) {
        for (const auto& f : kernel.forced) forced_.emplace(f.var, &f.equation);
    }

    bool run(std::size_t pos, PartialAssignment& tau, std::size_t depth) {
        stats.max_depth = std::max(stats.max_depth, depth);
        const auto& prefix = kernel_.reduced_prefix;
        if (pos == prefix.size()) {
            ++stats.leaves;
            return leaf_value(tau);
        }
        const auto [v, q] = prefix[pos];
        if (auto it = forced_.find(v); it != forced_.end()) {
            bool value = it->second->rhs();
            for (Var w : it->second->vars()) {
                if (w != v) value ^= *tau.get(w);
            }
            tau.set(v, value);
            return run(pos + 1, tau, depth);
        }
        ++stats.branch_nodes;
        const bool exists = q == Quant::Exists;
        bool result = !exists;
        for (bool value : {false, true}) {
            tau.set(v, value);
            if (run(pos + 1, tau, depth + 1) == exists) {
                result = exists;
                break;
            }
        }
        return result;
    }

    SolveStats stats;

private:
    bool leaf_value(const PartialAssignment& tau) const {
        for (const auto& e : kernel_.reduced_system.equations()) {
            if (!eval_atom(e, tau)) return false;
        }
        for (const auto& c : backdoor_) {
            if (!eval_atom(c, tau)) return false;
        }
        return true;
    }

    const KernelResult& kernel_;
    const std::vector<Clause>& backdoor_;
    std::map<Var, const AffineEquation*> forced_;
};

}  // namespace

SolveResult solve_aff(const QbfFormula& formula) {
    QbfFormula f = formula;
    if (!f.base_class) {
        f = partition(f, BaseClass::aff());
    } else if (f.base_class->kind != BaseClass::Kind::Aff) {
        throw ClassError("affine solver given a formula of class " + to_string(*f.base_class));
    }
    std::vector<AffineEquation> eqs;
    for (const auto& atom : f.matrix.tractable) {
        const auto* e = std::get_if<AffineEquation>(&atom);
        if (!e) throw ClassError("tractable part of an affine formula holds a clause");
        eqs.push_back(*e);
    }

    SolveResult out;
    const std::set<Var> X = f.matrix.backdoor_vars();
    out.stats.initial_k = X.size();
    for (Var v : X) {
        if (!f.prefix.contains(v)) throw DomainError(name(v) + " is not quantified");
    }
    const AffSystem phi1(std::move(eqs), f.prefix);
    if (!eval_qaff(phi1)) {
        out.stats.leaves = 1;
        out.value = false;
        return out;
    }
    const auto kernel = kernelize(f.prefix, phi1, X);
    AffSolver solver(kernel, f.matrix.backdoor);
    PartialAssignment tau;
    out.value = solver.run(0, tau, 0);
    solver.stats.initial_k = out.stats.initial_k;
    out.stats = solver.stats;
    if (!out.stats.within_budget()) throw InternalError("affine solver exceeded its leaf budget");
    return out;
}

}  // namespace ccqbf
