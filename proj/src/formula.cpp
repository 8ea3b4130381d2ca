#include "ccqbf/formula.hpp"

#include <algorithm>
#include <sstream>

#include "ccqbf/backdoor.hpp"
#include "ccqbf/error.hpp"

namespace ccqbf {

Lit Lit::from_dimacs(int value) {
    if (value == 0) throw DomainError("literal 0 is not a literal");
    const auto id = static_cast<std::uint32_t>(value < 0 ? -static_cast<long long>(value) : value);
    return Lit(Var{id}, value < 0);
}

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
    std::sort(lits_.begin(), lits_.end());
    lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
}

Clause Clause::from_dimacs(std::initializer_list<int> lits) {
    std::vector<Lit> out;
    out.reserve(lits.size());
    for (int l : lits) out.push_back(Lit::from_dimacs(l));
    return Clause(std::move(out));
}

bool Clause::is_tautology() const {
    // sorted by (var, sign): complementary literals are adjacent
    for (std::size_t i = 1; i < lits_.size(); ++i) {
        if (lits_[i].var() == lits_[i - 1].var()) return true;
    }
    return false;
}

bool Clause::contains(Lit l) const { return std::binary_search(lits_.begin(), lits_.end(), l); }

bool Clause::mentions(Var v) const { return contains(Lit::positive(v)) || contains(Lit::negative(v)); }

std::size_t Clause::positive_count() const {
    return static_cast<std::size_t>(
        std::count_if(lits_.begin(), lits_.end(), [](Lit l) { return !l.is_negative(); }));
}

AffineEquation::AffineEquation(std::vector<Var> vars, bool rhs) : rhs_(rhs) {
    std::sort(vars.begin(), vars.end());
    for (std::size_t i = 0; i < vars.size();) {
        std::size_t j = i;
        while (j < vars.size() && vars[j] == vars[i]) ++j;
        if ((j - i) % 2 == 1) vars_.push_back(vars[i]);
        i = j;
    }
}

AffineEquation AffineEquation::from_ids(std::initializer_list<std::uint32_t> ids, bool rhs) {
    std::vector<Var> vars;
    for (auto id : ids) vars.push_back(Var{id});
    return AffineEquation(std::move(vars), rhs);
}

bool AffineEquation::contains(Var v) const { return std::binary_search(vars_.begin(), vars_.end(), v); }

std::vector<Var> atom_vars(const Atom& atom) {
    if (const auto* c = std::get_if<Clause>(&atom)) {
        std::vector<Var> out;
        for (Lit l : c->literals()) {
            if (out.empty() || out.back() != l.var()) out.push_back(l.var());
        }
        return out;
    }
    const auto& e = std::get<AffineEquation>(atom);
    return {e.vars().begin(), e.vars().end()};
}

bool Prefix::contains(Var v) const { return position_of(v).has_value(); }

std::optional<Quant> Prefix::quant_of(Var v) const {
    for (const auto& e : entries_) {
        if (e.var == v) return e.quant;
    }
    return std::nullopt;
}

std::optional<std::size_t> Prefix::position_of(Var v) const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].var == v) return i;
    }
    return std::nullopt;
}

Prefix Prefix::without(const std::set<Var>& vars) const {
    Prefix out;
    for (const auto& e : entries_) {
        if (!vars.count(e.var)) out.entries_.push_back(e);
    }
    return out;
}

Prefix Prefix::restricted_to(const std::set<Var>& vars) const {
    Prefix out;
    for (const auto& e : entries_) {
        if (vars.count(e.var)) out.entries_.push_back(e);
    }
    return out;
}

PrefixIndex::PrefixIndex(const Prefix& prefix) {
    std::uint32_t max_id = 0;
    for (const auto& e : prefix.entries()) max_id = std::max(max_id, e.var.id);
    pos_.assign(max_id + 1, kNone);
    quant_.assign(max_id + 1, Quant::Exists);
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        const auto& e = prefix[i];
        if (pos_[e.var.id] == kNone) {
            pos_[e.var.id] = i;
            quant_[e.var.id] = e.quant;
        }
    }
}

std::set<Var> Matrix::vars() const {
    std::set<Var> out;
    for (const auto& a : tractable) {
        for (Var v : atom_vars(a)) out.insert(v);
    }
    for (const auto& c : backdoor) {
        for (Lit l : c.literals()) out.insert(l.var());
    }
    return out;
}

std::set<Var> Matrix::backdoor_vars() const {
    std::set<Var> out;
    for (const auto& c : backdoor) {
        for (Lit l : c.literals()) out.insert(l.var());
    }
    return out;
}

std::set<Var> QbfFormula::variables() const {
    auto out = matrix.vars();
    for (const auto& e : prefix.entries()) out.insert(e.var);
    return out;
}

std::uint32_t QbfFormula::max_var_id() const {
    const auto vars = variables();
    return vars.empty() ? 0 : vars.rbegin()->id;
}

std::optional<bool> PartialAssignment::get(Var v) const {
    auto it = map_.find(v);
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

std::set<Var> PartialAssignment::domain() const {
    std::set<Var> out;
    for (const auto& [v, _] : map_) out.insert(v);
    return out;
}

PartialAssignment PartialAssignment::merged(const PartialAssignment& other) const {
    PartialAssignment out = *this;
    for (const auto& [v, b] : other.map_) out.map_[v] = b;
    return out;
}

namespace {

// nullopt when the clause is satisfied
std::optional<Clause> reduce_clause(const Clause& c, const PartialAssignment& tau) {
    std::vector<Lit> kept;
    kept.reserve(c.size());
    for (Lit l : c.literals()) {
        auto value = tau.get(l.var());
        if (!value) {
            kept.push_back(l);
        } else if (l.satisfied_by(*value)) {
            return std::nullopt;
        }
    }
    return Clause(std::move(kept));
}

AffineEquation reduce_equation(const AffineEquation& e, const PartialAssignment& tau) {
    std::vector<Var> kept;
    bool rhs = e.rhs();
    for (Var v : e.vars()) {
        auto value = tau.get(v);
        if (!value) {
            kept.push_back(v);
        } else if (*value) {
            rhs = !rhs;
        }
    }
    return AffineEquation(std::move(kept), rhs);
}

}  // namespace

QbfFormula apply_assignment(const QbfFormula& formula, const PartialAssignment& tau) {
    if (!tau.empty()) {
        const auto vars = formula.variables();
        for (const auto& [v, _] : tau) {
            if (!vars.count(v)) {
                throw DomainError("assignment binds x" + std::to_string(v.id) +
                                  ", which the formula does not mention");
            }
        }
    }

    QbfFormula out;
    out.base_class = formula.base_class;
    out.prefix = formula.prefix.without(tau.domain());
    for (const auto& atom : formula.matrix.tractable) {
        if (const auto* c = std::get_if<Clause>(&atom)) {
            if (auto reduced = reduce_clause(*c, tau)) out.matrix.tractable.emplace_back(std::move(*reduced));
        } else {
            auto reduced = reduce_equation(std::get<AffineEquation>(atom), tau);
            if (!reduced.is_trivially_true()) out.matrix.tractable.emplace_back(std::move(reduced));
        }
    }
    for (const auto& c : formula.matrix.backdoor) {
        if (auto reduced = reduce_clause(c, tau)) out.matrix.backdoor.push_back(std::move(*reduced));
    }
    return out;
}

namespace {

bool value_of(Var v, const PartialAssignment& total) {
    auto value = total.get(v);
    if (!value) throw DomainError("x" + std::to_string(v.id) + " is unbound");
    return *value;
}

}  // namespace

bool eval_atom(const Atom& atom, const PartialAssignment& total) {
    if (const auto* c = std::get_if<Clause>(&atom)) {
        bool sat = false;
        // every literal is looked up so unbound variables are always reported
        for (Lit l : c->literals()) sat = l.satisfied_by(value_of(l.var(), total)) || sat;
        return sat;
    }
    const auto& e = std::get<AffineEquation>(atom);
    bool parity = false;
    for (Var v : e.vars()) parity ^= value_of(v, total);
    return parity == e.rhs();
}

bool eval_matrix(const Matrix& matrix, const PartialAssignment& total) {
    bool result = true;
    for (const auto& a : matrix.tractable) result = eval_atom(a, total) && result;
    for (const auto& c : matrix.backdoor) result = eval_atom(c, total) && result;
    return result;
}

std::vector<Violation> validate(const QbfFormula& formula) {
    std::vector<Violation> out;
    std::set<Var> seen;
    for (const auto& e : formula.prefix.entries()) {
        if (!seen.insert(e.var).second) {
            out.push_back({Violation::Kind::DuplicatePrefixVar,
                           "x" + std::to_string(e.var.id) + " quantified more than once"});
        }
    }
    for (Var v : formula.matrix.vars()) {
        if (!seen.count(v)) {
            out.push_back({Violation::Kind::Unquantified, "x" + std::to_string(v.id) + " unquantified"});
        }
    }
    auto check_tautology = [&](const Clause& c) {
        if (c.is_tautology()) {
            out.push_back({Violation::Kind::Tautology, "tautological clause " + to_string(c)});
        }
    };
    for (const auto& a : formula.matrix.tractable) {
        if (const auto* c = std::get_if<Clause>(&a)) check_tautology(*c);
    }
    for (const auto& c : formula.matrix.backdoor) check_tautology(c);

    if (formula.base_class) {
        for (const auto& a : formula.matrix.tractable) {
            if (!atom_in_class(a, *formula.base_class)) {
                const std::string text = std::holds_alternative<Clause>(a)
                                             ? to_string(std::get<Clause>(a))
                                             : to_string(std::get<AffineEquation>(a));
                out.push_back({Violation::Kind::TractableOutOfClass,
                               text + " is not in class " + to_string(*formula.base_class)});
            }
        }
    }
    return out;
}

std::string to_string(const Clause& c) {
    if (c.empty()) return "()";
    std::ostringstream os;
    os << '(';
    bool first = true;
    for (Lit l : c.literals()) {
        if (!first) os << " | ";
        first = false;
        os << (l.is_negative() ? "~x" : "x") << l.var().id;
    }
    os << ')';
    return os.str();
}

std::string to_string(const AffineEquation& e) {
    std::ostringstream os;
    os << '(';
    if (e.vars().empty()) os << '0';
    bool first = true;
    for (Var v : e.vars()) {
        if (!first) os << " ^ ";
        first = false;
        os << 'x' << v.id;
    }
    os << " = " << (e.rhs() ? 1 : 0) << ')';
    return os.str();
}

std::string to_string(const QbfFormula& f) {
    std::ostringstream os;
    for (const auto& e : f.prefix.entries()) {
        os << (e.quant == Quant::Forall ? 'A' : 'E') << 'x' << e.var.id << ' ';
    }
    os << '.';
    bool first = true;
    auto sep = [&] {
        os << (first ? " " : " & ");
        first = false;
    };
    for (const auto& a : f.matrix.tractable) {
        sep();
        os << std::visit([](const auto& atom) { return to_string(atom); }, a);
    }
    if (!f.matrix.backdoor.empty()) {
        os << " ||";
        first = true;
        for (const auto& c : f.matrix.backdoor) {
            sep();
            os << to_string(c);
        }
    }
    return os.str();
}

}  // namespace ccqbf
