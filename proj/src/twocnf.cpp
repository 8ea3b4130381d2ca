#include "ccqbf/twocnf.hpp"

#include <algorithm>
#include <cstdint>

#include "ccqbf/error.hpp"

namespace ccqbf {

namespace {

// Literal nodes of the implication graph over a dense variable numbering:
// node 2*i is the positive literal of vars[i], node 2*i+1 the negative one.
class ImplicationClosure {
public:
    explicit ImplicationClosure(std::span<const Clause> phi) {
        for (const auto& c : phi) {
            if (c.size() > 2) throw ArityError("clause " + to_string(c) + " has more than two literals");
            for (Lit l : c.literals()) vars_.push_back(l.var());
        }
        std::sort(vars_.begin(), vars_.end());
        vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());

        nodes_ = 2 * vars_.size();
        words_ = (nodes_ + 63) / 64;
        reach_.assign(nodes_ * words_, 0);

        for (const auto& c : phi) {
            auto lits = c.literals();
            if (lits.empty()) {
                has_empty_ = true;
            } else if (lits.size() == 1) {
                add_edge(negate(node(lits[0])), node(lits[0]));
            } else {
                add_edge(negate(node(lits[0])), node(lits[1]));
                add_edge(negate(node(lits[1])), node(lits[0]));
            }
        }
        // Warshall over bit rows
        for (std::size_t k = 0; k < nodes_; ++k) {
            const std::uint64_t* row_k = row(k);
            for (std::size_t i = 0; i < nodes_; ++i) {
                if (!test(i, k)) continue;
                std::uint64_t* row_i = row(i);
                for (std::size_t w = 0; w < words_; ++w) row_i[w] |= row_k[w];
            }
        }
    }

    bool has_empty() const { return has_empty_; }
    std::size_t nodes() const { return nodes_; }
    bool reaches(std::size_t from, std::size_t to) const { return test(from, to); }
    static std::size_t negate(std::size_t n) { return n ^ 1u; }
    Lit lit(std::size_t n) const { return Lit(vars_[n / 2], (n & 1u) != 0); }
    bool forced(std::size_t n) const { return test(negate(n), n); }

private:
    std::size_t node(Lit l) const {
        auto it = std::lower_bound(vars_.begin(), vars_.end(), l.var());
        return 2 * static_cast<std::size_t>(it - vars_.begin()) + (l.is_negative() ? 1 : 0);
    }
    void add_edge(std::size_t from, std::size_t to) { row(from)[to / 64] |= std::uint64_t{1} << (to % 64); }
    bool test(std::size_t from, std::size_t to) const {
        return (reach_[from * words_ + to / 64] >> (to % 64)) & 1u;
    }
    std::uint64_t* row(std::size_t n) { return reach_.data() + n * words_; }
    const std::uint64_t* row(std::size_t n) const { return reach_.data() + n * words_; }

    std::vector<Var> vars_;
    std::size_t nodes_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> reach_;
    bool has_empty_ = false;
};

}  // namespace

std::vector<Lit> Prop2Cnf::units() const {
    std::vector<Lit> out;
    for (const auto& c : clauses_) {
        if (c.size() == 1) out.push_back(c.literals()[0]);
    }
    return out;
}

std::set<Var> Prop2Cnf::vars() const {
    std::set<Var> out;
    for (const auto& c : clauses_) {
        for (Lit l : c.literals()) out.insert(l.var());
    }
    return out;
}

Prop2Cnf prop(std::span<const Clause> phi) {
    const ImplicationClosure g(phi);
    Prop2Cnf out;
    if (g.has_empty()) {
        out.contradiction_ = true;
        return out;
    }
    const std::size_t n = g.nodes();
    for (std::size_t a = 0; a < n; a += 2) {
        if (g.forced(a) && g.forced(a + 1)) {
            out.contradiction_ = true;
            return out;
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        if (g.forced(a)) out.clauses_.push_back(Clause{g.lit(a)});
    }
    // (a ∨ b) is implied iff ¬a reaches b; clauses touching a forced literal are subsumed
    for (std::size_t a = 0; a < n; ++a) {
        if (g.forced(a)) continue;
        for (std::size_t b = (a | 1u) + 1; b < n; ++b) {
            if (g.forced(b)) continue;
            if (g.reaches(ImplicationClosure::negate(a), b)) out.clauses_.push_back(Clause{g.lit(a), g.lit(b)});
        }
    }
    std::sort(out.clauses_.begin(), out.clauses_.end());
    return out;
}

LookAhead look_ahead(const Prop2Cnf& phi1, Var pivot, const Prefix& prefix) {
    if (phi1.is_contradiction()) throw StateError("look-ahead on a contradictory 2-CNF");
    const auto pivot_quant = prefix.quant_of(pivot);
    if (!pivot_quant) throw DomainError("pivot x" + std::to_string(pivot.id) + " is not quantified");

    LookAhead out;
    out.pivot = pivot;
    for (int b = 0; b < 2; ++b) {
        auto& side = out.side[b];
        std::vector<Clause> extended(phi1.clauses().begin(), phi1.clauses().end());
        extended.push_back(Clause{Lit(pivot, b == 0)});
        const auto closure = prop(extended);
        if (closure.is_contradiction()) {
            side.status = LookAheadSide::Status::Contradiction;
            continue;
        }
        side.assignment.set(pivot, b == 1);
        for (const auto& c : closure.clauses()) {
            if (std::binary_search(phi1.clauses().begin(), phi1.clauses().end(), c)) continue;
            if (c.size() != 1) {
                throw InternalError("look-ahead derived the non-unit clause " + to_string(c));
            }
            const Lit l = c.literals()[0];
            side.units.push_back(l);
            const auto q = prefix.quant_of(l.var());
            if (!q) throw DomainError("forced variable x" + std::to_string(l.var().id) + " is not quantified");
            if (*q == Quant::Exists) side.assignment.set(l.var(), !l.is_negative());
        }
    }
    return out;
}

bool eval_q2cnf(const Prefix& prefix, std::span<const Clause> phi) {
    const PrefixIndex index(prefix);
    for (const auto& c : phi) {
        if (c.size() > 2) throw ArityError("clause " + to_string(c) + " has more than two literals");
        for (Lit l : c.literals()) {
            if (!index.contains(l.var())) {
                throw DomainError("x" + std::to_string(l.var().id) + " is not quantified");
            }
        }
    }
    const auto closure = prop(phi);
    if (closure.is_contradiction()) return false;
    const auto clauses = closure.clauses();
    for (const auto& c : clauses) {
        const auto lits = c.literals();
        if (lits.size() == 1) {
            if (index.is_universal(lits[0].var())) return false;
            continue;
        }
        const bool u0 = index.is_universal(lits[0].var());
        const bool u1 = index.is_universal(lits[1].var());
        if (u0 && u1) return false;
        if (u0 == u1) continue;
        const Lit e = u0 ? lits[1] : lits[0];
        const Lit u = u0 ? lits[0] : lits[1];
        if (index.position(u.var()) < index.position(e.var())) continue;
        // (e ∨ u) together with (¬e ∨ ¬u) makes e ≡ ¬u, decided after e
        if (std::binary_search(clauses.begin(), clauses.end(), Clause{~e, ~u})) return false;
    }
    return true;
}

}  // namespace ccqbf
