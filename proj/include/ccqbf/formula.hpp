#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ccqbf/base_class.hpp"

namespace ccqbf {

/// A propositional variable, identified by its 1-based QDIMACS index.
struct Var {
    std::uint32_t id = 0;

    friend auto operator<=>(const Var&, const Var&) = default;
};

/// A variable together with a polarity. Orders by (variable id, sign), positive first.
class Lit {
public:
    constexpr Lit() = default;
    constexpr Lit(Var v, bool negative) : code_(2 * v.id + (negative ? 1u : 0u)) {}

    static Lit positive(Var v) { return Lit(v, false); }
    static Lit negative(Var v) { return Lit(v, true); }
    /// From a signed DIMACS integer; 0 is rejected with DomainError.
    static Lit from_dimacs(int value);

    constexpr Var var() const { return Var{code_ >> 1}; }
    constexpr bool is_negative() const { return (code_ & 1u) != 0; }
    constexpr Lit operator~() const { return Lit(code_ ^ 1u); }
    int dimacs() const {
        const int v = static_cast<int>(var().id);
        return is_negative() ? -v : v;
    }
    /// Truth value of the literal when its variable takes `value`.
    constexpr bool satisfied_by(bool value) const { return value != is_negative(); }
    constexpr std::uint32_t code() const { return code_; }

    friend auto operator<=>(const Lit&, const Lit&) = default;

private:
    constexpr explicit Lit(std::uint32_t code) : code_(code) {}
    std::uint32_t code_ = 0;
};

/// A disjunction of literals, stored sorted and free of duplicates.
/// Tautologies are representable so that validation can report them.
class Clause {
public:
    Clause() = default;
    explicit Clause(std::vector<Lit> lits);
    Clause(std::initializer_list<Lit> lits) : Clause(std::vector<Lit>(lits)) {}
    static Clause from_dimacs(std::initializer_list<int> lits);

    std::span<const Lit> literals() const { return lits_; }
    std::size_t size() const { return lits_.size(); }
    bool empty() const { return lits_.empty(); }
    bool is_tautology() const;
    bool contains(Lit l) const;
    bool mentions(Var v) const;
    std::size_t positive_count() const;
    std::size_t negative_count() const { return size() - positive_count(); }

    friend bool operator==(const Clause&, const Clause&) = default;
    friend auto operator<=>(const Clause& a, const Clause& b) { return a.lits_ <=> b.lits_; }

private:
    std::vector<Lit> lits_;
};

/// Parity constraint: XOR of `vars` equals `rhs`. Repeated variables cancel in pairs.
class AffineEquation {
public:
    AffineEquation() = default;
    AffineEquation(std::vector<Var> vars, bool rhs);
    static AffineEquation from_ids(std::initializer_list<std::uint32_t> ids, bool rhs);

    std::span<const Var> vars() const { return vars_; }
    bool rhs() const { return rhs_; }
    std::size_t size() const { return vars_.size(); }
    bool contains(Var v) const;
    bool is_trivially_true() const { return vars_.empty() && !rhs_; }
    bool is_contradiction() const { return vars_.empty() && rhs_; }

    friend bool operator==(const AffineEquation&, const AffineEquation&) = default;
    friend auto operator<=>(const AffineEquation&, const AffineEquation&) = default;

private:
    std::vector<Var> vars_;
    bool rhs_ = false;
};

using Atom = std::variant<Clause, AffineEquation>;

/// Variables of an atom, ascending.
std::vector<Var> atom_vars(const Atom& atom);

enum class Quant : std::uint8_t { Exists, Forall };

struct PrefixEntry {
    Var var;
    Quant quant = Quant::Exists;

    friend bool operator==(const PrefixEntry&, const PrefixEntry&) = default;
};

/// Ordered quantifier prefix, outermost first.
class Prefix {
public:
    Prefix() = default;
    explicit Prefix(std::vector<PrefixEntry> entries) : entries_(std::move(entries)) {}

    void push_back(Var v, Quant q) { entries_.push_back({v, q}); }
    void exists(std::uint32_t id) { push_back(Var{id}, Quant::Exists); }
    void forall(std::uint32_t id) { push_back(Var{id}, Quant::Forall); }

    std::span<const PrefixEntry> entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const PrefixEntry& operator[](std::size_t i) const { return entries_[i]; }

    bool contains(Var v) const;
    std::optional<Quant> quant_of(Var v) const;
    /// Position of v (0 = outermost), or nullopt.
    std::optional<std::size_t> position_of(Var v) const;
    /// Copy with the given variables removed, relative order kept.
    Prefix without(const std::set<Var>& vars) const;
    /// Copy restricted to the given variables, relative order kept.
    Prefix restricted_to(const std::set<Var>& vars) const;

    friend bool operator==(const Prefix&, const Prefix&) = default;

private:
    std::vector<PrefixEntry> entries_;
};

/// Dense lookup of prefix position and quantifier by variable id.
class PrefixIndex {
public:
    PrefixIndex() = default;
    explicit PrefixIndex(const Prefix& prefix);

    bool contains(Var v) const { return v.id < pos_.size() && pos_[v.id] != kNone; }
    std::size_t position(Var v) const { return pos_[v.id]; }
    Quant quant(Var v) const { return quant_[v.id]; }
    bool is_universal(Var v) const { return quant(v) == Quant::Forall; }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> pos_;
    std::vector<Quant> quant_;
};

/// Matrix split into the in-class part and the clause-covering backdoor part.
struct Matrix {
    std::vector<Atom> tractable;
    std::vector<Clause> backdoor;

    std::set<Var> vars() const;
    std::set<Var> backdoor_vars() const;
    std::size_t atom_count() const { return tractable.size() + backdoor.size(); }
    bool empty() const { return tractable.empty() && backdoor.empty(); }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

struct QbfFormula {
    Prefix prefix;
    Matrix matrix;
    std::optional<BaseClass> base_class;

    /// Prefix variables together with matrix variables.
    std::set<Var> variables() const;
    /// |V(backdoor)|.
    std::size_t backdoor_size() const { return matrix.backdoor_vars().size(); }
    /// Largest variable id mentioned anywhere, 0 if none.
    std::uint32_t max_var_id() const;

    friend bool operator==(const QbfFormula&, const QbfFormula&) = default;
};

/// A partial map from variables to truth values.
class PartialAssignment {
public:
    PartialAssignment() = default;
    PartialAssignment(std::initializer_list<std::pair<const Var, bool>> init) : map_(init) {}

    void set(Var v, bool value) { map_[v] = value; }
    std::optional<bool> get(Var v) const;
    bool contains(Var v) const { return map_.count(v) != 0; }
    std::size_t size() const { return map_.size(); }
    bool empty() const { return map_.empty(); }
    std::set<Var> domain() const;
    /// Union; on overlap the entries of `other` win.
    PartialAssignment merged(const PartialAssignment& other) const;

    auto begin() const { return map_.begin(); }
    auto end() const { return map_.end(); }

    friend bool operator==(const PartialAssignment&, const PartialAssignment&) = default;

private:
    std::map<Var, bool> map_;
};

/// Φ[τ]: satisfied clauses dropped, falsified literals removed, equations
/// reduced with their parity updated, assigned variables removed from the prefix.
/// Empty clauses and ({},1) equations remain as explicit ⊥ markers; ({},0) equations
/// are dropped like satisfied clauses. Atoms never move between partitions.
/// Throws DomainError if τ binds a variable the formula does not mention.
QbfFormula apply_assignment(const QbfFormula& formula, const PartialAssignment& tau);

/// Ground evaluation. Throws DomainError if a matrix variable is unbound.
bool eval_matrix(const Matrix& matrix, const PartialAssignment& total);

bool eval_atom(const Atom& atom, const PartialAssignment& total);

struct Violation {
    enum class Kind {
        DuplicatePrefixVar,
        Unquantified,
        Tautology,
        TractableOutOfClass,
    };
    Kind kind;
    std::string message;
};

/// Checks the data-model invariants; an empty result means the formula is valid.
std::vector<Violation> validate(const QbfFormula& formula);

std::string to_string(const Clause& c);
std::string to_string(const AffineEquation& e);
std::string to_string(const QbfFormula& f);

}  // namespace ccqbf
