#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ccqbf {

/// An r-ary Boolean relation. Bit j of a tuple is coordinate j (0-based).
struct Relation {
    std::string name;
    std::size_t arity = 0;
    std::set<std::uint32_t> tuples;

    bool contains(std::uint32_t tuple) const { return tuples.count(tuple) != 0; }
    /// Tuple from a bit string whose first character is coordinate 0. Throws DomainError.
    static std::uint32_t tuple_from_bits(std::string_view bits);
    static std::string tuple_to_bits(std::uint32_t tuple, std::size_t arity);

    /// Relation from bit strings, e.g. {"00","01","11"}.
    static Relation from_bits(std::string name, std::size_t arity, const std::vector<std::string>& tuples);

    friend bool operator==(const Relation&, const Relation&) = default;
};

/// Complement every coordinate of every tuple.
Relation dual_relation(const Relation& r);

/// A d-ary Boolean operation. Row index is x1 + 2*x2 + ... + 2^(d-1)*xd.
struct BoolFunction {
    std::size_t arity = 0;
    std::vector<bool> table;
    std::string name;

    bool operator()(std::uint32_t row) const { return table[row]; }
    bool apply(const std::vector<bool>& args) const;
};

/// min, max, maj, mnrty, x&(y|z), x|(y&z), x&(y|~z), x|(y&~z), and t<d> for d >= 3,
/// where t<d> is 1 iff at least two of its d arguments are 1. Throws UnknownTag.
BoolFunction named_function(std::string_view tag);

/// f^dual(x1..xd) = ¬f(¬x1..¬xd).
BoolFunction dual_function(const BoolFunction& f);

struct PolymorphismCheck {
    bool holds = true;
    /// On failure: d rows of R (tuples) whose column-wise image is not in R.
    std::vector<std::uint32_t> witness;
    std::uint32_t image = 0;
};

/// Column-wise image of `rows` under f for an r-ary relation.
std::uint32_t apply_columnwise(const BoolFunction& f, const std::vector<std::uint32_t>& rows, std::size_t arity);

/// Brute force over all |R|^d row choices. Throws ParamError when that exceeds `max_checks`.
PolymorphismCheck is_polymorphism(const BoolFunction& f, const Relation& r,
                                  std::uint64_t max_checks = std::uint64_t{1} << 26);

/// Polymorphism of every relation in gamma; on failure the witness names the relation.
struct LanguageCheck {
    bool holds = true;
    std::size_t relation = 0;
    PolymorphismCheck detail;
};
LanguageCheck is_polymorphism(const BoolFunction& f, const std::vector<Relation>& gamma);

/// One polymorphism test the classifier ran.
struct WitnessFact {
    BoolFunction function;
    bool preserves = false;
    /// For a failed check: index into the language and the rows that break it.
    std::size_t relation = 0;
    std::vector<std::uint32_t> rows;
    std::uint32_t image = 0;
};

struct ClassifierVerdict {
    enum class Status { FPT, W1Hard, ParaPspaceHard, OpenDIhsbPlus, OpenDIhsbMinus };
    Status status = Status::ParaPspaceHard;
    /// d for the two open statuses.
    int d = 0;
    std::vector<WitnessFact> witness;
};

std::string to_string(const ClassifierVerdict& v);
std::string to_string(ClassifierVerdict::Status s);

/// Decision ladder over polymorphisms. Throws ParamError on an empty language or when
/// max_d is below the largest arity, InternalError if no threshold function fits an IHSB language.
ClassifierVerdict classify(const std::vector<Relation>& gamma, int max_d);

/// Re-checks every fact in the verdict against the language.
bool verify_witness(const ClassifierVerdict& verdict, const std::vector<Relation>& gamma);

}  // namespace ccqbf
