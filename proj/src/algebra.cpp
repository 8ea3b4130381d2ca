#include "ccqbf/algebra.hpp"

#include <algorithm>
#include <bit>
#include <charconv>

#include "ccqbf/error.hpp"

namespace ccqbf {

std::uint32_t Relation::tuple_from_bits(std::string_view bits) {
    if (bits.size() > 31) throw DomainError("tuple longer than 31 bits");
    std::uint32_t t = 0;
    for (std::size_t j = 0; j < bits.size(); ++j) {
        if (bits[j] == '1') {
            t |= std::uint32_t{1} << j;
        } else if (bits[j] != '0') {
            throw DomainError("tuple '" + std::string(bits) + "' has a non-bit character");
        }
    }
    return t;
}

std::string Relation::tuple_to_bits(std::uint32_t tuple, std::size_t arity) {
    std::string out(arity, '0');
    for (std::size_t j = 0; j < arity; ++j) {
        if ((tuple >> j) & 1u) out[j] = '1';
    }
    return out;
}

Relation Relation::from_bits(std::string name, std::size_t arity, const std::vector<std::string>& tuples) {
    Relation r{std::move(name), arity, {}};
    for (const auto& t : tuples) {
        if (t.size() != arity) throw DomainError("tuple '" + t + "' does not have arity " + std::to_string(arity));
        r.tuples.insert(tuple_from_bits(t));
    }
    return r;
}

Relation dual_relation(const Relation& r) {
    Relation out{r.name.empty() ? r.name : r.name + "^dual", r.arity, {}};
    const std::uint32_t mask = r.arity >= 32 ? ~0u : (std::uint32_t{1} << r.arity) - 1;
    for (auto t : r.tuples) out.tuples.insert(~t & mask);
    return out;
}

bool BoolFunction::apply(const std::vector<bool>& args) const {
    if (args.size() != arity) throw DomainError("function of arity " + std::to_string(arity) + " given " +
                                                std::to_string(args.size()) + " arguments");
    std::uint32_t row = 0;
    for (std::size_t i = 0; i < args.size(); ++i) row |= static_cast<std::uint32_t>(args[i]) << i;
    return table[row];
}

namespace {

template <class F>
BoolFunction tabulate(std::string name, std::size_t arity, F f) {
    BoolFunction out{arity, std::vector<bool>(std::size_t{1} << arity), std::move(name)};
    for (std::uint32_t row = 0; row < out.table.size(); ++row) out.table[row] = f(row);
    return out;
}

bool bit(std::uint32_t row, int i) { return (row >> i) & 1u; }

}  // namespace

BoolFunction named_function(std::string_view tag) {
    const std::string name(tag);
    if (tag == "min") return tabulate(name, 2, [](std::uint32_t r) { return bit(r, 0) && bit(r, 1); });
    if (tag == "max") return tabulate(name, 2, [](std::uint32_t r) { return bit(r, 0) || bit(r, 1); });
    if (tag == "maj") return tabulate(name, 3, [](std::uint32_t r) { return std::popcount(r) >= 2; });
    if (tag == "mnrty") return tabulate(name, 3, [](std::uint32_t r) { return (std::popcount(r) & 1) == 1; });
    if (tag == "x&(y|z)") return tabulate(name, 3, [](std::uint32_t r) { return bit(r, 0) && (bit(r, 1) || bit(r, 2)); });
    if (tag == "x|(y&z)") return tabulate(name, 3, [](std::uint32_t r) { return bit(r, 0) || (bit(r, 1) && bit(r, 2)); });
    if (tag == "x&(y|~z)") return tabulate(name, 3, [](std::uint32_t r) { return bit(r, 0) && (bit(r, 1) || !bit(r, 2)); });
    if (tag == "x|(y&~z)") return tabulate(name, 3, [](std::uint32_t r) { return bit(r, 0) || (bit(r, 1) && !bit(r, 2)); });
    if (tag.size() >= 2 && tag[0] == 't') {
        int d = 0;
        const auto [ptr, ec] = std::from_chars(tag.data() + 1, tag.data() + tag.size(), d);
        if (ec == std::errc{} && ptr == tag.data() + tag.size()) {
            if (d < 3 || d > 20) throw UnknownTag("threshold arity must be between 3 and 20, got " + std::to_string(d));
            return tabulate(name, static_cast<std::size_t>(d), [](std::uint32_t r) { return std::popcount(r) >= 2; });
        }
    }
    throw UnknownTag("unknown function '" + name + "'");
}

BoolFunction dual_function(const BoolFunction& f) {
    const std::uint32_t mask = static_cast<std::uint32_t>(f.table.size() - 1);
    std::string name = f.name;
    if (name.rfind("dual(", 0) == 0 && name.back() == ')') {
        name = name.substr(5, name.size() - 6);
    } else if (!name.empty()) {
        name = "dual(" + name + ")";
    }
    BoolFunction out{f.arity, std::vector<bool>(f.table.size()), std::move(name)};
    for (std::uint32_t row = 0; row < f.table.size(); ++row) out.table[row] = !f.table[~row & mask];
    return out;
}

std::uint32_t apply_columnwise(const BoolFunction& f, const std::vector<std::uint32_t>& rows, std::size_t arity) {
    std::uint32_t image = 0;
    for (std::size_t j = 0; j < arity; ++j) {
        std::uint32_t idx = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) idx |= ((rows[i] >> j) & 1u) << i;
        if (f.table[idx]) image |= std::uint32_t{1} << j;
    }
    return image;
}

PolymorphismCheck is_polymorphism(const BoolFunction& f, const Relation& r, std::uint64_t max_checks) {
    PolymorphismCheck out;
    if (r.tuples.empty()) return out;
    const std::vector<std::uint32_t> tuples(r.tuples.begin(), r.tuples.end());
    long double total = 1;
    for (std::size_t i = 0; i < f.arity; ++i) total *= static_cast<long double>(tuples.size());
    if (total > static_cast<long double>(max_checks)) {
        throw ParamError("polymorphism check needs " + std::to_string(static_cast<double>(total)) +
                         " row choices, above the limit");
    }
    std::vector<std::size_t> pick(f.arity, 0);
    std::vector<std::uint32_t> rows(f.arity);
    for (;;) {
        for (std::size_t i = 0; i < f.arity; ++i) rows[i] = tuples[pick[i]];
        const std::uint32_t image = apply_columnwise(f, rows, r.arity);
        if (!r.contains(image)) {
            out.holds = false;
            out.witness = rows;
            out.image = image;
            return out;
        }
        std::size_t i = 0;
        while (i < f.arity && ++pick[i] == tuples.size()) pick[i++] = 0;
        if (i == f.arity) break;
    }
    return out;
}

LanguageCheck is_polymorphism(const BoolFunction& f, const std::vector<Relation>& gamma) {
    LanguageCheck out;
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        auto c = is_polymorphism(f, gamma[i]);
        if (!c.holds) {
            out.holds = false;
            out.relation = i;
            out.detail = std::move(c);
            return out;
        }
    }
    return out;
}

std::string to_string(ClassifierVerdict::Status s) {
    using S = ClassifierVerdict::Status;
    switch (s) {
        case S::FPT: return "FPT";
        case S::W1Hard: return "W1Hard";
        case S::ParaPspaceHard: return "ParaPspaceHard";
        case S::OpenDIhsbPlus: return "Open_dIhsbPlus";
        case S::OpenDIhsbMinus: return "Open_dIhsbMinus";
    }
    return "?";
}

std::string to_string(const ClassifierVerdict& v) {
    std::string out = to_string(v.status);
    if (v.status == ClassifierVerdict::Status::OpenDIhsbPlus || v.status == ClassifierVerdict::Status::OpenDIhsbMinus) {
        out += "(" + std::to_string(v.d) + ")";
    }
    return out;
}

namespace {

class Ladder {
public:
    explicit Ladder(const std::vector<Relation>& gamma) : gamma_(gamma) {}

    bool test(const BoolFunction& f) {
        const auto c = is_polymorphism(f, gamma_);
        WitnessFact fact{f, c.holds, c.relation, c.detail.witness, c.detail.image};
        verdict.witness.push_back(std::move(fact));
        return c.holds;
    }

    // IHSB branch; `dual` selects the minus side
    bool ihsb(bool dual, int max_d) {
        auto fn = [&](std::string_view tag) {
            const auto f = named_function(tag);
            return dual ? dual_function(f) : f;
        };
        if (!test(fn("x|(y&z)"))) return false;
        if (test(fn("x|(y&~z)")) || test(fn("t3"))) {
            verdict.status = ClassifierVerdict::Status::FPT;
            return true;
        }
        for (int d = 3; d <= max_d; ++d) {
            if (test(fn("t" + std::to_string(d + 1)))) {
                verdict.status = dual ? ClassifierVerdict::Status::OpenDIhsbMinus : ClassifierVerdict::Status::OpenDIhsbPlus;
                verdict.d = d;
                return true;
            }
        }
        throw InternalError("no threshold polymorphism up to arity " + std::to_string(max_d + 1) +
                            " for a language closed under " + fn("x|(y&z)").name);
    }

    ClassifierVerdict verdict;

private:
    const std::vector<Relation>& gamma_;
};

}  // namespace

ClassifierVerdict classify(const std::vector<Relation>& gamma, int max_d) {
    if (gamma.empty()) throw ParamError("empty constraint language");
    std::size_t max_arity = 0;
    for (const auto& r : gamma) {
        if (r.arity == 0) throw ParamError("relation " + r.name + " has arity 0");
        max_arity = std::max(max_arity, r.arity);
    }
    if (max_d < static_cast<int>(max_arity)) {
        throw ParamError("max_d " + std::to_string(max_d) + " is below the largest arity " + std::to_string(max_arity));
    }
    max_d = std::max(max_d, 3);

    Ladder ladder(gamma);
    if (ladder.test(named_function("maj")) || ladder.test(named_function("mnrty"))) {
        ladder.verdict.status = ClassifierVerdict::Status::FPT;
        return ladder.verdict;
    }
    if (ladder.ihsb(false, max_d) || ladder.ihsb(true, max_d)) return ladder.verdict;
    if (ladder.test(named_function("min")) || ladder.test(named_function("max"))) {
        ladder.verdict.status = ClassifierVerdict::Status::W1Hard;
        return ladder.verdict;
    }
    ladder.verdict.status = ClassifierVerdict::Status::ParaPspaceHard;
    return ladder.verdict;
}

bool verify_witness(const ClassifierVerdict& verdict, const std::vector<Relation>& gamma) {
    for (const auto& fact : verdict.witness) {
        if (fact.preserves) {
            if (!is_polymorphism(fact.function, gamma).holds) return false;
            continue;
        }
        if (fact.relation >= gamma.size() || fact.rows.size() != fact.function.arity) return false;
        const auto& r = gamma[fact.relation];
        for (auto row : fact.rows) {
            if (!r.contains(row)) return false;
        }
        const auto image = apply_columnwise(fact.function, fact.rows, r.arity);
        if (image != fact.image || r.contains(image)) return false;
    }
    return true;
}

}  // namespace ccqbf
