#include "ccqbf/reductions.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <sstream>

#include "ccqbf/backdoor.hpp"
#include "ccqbf/error.hpp"

namespace ccqbf {

std::size_t PartitionedGraph::vertex_count() const {
    std::size_t n = 0;
    for (const auto& p : parts) n += p.size();
    return n;
}

bool PartitionedGraph::adjacent(std::uint32_t u, std::uint32_t v) const {
    return edges.count({std::min(u, v), std::max(u, v)}) != 0;
}

std::vector<std::uint32_t> PartitionedGraph::neighbors(std::uint32_t v) const {
    std::vector<std::uint32_t> out;
    for (const auto& [a, b] : edges) {
        if (a == v) out.push_back(b);
        if (b == v) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void PartitionedGraph::add_edge(std::uint32_t u, std::uint32_t v) { edges.insert({std::min(u, v), std::max(u, v)}); }

void PartitionedGraph::validate() const {
    if (parts.empty()) throw GraphError("graph has no parts");
    const std::size_t n = vertex_count();
    std::vector<bool> seen(n + 1, false);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].empty()) throw GraphError("part " + std::to_string(i + 1) + " is empty");
        for (auto v : parts[i]) {
            if (v == 0 || v > n) throw GraphError("vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
            if (seen[v]) throw GraphError("vertex " + std::to_string(v) + " is in two parts");
            seen[v] = true;
        }
    }
    for (const auto& [a, b] : edges) {
        if (a == b) throw GraphError("self-loop at vertex " + std::to_string(a));
        if (a == 0 || b > n) throw GraphError("edge " + std::to_string(a) + "-" + std::to_string(b) + " uses an unknown vertex");
    }
}

PartitionedGraph make_partitioned_graph(const std::vector<std::size_t>& part_sizes) {
    PartitionedGraph g;
    std::uint32_t next = 1;
    for (auto s : part_sizes) {
        auto& part = g.parts.emplace_back();
        for (std::size_t j = 0; j < s; ++j) part.push_back(next++);
    }
    return g;
}

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

std::uint32_t positive_number(std::string_view tok, std::size_t line_no, std::string_view line) {
    std::uint32_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    const std::size_t col = static_cast<std::size_t>(tok.data() - line.data()) + 1;
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || v == 0) {
        throw ParseError(line_no, col, "expected a positive integer, got '" + std::string(tok) + "'");
    }
    return v;
}

}  // namespace

PartitionedGraph parse_graph(std::string_view text) {
    PartitionedGraph g;
    bool have_parts = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        const auto toks = tokens(line);
        if (toks.empty() || toks[0] == "c") continue;
        if (toks[0] == "parts") {
            if (have_parts) throw ParseError(line_no, 0, "second parts line");
            std::vector<std::size_t> sizes;
            for (std::size_t i = 1; i < toks.size(); ++i) sizes.push_back(positive_number(toks[i], line_no, line));
            if (sizes.empty()) throw ParseError(line_no, 0, "parts line lists no part sizes");
            g = make_partitioned_graph(sizes);
            have_parts = true;
            continue;
        }
        if (!have_parts) throw ParseError(line_no, 1, "edge before the parts line");
        if (toks.size() != 2) throw ParseError(line_no, 0, "edge lines hold exactly two vertices");
        const auto u = positive_number(toks[0], line_no, line);
        const auto v = positive_number(toks[1], line_no, line);
        const auto n = g.vertex_count();
        if (u > n || v > n) throw ParseError(line_no, 0, "vertex beyond " + std::to_string(n));
        if (u == v) throw ParseError(line_no, 0, "self-loop");
        g.add_edge(u, v);
    }
    if (!have_parts) throw ParseError(line_no, 0, "missing parts line");
    return g;
}

std::string write_graph(const PartitionedGraph& g) {
    std::ostringstream out;
    out << "parts";
    for (const auto& p : g.parts) out << ' ' << p.size();
    out << '\n';
    for (const auto& [a, b] : g.edges) out << a << ' ' << b << '\n';
    return out.str();
}

bool mis_bruteforce(const PartitionedGraph& g, std::uint64_t cap) {
    g.validate();
    long double count = 1;
    for (const auto& p : g.parts) count *= static_cast<long double>(p.size());
    if (count > static_cast<long double>(cap)) throw CapError("too many transversals to enumerate");
    std::vector<std::uint32_t> chosen;
    auto pick = [&](auto&& self, std::size_t i) -> bool {
        if (i == g.parts.size()) return true;
        for (auto v : g.parts[i]) {
            if (std::any_of(chosen.begin(), chosen.end(), [&](std::uint32_t u) { return g.adjacent(u, v); })) continue;
            chosen.push_back(v);
            if (self(self, i + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    return pick(pick, 0);
}

QbfFormula mis_to_horn(const PartitionedGraph& g) {
    g.validate();
    const auto n = static_cast<std::uint32_t>(g.vertex_count());
    const auto k = static_cast<std::uint32_t>(g.k());
    QbfFormula f;
    for (std::uint32_t v = 1; v <= n; ++v) f.prefix.forall(v);
    for (std::uint32_t i = 1; i <= k; ++i) f.prefix.exists(n + i);
    for (std::uint32_t i = 0; i < k; ++i) {
        for (auto v : g.parts[i]) {
            std::vector<Lit> lits{Lit::positive(Var{v}), Lit::negative(Var{n + i + 1})};
            for (auto u : g.neighbors(v)) lits.push_back(Lit::negative(Var{u}));
            f.matrix.tractable.emplace_back(Clause(std::move(lits)));
        }
    }
    std::vector<Lit> xs;
    for (std::uint32_t i = 1; i <= k; ++i) xs.push_back(Lit::positive(Var{n + i}));
    f.matrix.backdoor.emplace_back(std::move(xs));
    f.base_class = BaseClass::horn();
    return f;
}

QbfFormula mis_to_ihsb_minus(const PartitionedGraph& g) {
    g.validate();
    const auto n = static_cast<std::uint32_t>(g.vertex_count());
    const auto k = static_cast<std::uint32_t>(g.k());
    QbfFormula f;
    for (std::uint32_t v = 1; v <= n; ++v) f.prefix.forall(v);
    for (std::uint32_t i = 1; i <= 2 * k; ++i) f.prefix.exists(n + i);
    for (std::uint32_t i = 0; i < k; ++i) {
        const Var x{n + i + 1};
        const Var z{n + k + i + 1};
        for (auto v : g.parts[i]) {
            std::vector<Lit> lits{Lit::negative(x)};
            for (auto w : g.parts[i]) {
                if (w != v) lits.push_back(Lit::negative(Var{w}));
            }
            for (auto u : g.neighbors(v)) lits.push_back(Lit::negative(Var{u}));
            f.matrix.tractable.emplace_back(Clause(std::move(lits)));
        }
        for (auto v : g.parts[i]) f.matrix.tractable.emplace_back(Clause{Lit::negative(z), Lit::positive(Var{v})});
    }
    std::vector<Lit> wide;
    for (std::uint32_t i = 1; i <= 2 * k; ++i) wide.push_back(Lit::positive(Var{n + i}));
    f.matrix.backdoor.emplace_back(std::move(wide));
    f.base_class = BaseClass::ihsb_minus();
    return f;
}

std::pair<Clause, Clause> split_horn_clause(const Clause& clause, Var fresh) {
    if (clause.size() <= 3) throw ParamError("only clauses with more than three literals are split");
    if (clause.positive_count() > 1) throw ClassError("clause " + to_string(clause) + " is not Horn");
    std::vector<Lit> lits(clause.literals().begin(), clause.literals().end());
    std::stable_partition(lits.begin(), lits.end(), [](Lit l) { return !l.is_negative(); });
    Clause head{lits[0], lits[1], Lit::negative(fresh)};
    std::vector<Lit> tail{Lit::positive(fresh)};
    tail.insert(tail.end(), lits.begin() + 2, lits.end());
    return {head, Clause(std::move(tail))};
}

QbfFormula horn_to_3horn(const QbfFormula& formula) {
    QbfFormula out = formula;
    out.matrix.tractable.clear();
    std::uint32_t next = formula.max_var_id();
    std::vector<Atom> work(formula.matrix.tractable.rbegin(), formula.matrix.tractable.rend());
    while (!work.empty()) {
        Atom atom = std::move(work.back());
        work.pop_back();
        const auto* c = std::get_if<Clause>(&atom);
        if (!c || c->positive_count() > 1) throw ClassError("tractable part is not Horn");
        if (c->size() <= 3) {
            out.matrix.tractable.push_back(std::move(atom));
            continue;
        }
        const Var fresh{++next};
        out.prefix.push_back(fresh, Quant::Exists);
        auto [head, tail] = split_horn_clause(*c, fresh);
        out.matrix.tractable.emplace_back(std::move(head));
        work.emplace_back(std::move(tail));
    }
    if (out.base_class && out.base_class->kind == BaseClass::Kind::Horn) out.base_class = BaseClass::bounded_horn(3);
    return out;
}

QbfFormula dualize(const QbfFormula& formula) {
    auto flip = [](const Clause& c) {
        std::vector<Lit> lits;
        for (Lit l : c.literals()) lits.push_back(~l);
        return Clause(std::move(lits));
    };
    QbfFormula out;
    out.prefix = formula.prefix;
    for (const auto& atom : formula.matrix.tractable) {
        if (const auto* c = std::get_if<Clause>(&atom)) {
            out.matrix.tractable.emplace_back(flip(*c));
        } else {
            const auto& e = std::get<AffineEquation>(atom);
            out.matrix.tractable.emplace_back(
                AffineEquation({e.vars().begin(), e.vars().end()}, e.rhs() != (e.size() % 2 == 1)));
        }
    }
    for (const auto& c : formula.matrix.backdoor) out.matrix.backdoor.push_back(flip(c));
    if (formula.base_class) out.base_class = formula.base_class->dual();
    return out;
}

namespace {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    std::size_t uniform(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

    // `count` distinct variables drawn from `pool`
    std::vector<Var> pick(const std::vector<Var>& pool, std::size_t count) {
        std::vector<Var> tmp = pool;
        for (std::size_t i = 0; i < count; ++i) std::swap(tmp[i], tmp[uniform(i, tmp.size() - 1)]);
        tmp.resize(count);
        return tmp;
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// negatives: how many literals are negative; the rest positive
Clause signed_clause(const std::vector<Var>& vars, std::size_t negatives) {
    std::vector<Lit> lits;
    for (std::size_t i = 0; i < vars.size(); ++i) lits.emplace_back(vars[i], i < negatives);
    return Clause(std::move(lits));
}

Atom sample_tractable(Sampler& s, const std::vector<Var>& all, BaseClass cls) {
    using K = BaseClass::Kind;
    const std::size_t n = all.size();
    auto width = [&](std::size_t lo, std::size_t hi) { return s.uniform(std::min(lo, n), std::min(hi, n)); };
    switch (cls.kind) {
        case K::TwoCnf: {
            const auto vars = s.pick(all, s.chance(0.1) ? 1 : width(2, 2));
            return signed_clause(vars, s.uniform(0, vars.size()));
        }
        case K::Horn:
        case K::BoundedHorn:
        case K::DualHorn: {
            const std::size_t cap = cls.kind == K::BoundedHorn ? static_cast<std::size_t>(cls.d) : 4;
            const auto vars = s.pick(all, width(1, cap));
            const std::size_t special = s.chance(0.6) ? 1 : 0;  // the one literal of the minority sign
            const std::size_t negatives = cls.kind == K::DualHorn ? special : vars.size() - special;
            return signed_clause(vars, negatives);
        }
        case K::Aff: {
            const auto vars = s.pick(all, width(1, 3));
            return AffineEquation(vars, s.chance(0.5));
        }
        case K::IhsbMinus:
        case K::IhsbPlus:
        case K::BoundedIhsbMinus:
        case K::BoundedIhsbPlus: {
            const bool minus = cls.kind == K::IhsbMinus || cls.kind == K::BoundedIhsbMinus;
            const std::size_t cap = cls.has_bound() ? static_cast<std::size_t>(cls.d) : 4;
            const double r = std::uniform_real_distribution<double>(0, 1)(s.rng());
            if (r < 0.15 || n == 1) {
                const auto vars = s.pick(all, 1);
                return signed_clause(vars, s.uniform(0, 1));
            }
            if (r < 0.6) return signed_clause(s.pick(all, 2), 1);
            const auto vars = s.pick(all, width(2, cap));
            return signed_clause(vars, minus ? vars.size() : 0);
        }
        case K::PosAndNegUnits:
        case K::NegAndPosUnits: {
            const bool pos = cls.kind == K::PosAndNegUnits;
            if (s.chance(0.2)) return signed_clause(s.pick(all, 1), pos ? 1 : 0);
            const auto vars = s.pick(all, width(1, 4));
            return signed_clause(vars, pos ? 0 : vars.size());
        }
    }
    throw InternalError("unhandled base class");
}

}  // namespace

QbfFormula gen_random(const RandomParams& params, std::uint64_t seed) {
    if (params.n == 0) throw ParamError("n must be positive");
    if (params.k > params.n) throw ParamError("k must not exceed n");
    if (params.density < 0) throw ParamError("density must be non-negative");
    if (params.forall_prob < 0 || params.forall_prob > 1) throw ParamError("forall probability outside [0,1]");

    Sampler s(seed);
    std::vector<Var> all;
    for (std::uint32_t i = 1; i <= params.n; ++i) all.push_back(Var{i});

    QbfFormula f;
    for (Var v : s.pick(all, all.size())) f.prefix.push_back(v, s.chance(params.forall_prob) ? Quant::Forall : Quant::Exists);
    f.base_class = params.cls;

    const auto atoms = static_cast<std::size_t>(params.density * static_cast<double>(params.n) + 0.5);
    for (std::size_t i = 0; i < atoms; ++i) f.matrix.tractable.push_back(sample_tractable(s, all, params.cls));

    if (params.k > 0) {
        const auto backdoor = s.pick(all, params.k);
        const std::size_t count = params.backdoor_clauses ? params.backdoor_clauses : std::max<std::size_t>(1, params.k / 2 + 1);
        for (std::size_t i = 0; i < count; ++i) {
            const auto vars = s.pick(backdoor, s.uniform(std::min<std::size_t>(3, params.k), std::min<std::size_t>(5, params.k)));
            std::vector<Lit> lits;
            for (Var v : vars) lits.emplace_back(v, s.chance(0.5));
            Clause c(std::move(lits));
            // clauses that happen to fit the class stay in the tractable part
            if (atom_in_class(c, params.cls)) {
                f.matrix.tractable.emplace_back(std::move(c));
            } else {
                f.matrix.backdoor.push_back(std::move(c));
            }
        }
    }
    return f;
}

PartitionedGraph gen_graph(std::size_t vertices, std::size_t k, double edge_prob, std::uint64_t seed) {
    if (k == 0 || vertices < k) throw ParamError("need at least one vertex per part");
    if (edge_prob < 0 || edge_prob > 1) throw ParamError("edge probability outside [0,1]");
    Sampler s(seed);
    std::vector<std::size_t> sizes(k, 1);
    for (std::size_t i = k; i < vertices; ++i) ++sizes[s.uniform(0, k - 1)];
    PartitionedGraph g = make_partitioned_graph(sizes);
    const auto n = static_cast<std::uint32_t>(vertices);
    for (std::uint32_t u = 1; u <= n; ++u) {
        for (std::uint32_t v = u + 1; v <= n; ++v) {
            if (s.chance(edge_prob)) g.add_edge(u, v);
        }
    }
    return g;
}

}  // namespace ccqbf
