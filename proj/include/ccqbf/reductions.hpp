#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccqbf/base_class.hpp"
#include "ccqbf/formula.hpp"

namespace ccqbf {

/// Graph whose vertices 1..N are split into parts V1..Vk.
struct PartitionedGraph {
    std::vector<std::vector<std::uint32_t>> parts;
    /// Unordered edges stored as (smaller, larger).
    std::set<std::pair<std::uint32_t, std::uint32_t>> edges;

    std::size_t k() const { return parts.size(); }
    std::size_t vertex_count() const;
    bool adjacent(std::uint32_t u, std::uint32_t v) const;
    std::vector<std::uint32_t> neighbors(std::uint32_t v) const;

    void add_edge(std::uint32_t u, std::uint32_t v);
    /// Parts nonempty and disjoint, vertices exactly 1..N, edges between existing
    /// vertices, no self-loops. Throws GraphError.
    void validate() const;
};

/// Text form: a `parts s1 s2 ...` line numbering vertices consecutively by part,
/// then one `u v` line per edge; lines starting with `c` are comments. Throws ParseError.
PartitionedGraph parse_graph(std::string_view text);
std::string write_graph(const PartitionedGraph& g);

/// Parts of the given sizes with vertices numbered consecutively.
PartitionedGraph make_partitioned_graph(const std::vector<std::size_t>& part_sizes);

/// One vertex per part, pairwise non-adjacent. Throws CapError when the number
/// of transversals exceeds `cap`.
bool mis_bruteforce(const PartitionedGraph& g, std::uint64_t cap = std::uint64_t{1} << 24);

/// ∀y ∃x1..xk with Horn clauses per vertex and the backdoor clause (x1 ∨ ... ∨ xk).
/// Vertex v becomes variable v, x_i is N+i. False iff g has a multipartite independent set.
QbfFormula mis_to_horn(const PartitionedGraph& g);

/// ∀y ∃x ∃z over negative clauses and implications z_i → y_v, backdoor (x1..xk ∨ z1..zk).
/// z_i is N+k+i. False iff g has a multipartite independent set.
QbfFormula mis_to_ihsb_minus(const PartitionedGraph& g);

/// Splits a Horn clause with r > 3 literals once: the positive literal (if any) and the
/// first negative one stay with ¬fresh, the rest move with fresh.
std::pair<Clause, Clause> split_horn_clause(const Clause& clause, Var fresh);

/// Splits every tractable Horn clause until all have at most 3 literals, adding each
/// fresh variable as an innermost existential. Throws ClassError on a non-Horn tractable clause.
QbfFormula horn_to_3horn(const QbfFormula& formula);

/// Flips every literal, adjusts equation parities by |A| mod 2 and dualizes the class tag.
QbfFormula dualize(const QbfFormula& formula);

struct RandomParams {
    std::size_t n = 8;
    std::size_t k = 3;
    BaseClass cls = BaseClass::two_cnf();
    /// Tractable atoms per variable.
    double density = 1.0;
    /// Backdoor clauses; 0 picks max(1, k/2 + 1) when k > 0.
    std::size_t backdoor_clauses = 0;
    /// Probability that a prefix variable is universal.
    double forall_prob = 0.4;
};

/// Deterministic in `seed`. The backdoor clauses range over a random k-subset;
/// the result passes validate. Throws ParamError on k > n or n == 0.
QbfFormula gen_random(const RandomParams& params, std::uint64_t seed);

/// Random graph with `vertices` vertices spread over k nonempty parts.
PartitionedGraph gen_graph(std::size_t vertices, std::size_t k, double edge_prob, std::uint64_t seed);

}  // namespace ccqbf
