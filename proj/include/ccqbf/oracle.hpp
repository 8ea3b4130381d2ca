#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccqbf/formula.hpp"

namespace ccqbf {

inline constexpr std::size_t kDefaultBruteCap = 24;

/// Truth value by exhaustive game-tree search with clause pruning.
/// Throws CapError when the prefix has more than `cap` variables, DomainError
/// when a matrix variable is not quantified.
bool eval_bruteforce(const QbfFormula& formula, std::size_t cap = kDefaultBruteCap);

/// Like eval_bruteforce, also reporting the number of leaves visited.
std::pair<bool, std::size_t> eval_bruteforce_counted(const QbfFormula& formula, std::size_t cap = kDefaultBruteCap);

/// A winning strategy as an explicit tree. Nodes at depth j are labeled with the
/// j-th prefix variable; the winner's nodes have one child, the opponent's two.
struct StrategyTree {
    enum class Player { Existential, Universal };

    struct Node {
        /// nullopt for a leaf.
        std::optional<Var> var;
        /// Leaf label (true = T).
        bool label = false;
        /// (edge value, child node index)
        std::vector<std::pair<bool, std::size_t>> children;

        bool is_leaf() const { return !var.has_value(); }
    };

    Player player = Player::Existential;
    /// nodes[0] is the root.
    std::vector<Node> nodes;

    std::size_t size() const { return nodes.size(); }
};

struct StrategyOptions {
    std::size_t cap = kDefaultBruteCap;
    /// Refuse (CapError) when the tree would exceed this many nodes.
    std::size_t max_nodes = std::size_t{1} << 22;
};

/// Winning strategy of whichever player wins.
StrategyTree extract_strategy(const QbfFormula& formula, const StrategyOptions& options = {});

/// True iff every path is consistent with the matrix and ends in the winner's label.
/// Throws ShapeError when the tree does not follow the prefix.
bool verify_strategy(const QbfFormula& formula, const StrategyTree& tree);

/// Nested text form, e.g. (x1=1 (x2=0 T)(x2=1 T)). A bare root leaf is "T" or "F".
std::string to_string(const StrategyTree& tree);
/// Inverse of to_string; the player is inferred from the leaf labels. Throws ParseError.
StrategyTree parse_strategy(std::string_view text);

}  // namespace ccqbf
