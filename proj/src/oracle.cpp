#include "ccqbf/oracle.hpp"

#include <bit>
#include <cctype>
#include <cstdint>

#include "ccqbf/error.hpp"

namespace ccqbf {

namespace {

// Formula over dense indices 0..n-1 in prefix order, atoms as bit masks.
class DenseGame {
public:
    DenseGame(const QbfFormula& f, std::size_t cap) {
        const auto& prefix = f.prefix;
        if (prefix.size() > cap) {
            throw CapError("brute force over " + std::to_string(prefix.size()) + " variables exceeds the cap of " +
                           std::to_string(cap));
        }
        if (prefix.size() > 63) throw CapError("brute force supports at most 63 variables");
        index_ = PrefixIndex(prefix);
        for (const auto& e : prefix.entries()) {
            vars_.push_back(e.var);
            universal_.push_back(e.quant == Quant::Forall);
        }
        auto bit = [&](Var v) -> std::uint64_t {
            if (!index_.contains(v)) throw DomainError("x" + std::to_string(v.id) + " is not quantified");
            return std::uint64_t{1} << index_.position(v);
        };
        auto add_clause = [&](const Clause& c) {
            DenseClause d;
            for (Lit l : c.literals()) (l.is_negative() ? d.neg : d.pos) |= bit(l.var());
            clauses_.push_back(d);
        };
        for (const auto& atom : f.matrix.tractable) {
            if (const auto* c = std::get_if<Clause>(&atom)) {
                add_clause(*c);
            } else {
                const auto& e = std::get<AffineEquation>(atom);
                DenseEq d;
                for (Var v : e.vars()) d.mask |= bit(v);
                d.rhs = e.rhs();
                eqs_.push_back(d);
            }
        }
        for (const auto& c : f.matrix.backdoor) add_clause(c);
    }

    std::size_t n() const { return vars_.size(); }
    Var var(std::size_t i) const { return vars_[i]; }
    bool universal(std::size_t i) const { return universal_[i]; }

    enum class Status { False, True, Open };

    // assigned: bits 0..depth-1
    Status status(std::uint64_t val, std::size_t depth) const {
        const std::uint64_t assigned = depth >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << depth) - 1;
        bool open = false;
        for (const auto& c : clauses_) {
            if ((c.pos & val) | (c.neg & ~val & assigned)) continue;
            if (((c.pos | c.neg) & ~assigned) == 0) return Status::False;
            open = true;
        }
        for (const auto& e : eqs_) {
            if (e.mask & ~assigned) {
                open = true;
            } else if ((std::popcount(e.mask & val) & 1) != static_cast<int>(e.rhs)) {
                return Status::False;
            }
        }
        return open ? Status::Open : Status::True;
    }

    bool eval(std::uint64_t val, std::size_t depth, std::size_t& leaves) const {
        const auto s = status(val, depth);
        if (s != Status::Open) {
            ++leaves;
            return s == Status::True;
        }
        // open implies an unassigned variable remains
        const bool forall = universal_[depth];
        for (std::uint64_t b = 0; b < 2; ++b) {
            const bool r = eval(val | (b << depth), depth + 1, leaves);
            if (r != forall) return r;
        }
        return forall;
    }

    bool value_at(std::uint64_t val) const { return status(val, n()) == Status::True; }

private:
    struct DenseClause {
        std::uint64_t pos = 0;
        std::uint64_t neg = 0;
    };
    struct DenseEq {
        std::uint64_t mask = 0;
        bool rhs = false;
    };

    PrefixIndex index_;
    std::vector<Var> vars_;
    std::vector<bool> universal_;
    std::vector<DenseClause> clauses_;
    std::vector<DenseEq> eqs_;
};

class TreeBuilder {
public:
    TreeBuilder(const DenseGame& game, StrategyTree& tree) : game_(game), tree_(tree) {}

    // Builds the subtree below `val` at `depth` for the winning player.
    std::size_t build(std::uint64_t val, std::size_t depth) {
        const std::size_t id = tree_.nodes.size();
        tree_.nodes.emplace_back();
        if (depth == game_.n()) {
            tree_.nodes[id].label = game_.value_at(val);
            return id;
        }
        tree_.nodes[id].var = game_.var(depth);
        const bool winner_moves = game_.universal(depth) == (tree_.player == StrategyTree::Player::Universal);
        std::size_t scratch = 0;
        for (std::uint64_t b = 0; b < 2; ++b) {
            const std::uint64_t next = val | (b << depth);
            if (winner_moves) {
                const bool wins = game_.eval(next, depth + 1, scratch) == (tree_.player == StrategyTree::Player::Existential);
                if (!wins) continue;
            }
            const std::size_t child = build(next, depth + 1);
            tree_.nodes[id].children.push_back({b == 1, child});
            if (winner_moves) break;
        }
        return id;
    }

private:
    const DenseGame& game_;
    StrategyTree& tree_;
};

}  // namespace

std::pair<bool, std::size_t> eval_bruteforce_counted(const QbfFormula& formula, std::size_t cap) {
    const DenseGame game(formula, cap);
    std::size_t leaves = 0;
    const bool v = game.eval(0, 0, leaves);
    return {v, leaves};
}

bool eval_bruteforce(const QbfFormula& formula, std::size_t cap) { return eval_bruteforce_counted(formula, cap).first; }

StrategyTree extract_strategy(const QbfFormula& formula, const StrategyOptions& options) {
    const DenseGame game(formula, options.cap);
    std::size_t scratch = 0;
    StrategyTree tree;
    tree.player = game.eval(0, 0, scratch) ? StrategyTree::Player::Existential : StrategyTree::Player::Universal;

    // nodes = sum over depths of the product of opponent branching so far
    const bool opp_universal = tree.player == StrategyTree::Player::Existential;
    long double width = 1;
    long double total = 1;
    for (std::size_t i = 0; i < game.n(); ++i) {
        if (game.universal(i) == opp_universal) width *= 2;
        total += width;
    }
    if (total > static_cast<long double>(options.max_nodes)) {
        throw CapError("strategy tree would have more than " + std::to_string(options.max_nodes) + " nodes");
    }
    TreeBuilder(game, tree).build(0, 0);
    return tree;
}

bool verify_strategy(const QbfFormula& formula, const StrategyTree& tree) {
    const auto& prefix = formula.prefix;
    const bool existential = tree.player == StrategyTree::Player::Existential;
    if (tree.nodes.empty()) throw ShapeError("empty strategy tree");

    bool ok = true;
    PartialAssignment path;
    auto walk = [&](auto&& self, std::size_t id, std::size_t depth) -> void {
        if (id >= tree.nodes.size()) throw ShapeError("child index out of range");
        const auto& node = tree.nodes[id];
        if (depth == prefix.size()) {
            if (!node.is_leaf()) throw ShapeError("tree deeper than the prefix");
            if (node.label != existential || eval_matrix(formula.matrix, path) != node.label) ok = false;
            return;
        }
        if (node.is_leaf() || *node.var != prefix[depth].var) {
            throw ShapeError("node at depth " + std::to_string(depth) + " does not match x" +
                             std::to_string(prefix[depth].var.id));
        }
        const bool winner_moves = (prefix[depth].quant == Quant::Exists) == existential;
        if (winner_moves && node.children.size() != 1) {
            throw ShapeError("winner node for x" + std::to_string(prefix[depth].var.id) + " needs one child");
        }
        if (!winner_moves && (node.children.size() != 2 || node.children[0].first == node.children[1].first)) {
            throw ShapeError("opponent node for x" + std::to_string(prefix[depth].var.id) + " needs both children");
        }
        for (const auto& [value, child] : node.children) {
            path.set(prefix[depth].var, value);
            self(self, child, depth + 1);
        }
    };
    walk(walk, 0, 0);
    return ok;
}

std::string to_string(const StrategyTree& tree) {
    std::string out;
    auto emit = [&](auto&& self, std::size_t id) -> void {
        const auto& node = tree.nodes[id];
        if (node.is_leaf()) {
            out += node.label ? 'T' : 'F';
            return;
        }
        for (const auto& [value, child] : node.children) {
            out += "(x" + std::to_string(node.var->id) + '=' + (value ? '1' : '0') + ' ';
            self(self, child);
            out += ')';
        }
    };
    if (!tree.nodes.empty()) emit(emit, 0);
    return out;
}

namespace {

class StrategyParser {
public:
    explicit StrategyParser(std::string_view text) : text_(text) {}

    StrategyTree parse() {
        StrategyTree tree;
        skip_ws();
        subtree(tree);
        skip_ws();
        if (pos_ != text_.size()) fail("trailing characters");
        bool any_true = false;
        bool any_false = false;
        for (const auto& n : tree.nodes) {
            if (!n.is_leaf()) continue;
            (n.label ? any_true : any_false) = true;
        }
        tree.player = any_false && !any_true ? StrategyTree::Player::Universal : StrategyTree::Player::Existential;
        return tree;
    }

private:
    std::size_t subtree(StrategyTree& tree) {
        const std::size_t id = tree.nodes.size();
        tree.nodes.emplace_back();
        skip_ws();
        if (peek() == 'T' || peek() == 'F') {
            tree.nodes[id].label = text_[pos_++] == 'T';
            return id;
        }
        if (peek() != '(') fail("expected '(', 'T' or 'F'");
        while (peek() == '(') {
            ++pos_;
            expect('x');
            const std::uint32_t v = number();
            expect('=');
            const char bit = peek();
            if (bit != '0' && bit != '1') fail("edge value must be 0 or 1");
            ++pos_;
            if (tree.nodes[id].var && tree.nodes[id].var->id != v) fail("siblings label different variables");
            tree.nodes[id].var = Var{v};
            const std::size_t child = subtree(tree);
            tree.nodes[id].children.push_back({bit == '1', child});
            skip_ws();
            expect(')');
            skip_ws();
        }
        return id;
    }

    std::uint32_t number() {
        const std::size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + static_cast<std::uint64_t>(text_[pos_++] - '0');
            if (v > UINT32_MAX) fail("variable id too large");
        }
        if (pos_ == start || v == 0) fail("expected a positive variable id");
        return static_cast<std::uint32_t>(v);
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(1, pos_ + 1, what); }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

StrategyTree parse_strategy(std::string_view text) { return StrategyParser(text).parse(); }

}  // namespace ccqbf
