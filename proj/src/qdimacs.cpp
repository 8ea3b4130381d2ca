#include "ccqbf/qdimacs.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "ccqbf/backdoor.hpp"
#include "ccqbf/error.hpp"

namespace ccqbf {

namespace {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Token> split(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; };
    while (i < line.size()) {
        while (i < line.size() && space(line[i])) ++i;
        const std::size_t start = i;
        while (i < line.size() && !space(line[i])) ++i;
        if (i > start) out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

long long integer(const Token& t, std::size_t line) {
    long long v = 0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError(line, t.column, "expected an integer, got '" + std::string(t.text) + "'");
    }
    return v;
}

class QdimacsParser {
public:
    QdimacsParser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

    ParseReport parse() {
        std::size_t pos = 0;
        while (pos < text_.size()) {
            std::size_t end = text_.find('\n', pos);
            if (end == std::string_view::npos) end = text_.size();
            line(text_.substr(pos, end - pos));
            pos = end + 1;
        }
        if (!pending_.empty()) throw ParseError(line_no_, 0, "clause not terminated by 0");
        if (!header_) throw ParseError(line_no_, 0, "missing 'p cnf' header");
        if (atoms_read_ != declared_atoms_) {
            report_.warnings.push_back("header declares " + std::to_string(declared_atoms_) + " clauses, found " +
                                       std::to_string(atoms_read_));
        }
        finish();
        return std::move(report_);
    }

private:
    void line(std::string_view raw) {
        ++line_no_;
        const auto toks = split(raw);
        if (toks.empty()) return;
        const auto head = toks[0].text;
        if (head == "c") {
            comment(toks);
            return;
        }
        if (head == "p") {
            header(toks);
            return;
        }
        if (!header_) throw ParseError(line_no_, toks[0].column, "clause or quantifier line before the header");
        if (head == "a" || head == "e") {
            if (!pending_.empty()) throw ParseError(line_no_, toks[0].column, "quantifier line inside a clause");
            if (atoms_read_ > 0) throw ParseError(line_no_, toks[0].column, "quantifier line after the first clause");
            quantifier(toks, head == "a" ? Quant::Forall : Quant::Exists);
            return;
        }
        if (head == "x") {
            if (!pending_.empty()) throw ParseError(line_no_, toks[0].column, "xor line inside a clause");
            xor_line(toks);
            return;
        }
        for (const auto& t : toks) {
            const long long v = integer(t, line_no_);
            if (v == 0) {
                clause(t.column);
                continue;
            }
            pending_.push_back(literal(v, t));
        }
    }

    void comment(const std::vector<Token>& toks) {
        if (toks.size() < 2 || toks[0].text != "c") return;
        if (toks[1].text == "backdoor-begin" && header_) {
            if (!pending_.empty()) throw ParseError(line_no_, toks[0].column, "backdoor marker inside a clause");
            in_backdoor_ = true;
            marker_seen_ = true;
        } else if (toks[1].text == "class" && toks.size() == 3 && !header_) {
            try {
                declared_class_ = parse_base_class(toks[2].text);
            } catch (const UnknownTag&) {
                report_.warnings.push_back("line " + std::to_string(line_no_) + ": unknown class tag '" +
                                           std::string(toks[2].text) + "' ignored");
            }
        }
    }

    void header(const std::vector<Token>& toks) {
        if (header_) throw ParseError(line_no_, toks[0].column, "second header line");
        if (toks.size() != 4 || toks[1].text != "cnf") throw ParseError(line_no_, toks[0].column, "expected 'p cnf <vars> <clauses>'");
        const long long nv = integer(toks[2], line_no_);
        const long long nc = integer(toks[3], line_no_);
        if (nv < 0 || nv > 0x7fffffff) throw ParseError(line_no_, toks[2].column, "variable count out of range");
        if (nc < 0) throw ParseError(line_no_, toks[3].column, "negative clause count");
        nvars_ = static_cast<std::uint32_t>(nv);
        declared_atoms_ = static_cast<std::size_t>(nc);
        header_ = true;
    }

    Lit literal(long long v, const Token& t) const {
        const long long id = v < 0 ? -v : v;
        if (id > nvars_) {
            throw ParseError(line_no_, t.column, "variable " + std::to_string(id) + " exceeds the declared " +
                                                     std::to_string(nvars_));
        }
        return Lit(Var{static_cast<std::uint32_t>(id)}, v < 0);
    }

    // integers after the line tag, which must end in exactly one trailing 0
    std::vector<std::pair<long long, Token>> body(const std::vector<Token>& toks) const {
        std::vector<std::pair<long long, Token>> out;
        for (std::size_t i = 1; i < toks.size(); ++i) {
            const long long v = integer(toks[i], line_no_);
            if (v == 0) {
                if (i + 1 != toks.size()) throw ParseError(line_no_, toks[i + 1].column, "tokens after the closing 0");
                return out;
            }
            out.push_back({v, toks[i]});
        }
        throw ParseError(line_no_, 0, "line not terminated by 0");
    }

    void quantifier(const std::vector<Token>& toks, Quant q) {
        for (const auto& [v, t] : body(toks)) {
            if (v < 0) throw ParseError(line_no_, t.column, "negative variable in a quantifier line");
            const Lit l = literal(v, t);
            if (!quantified_.insert(l.var()).second) {
                throw ParseError(line_no_, t.column, "variable " + std::to_string(v) + " quantified twice");
            }
            report_.formula.prefix.push_back(l.var(), q);
        }
    }

    void xor_line(const std::vector<Token>& toks) {
        if (in_backdoor_) throw ParseError(line_no_, toks[0].column, "xor line in the backdoor section");
        std::vector<Var> vars;
        bool rhs = true;
        for (const auto& [v, t] : body(toks)) {
            const Lit l = literal(v, t);
            vars.push_back(l.var());
            if (l.is_negative()) rhs = !rhs;
        }
        ++atoms_read_;
        AffineEquation e(std::move(vars), rhs);
        if (e.is_trivially_true()) {
            report_.warnings.push_back("line " + std::to_string(line_no_) + ": trivially true xor dropped");
            return;
        }
        tractable_.emplace_back(std::move(e));
    }

    void clause(std::size_t column) {
        Clause c(std::move(pending_));
        pending_.clear();
        if (c.is_tautology()) throw ParseError(line_no_, column, "tautological clause " + to_string(c));
        ++atoms_read_;
        if (in_backdoor_) {
            backdoor_.push_back(std::move(c));
        } else {
            tractable_.emplace_back(std::move(c));
        }
    }

    void finish() {
        auto& f = report_.formula;
        std::set<Var> mentioned;
        for (const auto& a : tractable_) {
            for (Var v : atom_vars(a)) mentioned.insert(v);
        }
        for (const auto& c : backdoor_) {
            for (Lit l : c.literals()) mentioned.insert(l.var());
        }
        for (Var v : mentioned) {
            if (quantified_.count(v)) continue;
            f.prefix.push_back(v, Quant::Exists);
            report_.warnings.push_back("x" + std::to_string(v.id) + " unquantified; added as innermost existential");
        }

        f.matrix.tractable = std::move(tractable_);
        f.matrix.backdoor = std::move(backdoor_);
        if (options_.cls) {
            f = partition(f, *options_.cls);
        } else if (declared_class_) {
            if (marker_seen_) {
                f.base_class = declared_class_;
            } else {
                f = partition(f, *declared_class_);
            }
        }
    }

    std::string_view text_;
    const ParseOptions& options_;
    ParseReport report_;
    std::size_t line_no_ = 0;
    bool header_ = false;
    std::uint32_t nvars_ = 0;
    std::size_t declared_atoms_ = 0;
    std::size_t atoms_read_ = 0;
    std::set<Var> quantified_;
    std::vector<Lit> pending_;
    std::vector<Atom> tractable_;
    std::vector<Clause> backdoor_;
    bool in_backdoor_ = false;
    bool marker_seen_ = false;
    std::optional<BaseClass> declared_class_;
};

void write_clause(std::ostream& out, const Clause& c) {
    for (Lit l : c.literals()) out << l.dimacs() << ' ';
    out << "0\n";
}

}  // namespace

ParseReport parse_qdimacs_report(std::string_view text, const ParseOptions& options) {
    return QdimacsParser(text, options).parse();
}

QbfFormula parse_qdimacs(std::string_view text, const ParseOptions& options) {
    return parse_qdimacs_report(text, options).formula;
}

std::string write_qdimacs(const QbfFormula& formula) {
    std::ostringstream out;
    if (formula.base_class) out << "c class " << to_string(*formula.base_class) << '\n';
    std::size_t atoms = formula.matrix.backdoor.size();
    for (const auto& a : formula.matrix.tractable) {
        const auto* e = std::get_if<AffineEquation>(&a);
        if (!e || !e->is_trivially_true()) ++atoms;
    }
    out << "p cnf " << formula.max_var_id() << ' ' << atoms << '\n';

    const auto entries = formula.prefix.entries();
    for (std::size_t i = 0; i < entries.size();) {
        const Quant q = entries[i].quant;
        out << (q == Quant::Forall ? 'a' : 'e');
        for (; i < entries.size() && entries[i].quant == q; ++i) out << ' ' << entries[i].var.id;
        out << " 0\n";
    }
    for (const auto& a : formula.matrix.tractable) {
        if (const auto* c = std::get_if<Clause>(&a)) {
            write_clause(out, *c);
            continue;
        }
        const auto& e = std::get<AffineEquation>(a);
        if (e.is_trivially_true()) continue;
        out << 'x';
        const auto vars = e.vars();
        for (std::size_t i = 0; i < vars.size(); ++i) {
            const bool negate = !e.rhs() && i == 0;
            out << ' ' << (negate ? "-" : "") << vars[i].id;
        }
        out << " 0\n";
    }
    if (!formula.matrix.backdoor.empty()) {
        out << "c backdoor-begin\n";
        for (const auto& c : formula.matrix.backdoor) write_clause(out, c);
    }
    return out.str();
}

RelationFile parse_relations(std::string_view text) {
    RelationFile file;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        const std::size_t colon = line.find(':');
        const auto left = split(line.substr(0, colon == std::string_view::npos ? line.size() : colon));
        if (left.empty() && colon == std::string_view::npos) continue;
        if (!left.empty() && left[0].text[0] == '#') continue;
        if (colon == std::string_view::npos) {
            if (left[0].text == "c") continue;
            throw ParseError(line_no, 0, "expected '<name> <arity> : <tuples>'");
        }
        if (left.size() != 2) throw ParseError(line_no, 1, "expected a name and an arity before ':'");
        const long long arity = integer(left[1], line_no);
        if (arity < 1 || arity > 31) throw ParseError(line_no, left[1].column, "arity must be between 1 and 31");

        Relation r;
        r.name = std::string(left[0].text);
        r.arity = static_cast<std::size_t>(arity);
        std::size_t start = colon + 1;
        const std::string_view rest = line.substr(start);
        std::size_t i = 0;
        while (i <= rest.size()) {
            std::size_t comma = rest.find(',', i);
            if (comma == std::string_view::npos) comma = rest.size();
            const auto parts = split(rest.substr(i, comma - i));
            const std::size_t column = start + i + 1;
            if (parts.size() > 1) throw ParseError(line_no, column + parts[1].column - 1, "missing comma between tuples");
            if (parts.empty()) {
                // an empty relation is written with nothing after the colon
                if (comma != rest.size() || i != 0) throw ParseError(line_no, column, "empty tuple");
            } else {
                const auto bits = parts[0];
                const std::size_t col = column + bits.column - 1;
                if (bits.text.size() != r.arity) {
                    throw ParseError(line_no, col, "tuple '" + std::string(bits.text) + "' does not have arity " +
                                                       std::to_string(r.arity));
                }
                const auto bad = bits.text.find_first_not_of("01");
                if (bad != std::string_view::npos) throw ParseError(line_no, col + bad, "non-bit character in tuple");
                if (!r.tuples.insert(Relation::tuple_from_bits(bits.text)).second) {
                    throw ParseError(line_no, col, "duplicate tuple '" + std::string(bits.text) + "'");
                }
            }
            i = comma + 1;
        }
        file.entries.push_back(std::move(r));
    }
    return file;
}

std::string write_relations(const RelationFile& file) {
    std::ostringstream out;
    for (const auto& r : file.entries) {
        out << r.name << ' ' << r.arity << " :";
        bool first = true;
        for (auto t : r.tuples) {
            out << (first ? " " : ",") << Relation::tuple_to_bits(t, r.arity);
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace ccqbf
