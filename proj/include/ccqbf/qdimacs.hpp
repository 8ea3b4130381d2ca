#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccqbf/algebra.hpp"
#include "ccqbf/base_class.hpp"
#include "ccqbf/formula.hpp"

namespace ccqbf {

struct ParseOptions {
    /// Partition atoms for this class. Without it, a `c class <tag>` comment before the
    /// header and a `c backdoor-begin` comment are honoured; otherwise every atom stays
    /// in the tractable part and no class is recorded.
    std::optional<BaseClass> cls;
};

struct ParseReport {
    QbfFormula formula;
    std::vector<std::string> warnings;
};

/// QDIMACS with `x <lits> 0` lines: XOR of the literals is true, each negative literal
/// flipping the parity. Clause lines may continue over several lines up to the closing 0.
/// Throws ParseError.
ParseReport parse_qdimacs_report(std::string_view text, const ParseOptions& options = {});
QbfFormula parse_qdimacs(std::string_view text, const ParseOptions& options = {});

/// Canonical text; parse_qdimacs(write_qdimacs(f)) == f for valid formulas without ({},0) rows.
std::string write_qdimacs(const QbfFormula& formula);

struct RelationFile {
    std::vector<Relation> entries;
};

/// One relation per line: `<name> <arity> : <tuple>,<tuple>,...`; `#` lines and blank
/// lines are skipped, as are `c` lines without a colon. Throws ParseError.
RelationFile parse_relations(std::string_view text);
std::string write_relations(const RelationFile& file);

}  // namespace ccqbf
