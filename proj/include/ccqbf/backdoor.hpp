#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <vector>

#include "ccqbf/base_class.hpp"
#include "ccqbf/formula.hpp"

namespace ccqbf {

/// Syntactic membership of a single atom in a base class.
bool atom_in_class(const Atom& atom, BaseClass cls);
bool atom_in_class(const Clause& clause, BaseClass cls);

struct BackdoorDetection {
    std::set<Var> backdoor_vars;
    std::set<std::size_t> out_indices;

    std::size_t k() const { return backdoor_vars.size(); }
};

/// Collects every out-of-class atom and the variables covering them.
/// Throws ClassError when an out-of-class atom is an affine equation, since the
/// backdoor part of a Matrix holds clauses only.
BackdoorDetection detect_cc_backdoor(std::span<const Atom> atoms, BaseClass cls);

/// All atoms of the matrix in order: tractable first, then backdoor.
std::vector<Atom> all_atoms(const Matrix& matrix);

/// Re-partitions the matrix of `formula` for `cls` and records the class tag.
/// Atom order is kept within each part.
QbfFormula partition(const QbfFormula& formula, BaseClass cls);

/// Whether a class has an exact FPT solver in this library.
bool has_fpt_solver(BaseClass cls);

struct ClassRank {
    BaseClass cls;
    std::size_t k = 0;
    bool fpt = false;
};

/// Backdoor sizes into 2cnf, aff, posneg, negpos, horn, dualhorn, ascending by k.
/// Classes that cannot hold the matrix (an equation out of class) are omitted.
/// Ties keep the order listed above.
std::vector<ClassRank> rank_classes(std::span<const Atom> atoms);

}  // namespace ccqbf
