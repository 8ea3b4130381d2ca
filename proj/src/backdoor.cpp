#include "ccqbf/backdoor.hpp"

#include <algorithm>

#include "ccqbf/error.hpp"

namespace ccqbf {

namespace {

bool is_implication(const Clause& c) { return c.size() == 2 && c.positive_count() == 1; }

bool ihsb_minus_member(const Clause& c, std::optional<int> bound) {
    if (c.size() <= 1 || is_implication(c)) return true;
    if (c.positive_count() != 0) return false;
    return !bound || c.size() <= static_cast<std::size_t>(*bound);
}

bool ihsb_plus_member(const Clause& c, std::optional<int> bound) {
    if (c.size() <= 1 || is_implication(c)) return true;
    if (c.negative_count() != 0) return false;
    return !bound || c.size() <= static_cast<std::size_t>(*bound);
}

}  // namespace

bool atom_in_class(const Clause& c, BaseClass cls) {
    using K = BaseClass::Kind;
    switch (cls.kind) {
        case K::TwoCnf: return c.size() <= 2;
        case K::Horn: return c.positive_count() <= 1;
        case K::DualHorn: return c.negative_count() <= 1;
        case K::BoundedHorn: return c.positive_count() <= 1 && c.size() <= static_cast<std::size_t>(cls.d);
        case K::Aff: return false;
        case K::IhsbMinus: return ihsb_minus_member(c, std::nullopt);
        case K::IhsbPlus: return ihsb_plus_member(c, std::nullopt);
        case K::BoundedIhsbMinus: return ihsb_minus_member(c, cls.d);
        case K::BoundedIhsbPlus: return ihsb_plus_member(c, cls.d);
        case K::PosAndNegUnits: return c.negative_count() == 0 || (c.size() == 1);
        case K::NegAndPosUnits: return c.positive_count() == 0 || (c.size() == 1);
    }
    return false;
}

bool atom_in_class(const Atom& atom, BaseClass cls) {
    if (const auto* c = std::get_if<Clause>(&atom)) return atom_in_class(*c, cls);
    return cls.kind == BaseClass::Kind::Aff;
}

BackdoorDetection detect_cc_backdoor(std::span<const Atom> atoms, BaseClass cls) {
    BackdoorDetection out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (atom_in_class(atoms[i], cls)) continue;
        if (std::holds_alternative<AffineEquation>(atoms[i])) {
            throw ClassError("atom " + std::to_string(i) + " is an affine equation outside class " +
                             to_string(cls) + "; backdoor atoms must be clauses");
        }
        out.out_indices.insert(i);
        for (Var v : atom_vars(atoms[i])) out.backdoor_vars.insert(v);
    }
    return out;
}

std::vector<Atom> all_atoms(const Matrix& matrix) {
    std::vector<Atom> out = matrix.tractable;
    out.insert(out.end(), matrix.backdoor.begin(), matrix.backdoor.end());
    return out;
}

QbfFormula partition(const QbfFormula& formula, BaseClass cls) {
    const auto atoms = all_atoms(formula.matrix);
    const auto detection = detect_cc_backdoor(atoms, cls);
    QbfFormula out;
    out.prefix = formula.prefix;
    out.base_class = cls;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (detection.out_indices.count(i)) {
            out.matrix.backdoor.push_back(std::get<Clause>(atoms[i]));
        } else {
            out.matrix.tractable.push_back(atoms[i]);
        }
    }
    return out;
}

bool has_fpt_solver(BaseClass cls) {
    using K = BaseClass::Kind;
    return cls.kind == K::TwoCnf || cls.kind == K::Aff || cls.kind == K::PosAndNegUnits ||
           cls.kind == K::NegAndPosUnits;
}

std::vector<ClassRank> rank_classes(std::span<const Atom> atoms) {
    const BaseClass candidates[] = {BaseClass::two_cnf(),           BaseClass::aff(),
                                    BaseClass::pos_and_neg_units(), BaseClass::neg_and_pos_units(),
                                    BaseClass::horn(),              BaseClass::dual_horn()};
    std::vector<ClassRank> out;
    for (BaseClass cls : candidates) {
        try {
            out.push_back({cls, detect_cc_backdoor(atoms, cls).k(), has_fpt_solver(cls)});
        } catch (const ClassError&) {
            // equations outside the class cannot be moved into a clause backdoor
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const ClassRank& a, const ClassRank& b) { return a.k < b.k; });
    return out;
}

}  // namespace ccqbf
