#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace ccqbf {

/// Tractable base classes a clause-covering backdoor can lead into.
struct BaseClass {
    enum class Kind {
        TwoCnf,
        Horn,
        DualHorn,
        BoundedHorn,     // Horn clauses with at most d literals
        Aff,
        IhsbMinus,
        IhsbPlus,
        BoundedIhsbMinus,
        BoundedIhsbPlus,
        PosAndNegUnits,  // positive clauses of any arity plus negative units
        NegAndPosUnits,  // the dual of PosAndNegUnits
    };

    Kind kind = Kind::TwoCnf;
    int d = 0;  // arity bound, only meaningful for the Bounded* kinds

    static BaseClass two_cnf() { return {Kind::TwoCnf}; }
    static BaseClass horn() { return {Kind::Horn}; }
    static BaseClass dual_horn() { return {Kind::DualHorn}; }
    static BaseClass bounded_horn(int d);
    static BaseClass aff() { return {Kind::Aff}; }
    static BaseClass ihsb_minus() { return {Kind::IhsbMinus}; }
    static BaseClass ihsb_plus() { return {Kind::IhsbPlus}; }
    static BaseClass bounded_ihsb_minus(int d);
    static BaseClass bounded_ihsb_plus(int d);
    static BaseClass pos_and_neg_units() { return {Kind::PosAndNegUnits}; }
    static BaseClass neg_and_pos_units() { return {Kind::NegAndPosUnits}; }

    bool has_bound() const {
        return kind == Kind::BoundedHorn || kind == Kind::BoundedIhsbMinus ||
               kind == Kind::BoundedIhsbPlus;
    }

    /// The class obtained by flipping every literal.
    BaseClass dual() const;

    friend bool operator==(const BaseClass&, const BaseClass&) = default;
};

/// Short textual tag: 2cnf, horn, dualhorn, horn3, aff, ihsb-, ihsb+, ihsb-3, ihsb+3, posneg, negpos.
std::string to_string(BaseClass cls);

/// Inverse of to_string. Throws UnknownTag.
BaseClass parse_base_class(std::string_view tag);

}  // namespace ccqbf
