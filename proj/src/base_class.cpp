#include "ccqbf/base_class.hpp"

#include <charconv>
#include <optional>

#include "ccqbf/error.hpp"

namespace ccqbf {

namespace {

BaseClass bounded(BaseClass::Kind kind, int d) {
    if (d < 2) {
        throw ParamError("class arity bound must be at least 2, got " + std::to_string(d));
    }
    return BaseClass{kind, d};
}

}  // namespace

BaseClass BaseClass::bounded_horn(int d) { return bounded(Kind::BoundedHorn, d); }
BaseClass BaseClass::bounded_ihsb_minus(int d) { return bounded(Kind::BoundedIhsbMinus, d); }
BaseClass BaseClass::bounded_ihsb_plus(int d) { return bounded(Kind::BoundedIhsbPlus, d); }

BaseClass BaseClass::dual() const {
    switch (kind) {
        case Kind::TwoCnf: return *this;
        case Kind::Aff: return *this;
        case Kind::Horn: return dual_horn();
        case Kind::DualHorn: return horn();
        case Kind::BoundedHorn: return *this;  // no dedicated bounded DualHorn tag
        case Kind::IhsbMinus: return ihsb_plus();
        case Kind::IhsbPlus: return ihsb_minus();
        case Kind::BoundedIhsbMinus: return {Kind::BoundedIhsbPlus, d};
        case Kind::BoundedIhsbPlus: return {Kind::BoundedIhsbMinus, d};
        case Kind::PosAndNegUnits: return neg_and_pos_units();
        case Kind::NegAndPosUnits: return pos_and_neg_units();
    }
    return *this;
}

std::string to_string(BaseClass cls) {
    using K = BaseClass::Kind;
    switch (cls.kind) {
        case K::TwoCnf: return "2cnf";
        case K::Horn: return "horn";
        case K::DualHorn: return "dualhorn";
        case K::BoundedHorn: return "horn" + std::to_string(cls.d);
        case K::Aff: return "aff";
        case K::IhsbMinus: return "ihsb-";
        case K::IhsbPlus: return "ihsb+";
        case K::BoundedIhsbMinus: return "ihsb-" + std::to_string(cls.d);
        case K::BoundedIhsbPlus: return "ihsb+" + std::to_string(cls.d);
        case K::PosAndNegUnits: return "posneg";
        case K::NegAndPosUnits: return "negpos";
    }
    return "?";
}

BaseClass parse_base_class(std::string_view tag) {
    if (tag == "2cnf") return BaseClass::two_cnf();
    if (tag == "horn") return BaseClass::horn();
    if (tag == "dualhorn") return BaseClass::dual_horn();
    if (tag == "aff") return BaseClass::aff();
    if (tag == "ihsb-") return BaseClass::ihsb_minus();
    if (tag == "ihsb+") return BaseClass::ihsb_plus();
    if (tag == "posneg") return BaseClass::pos_and_neg_units();
    if (tag == "negpos") return BaseClass::neg_and_pos_units();

    auto with_bound = [&](std::string_view stem) -> std::optional<int> {
        if (tag.substr(0, stem.size()) != stem || tag.size() == stem.size()) return std::nullopt;
        int d = 0;
        auto rest = tag.substr(stem.size());
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), d);
        if (ec != std::errc{} || ptr != rest.data() + rest.size()) return std::nullopt;
        return d;
    };
    if (auto d = with_bound("ihsb-")) return BaseClass::bounded_ihsb_minus(*d);
    if (auto d = with_bound("ihsb+")) return BaseClass::bounded_ihsb_plus(*d);
    if (auto d = with_bound("horn")) return BaseClass::bounded_horn(*d);
    throw UnknownTag("unknown class tag '" + std::string(tag) + "'");
}

}  // namespace ccqbf
