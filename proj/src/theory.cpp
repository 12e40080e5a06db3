#include "khx/theory.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace khx {

std::string theory_tag_name(TheoryTag t) {
    switch (t) {
        case TheoryTag::U2: return "u2";
        case TheoryTag::U1: return "u1";
        case TheoryTag::U1xU1: return "u1xu1";
        case TheoryTag::SU2: return "su2";
        case TheoryTag::SU2Sqrt: return "su2sqrt";
        case TheoryTag::Plain: return "plain";
    }
    return "?";
}

TheoryTag theory_tag_parse(const std::string& s) {
    if (s == "u2") return TheoryTag::U2;
    if (s == "u1") return TheoryTag::U1;
    if (s == "u1xu1") return TheoryTag::U1xU1;
    if (s == "su2") return TheoryTag::SU2;
    if (s == "su2sqrt") return TheoryTag::SU2Sqrt;
    if (s == "plain") return TheoryTag::Plain;
    throw ParseError("unknown theory: " + s);
}

namespace {

struct Interned {
    std::unique_ptr<GroundRing> ring;
    std::unique_ptr<Theory> theory;
};

std::map<std::tuple<int, int, uint32_t>, Interned>& registry() {
    static std::map<std::tuple<int, int, uint32_t>, Interned> reg;
    return reg;
}
std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

std::vector<VarSpec> vars_for(TheoryTag tag) {
    switch (tag) {
        case TheoryTag::U2: return {{"h", 2}, {"t", 4}};
        case TheoryTag::U1: return {{"h", 2}};
        case TheoryTag::U1xU1: return {{"a1", 2}, {"a2", 2}};
        case TheoryTag::SU2: return {{"t", 4}};
        case TheoryTag::SU2Sqrt: return {{"st", 2}};
        case TheoryTag::Plain: return {};
    }
    return {};
}

}  // namespace

const Theory* Theory::get(TheoryTag tag, const BaseRing& base) {
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto key = std::make_tuple((int)tag, (int)base.kind, base.p);
    auto it = registry().find(key);
    if (it != registry().end()) return it->second.theory.get();

    Interned entry;
    entry.ring = std::make_unique<GroundRing>(base, vars_for(tag));
    const GroundRing* R = entry.ring.get();
    auto th = std::make_unique<Theory>();
    th->tag = tag;
    th->R = R;
    RingElement zero = RingElement::zero(R);
    switch (tag) {
        case TheoryTag::U2:
            th->rel_h = RingElement::variable(R, "h");
            th->rel_t = RingElement::variable(R, "t");
            // X^2 - hX - t does not factor; X and Y = X - h still serve as
            // Lee label candidates, with the cycle condition checked at runtime
            th->has_roots = false;
            th->root1 = zero;
            th->root2 = th->rel_h;
            break;
        case TheoryTag::U1:
            th->rel_h = RingElement::variable(R, "h");
            th->rel_t = zero;
            th->has_roots = true;
            th->root1 = zero;
            th->root2 = th->rel_h;
            break;
        case TheoryTag::U1xU1: {
            RingElement a1 = RingElement::variable(R, "a1");
            RingElement a2 = RingElement::variable(R, "a2");
            th->rel_h = a1 + a2;
            th->rel_t = -(a1 * a2);
            th->has_roots = true;
            th->root1 = a1;
            th->root2 = a2;
            break;
        }
        case TheoryTag::SU2:
            th->rel_h = zero;
            th->rel_t = RingElement::variable(R, "t");
            th->has_roots = false;
            th->root1 = th->root2 = zero;
            break;
        case TheoryTag::SU2Sqrt: {
            RingElement st = RingElement::variable(R, "st");
            th->rel_h = zero;
            th->rel_t = st * st;
            th->has_roots = true;
            th->root1 = -st;
            th->root2 = st;
            break;
        }
        case TheoryTag::Plain:
            th->rel_h = zero;
            th->rel_t = zero;
            th->has_roots = true;
            th->root1 = zero;
            th->root2 = zero;
            break;
    }
    entry.theory = std::move(th);
    const Theory* out = entry.theory.get();
    registry().emplace(key, std::move(entry));
    return out;
}

bool Theory::involution_valid(InvKind k) const {
    switch (k) {
        case InvKind::Sigma:
        case InvKind::SigmaHat: return true;
        case InvKind::SigmaAlpha: return tag == TheoryTag::U1xU1;
        case InvKind::SigmaSqrtT: return tag == TheoryTag::SU2Sqrt;
    }
    return false;
}

InvKind Theory::nu_involution() const {
    switch (tag) {
        case TheoryTag::U1xU1: return InvKind::SigmaAlpha;
        case TheoryTag::SU2Sqrt: return InvKind::SigmaSqrtT;
        default: return InvKind::SigmaHat;
    }
}

bool Theory::has_nu() const {
    return tag == TheoryTag::U2 || tag == TheoryTag::U1 || tag == TheoryTag::U1xU1 ||
           tag == TheoryTag::SU2Sqrt;
}

RingElement Theory::nu_divisor() const {
    switch (tag) {
        case TheoryTag::U2:
        case TheoryTag::U1: return rel_h;
        case TheoryTag::U1xU1: return root2 - root1;
        case TheoryTag::SU2Sqrt: return RingElement::variable(R, "st") * RingElement::of_int(R, 2);
        default: throw ScopeError("nu operation undefined for theory " + name());
    }
}

RingElement Theory::coeff_action(InvKind k, const RingElement& c) const {
    if (!involution_valid(k))
        throw ScopeError("involution not defined for theory " + name());
    switch (k) {
        case InvKind::Sigma: return c;
        case InvKind::SigmaHat: return sigma0(c);
        case InvKind::SigmaAlpha: return c.vars_swapped(R->var_index("a1"), R->var_index("a2"));
        case InvKind::SigmaSqrtT: return sigma0(c);
    }
    return c;
}

RingElement Arrow::map_scalar(const RingElement& c) const {
    return c.substituted(to->R, var_images);
}

namespace {

Arrow make_arrow(const std::string& name, TheoryTag from, TheoryTag to, const BaseRing& base,
                 const std::vector<std::string>& images_txt, const std::string& shift_txt) {
    const Theory* F = Theory::get(from, base);
    const Theory* T = Theory::get(to, base);
    auto term = [&](const std::string& txt) -> RingElement {
        // tiny vocabulary: 0, h, t, a1, a2, st, -st, a1+a2, a2-a1, -a1*a2, 2st, -a1, st2
        const GroundRing* R = T->R;
        if (txt == "0") return RingElement::zero(R);
        if (txt == "h") return RingElement::variable(R, "h");
        if (txt == "t") return RingElement::variable(R, "t");
        if (txt == "a1") return RingElement::variable(R, "a1");
        if (txt == "a2") return RingElement::variable(R, "a2");
        if (txt == "st") return RingElement::variable(R, "st");
        if (txt == "-st") return -RingElement::variable(R, "st");
        if (txt == "-a1") return -RingElement::variable(R, "a1");
        if (txt == "a1+a2") return RingElement::variable(R, "a1") + RingElement::variable(R, "a2");
        if (txt == "a2-a1") return RingElement::variable(R, "a2") - RingElement::variable(R, "a1");
        if (txt == "-a1*a2") return -(RingElement::variable(R, "a1") * RingElement::variable(R, "a2"));
        if (txt == "2st") return RingElement::variable(R, "st") * RingElement::of_int(R, 2);
        if (txt == "st2") return RingElement::variable(R, "st") * RingElement::variable(R, "st");
        throw Error("arrow image vocabulary: " + txt);
    };
    Arrow a;
    a.name = name;
    a.from = F;
    a.to = T;
    for (const auto& s : images_txt) a.var_images.push_back(term(s));
    a.x_shift = term(shift_txt);
    return a;
}

}  // namespace

const Arrow& get_arrow(const std::string& name, const BaseRing& base) {
    static std::mutex m;
    static std::map<std::tuple<std::string, int, uint32_t>, Arrow> cache;
    std::lock_guard<std::mutex> lock(m);
    auto key = std::make_tuple(name, (int)base.kind, base.p);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    Arrow a;
    if (name == "u2_to_u1xu1")
        a = make_arrow(name, TheoryTag::U2, TheoryTag::U1xU1, base, {"a1+a2", "-a1*a2"}, "0");
    else if (name == "u2_to_u1")
        a = make_arrow(name, TheoryTag::U2, TheoryTag::U1, base, {"h", "0"}, "0");
    else if (name == "u2_to_su2")
        a = make_arrow(name, TheoryTag::U2, TheoryTag::SU2, base, {"0", "t"}, "0");
    else if (name == "u1xu1_to_u1")
        a = make_arrow(name, TheoryTag::U1xU1, TheoryTag::U1, base, {"0", "h"}, "0");
    else if (name == "u1xu1_to_su2sqrt")
        a = make_arrow(name, TheoryTag::U1xU1, TheoryTag::SU2Sqrt, base, {"-st", "st"}, "0");
    else if (name == "su2_to_su2sqrt")
        a = make_arrow(name, TheoryTag::SU2, TheoryTag::SU2Sqrt, base, {"st2"}, "0");
    else if (name == "su2_to_plain")
        a = make_arrow(name, TheoryTag::SU2, TheoryTag::Plain, base, {"0"}, "0");
    else if (name == "u1_to_plain")
        a = make_arrow(name, TheoryTag::U1, TheoryTag::Plain, base, {"0"}, "0");
    else if (name == "su2sqrt_to_plain")
        a = make_arrow(name, TheoryTag::SU2Sqrt, TheoryTag::Plain, base, {"0"}, "0");
    else if (name == "u1_to_u1xu1")
        a = make_arrow(name, TheoryTag::U1, TheoryTag::U1xU1, base, {"a2-a1"}, "-a1");
    else if (name == "u1_to_su2sqrt")
        a = make_arrow(name, TheoryTag::U1, TheoryTag::SU2Sqrt, base, {"2st"}, "st");
    else
        throw ScopeError("unregistered base-change arrow: " + name);
    return cache.emplace(key, std::move(a)).first->second;
}

std::vector<std::string> arrow_names() {
    return {"u2_to_u1xu1",     "u2_to_u1",     "u2_to_su2",      "u1xu1_to_u1",
            "u1xu1_to_su2sqrt", "su2_to_su2sqrt", "su2_to_plain", "u1_to_plain",
            "su2sqrt_to_plain", "u1_to_u1xu1",  "u1_to_su2sqrt"};
}

}  // namespace khx
