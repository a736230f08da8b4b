#include "ssq/differential.hpp"

namespace ssq {

namespace {

void check_arity(const ModelSpec& model, const Element& a, const char* what) {
    if (a.arity() != model.size())
        throw std::invalid_argument(std::string(what) + ": element is not over the model's generators");
}

} // namespace

Bidegree bidegree(const ModelSpec& model, Monomial m) {
    return {std::popcount(m.bits() & model.base_mask()), std::popcount(m.bits() & model.fiber_mask())};
}

std::optional<Bidegree> bidegree(const ModelSpec& model, const Element& a) {
    if (a.is_zero())
        return std::nullopt;
    const Bidegree first = bidegree(model, a.terms().begin()->first);
    for (const auto& [m, c] : a.terms())
        if (bidegree(model, m) != first)
            return std::nullopt;
    return first;
}

std::optional<int> filtration_level(const ModelSpec& model, const Element& a) {
    std::optional<int> level;
    for (const auto& [m, c] : a.terms()) {
        const int p = bidegree(model, m).p;
        if (!level || p < *level)
            level = p;
    }
    return level;
}

Element differential(const ModelSpec& model, Monomial m) {
    Element out(model.size());
    if (model.size() < 64 && (m.bits() >> model.size()) != 0)
        throw std::invalid_argument("differential: unknown generator");
    int position = 0;
    for (std::uint64_t b = m.bits(); b != 0; b &= b - 1, ++position) {
        const auto g = static_cast<std::size_t>(std::countr_zero(b));
        const Element& dg = model.differential_of(g);
        if (dg.is_zero())
            continue;
        const std::uint64_t gbit = std::uint64_t{1} << g;
        const Monomial left(m.bits() & (gbit - 1));
        const Monomial right(m.bits() & ~(gbit | (gbit - 1)));
        // g_1 ... d(g_j) ... g_k carries (-1)^(j-1) from moving d past g_1..g_{j-1}.
        const int leibniz = (position & 1) ? -1 : 1;
        for (const auto& [t, c] : dg.terms()) {
            const int s1 = wedge_sign(left, t);
            if (s1 == 0)
                continue;
            const Monomial lt(left.bits() | t.bits());
            const int s2 = wedge_sign(lt, right);
            if (s2 == 0)
                continue;
            const int sign = leibniz * s1 * s2;
            out.add_term(Monomial(lt.bits() | right.bits()), sign > 0 ? c : Rational(-c));
        }
    }
    return out;
}

Element differential(const ModelSpec& model, const Element& a) {
    check_arity(model, a, "differential");
    Element out(model.size());
    for (const auto& [m, c] : a.terms())
        out += c * differential(model, m);
    return out;
}

Element interior_product(const ModelSpec& model, std::size_t index, const Element& a) {
    check_arity(model, a, "interior_product");
    if (index >= model.size() || !model.is_fiber(index))
        throw std::invalid_argument("interior_product: generator is not a fiber generator");
    Element out(model.size());
    const std::uint64_t bit = std::uint64_t{1} << index;
    for (const auto& [m, c] : a.terms()) {
        if (!(m.bits() & bit))
            continue;
        const bool odd = m.position_of(index) & 1;
        out.add_term(Monomial(m.bits() & ~bit), odd ? Rational(-c) : c);
    }
    return out;
}

SplitDifferential split_differential(const ModelSpec& model, const Element& a) {
    check_arity(model, a, "split_differential");
    SplitDifferential out{model.zero(), model.zero()};
    if (a.is_zero())
        return out;
    const auto bd = bidegree(model, a);
    if (!bd)
        throw std::invalid_argument("split_differential: element is not bihomogeneous");
    const Element da = differential(model, a);
    out.d10 = da.filter([&](Monomial m) { return bidegree(model, m) == Bidegree{bd->p + 1, bd->q}; });
    out.d2m1 = da.filter([&](Monomial m) { return bidegree(model, m) == Bidegree{bd->p + 2, bd->q - 1}; });
    return out;
}

} // namespace ssq
