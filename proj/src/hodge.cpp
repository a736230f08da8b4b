#include "ssq/hodge.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace ssq {

namespace {

int degree_of(const Element& a, const char* what) {
    if (!a.is_homogeneous())
        throw std::invalid_argument(std::string(what) + ": element is not homogeneous");
    return a.is_zero() ? 0 : *a.degree();
}

// Star inside the exterior algebra on the generators of `mask`.
Element star_in(std::uint64_t mask, const Element& a) {
    Element out(a.arity());
    for (const auto& [m, c] : a.terms()) {
        const Monomial rest(mask ^ m.bits());
        const int sign = wedge_sign(m, rest);
        out.add_term(rest, sign > 0 ? c : Rational(-c));
    }
    return out;
}

bool is_basic(const ModelSpec& model, const Element& a) {
    return std::all_of(a.terms().begin(), a.terms().end(),
                       [&](const auto& t) { return (t.first.bits() & model.fiber_mask()) == 0; });
}

void require_basic(const ModelSpec& model, const Element& a, const char* what) {
    if (a.arity() != model.size())
        throw std::invalid_argument(std::string(what) + ": element is not over the model's generators");
    if (!is_basic(model, a))
        throw std::invalid_argument(std::string(what) + ": element is not basic");
}

Element codifferential_in(const ModelSpec& model, std::uint64_t mask, const Element& a, const char* what) {
    const int k = degree_of(a, what);
    if (a.is_zero() || k == 0)
        return Element(a.arity());
    const int size = std::popcount(mask);
    const bool negative = (size * (k + 1) + 1) % 2 != 0;
    Element out = star_in(mask, differential(model, star_in(mask, a)));
    return negative ? -out : out;
}

using Operator = std::function<Element(const Element&)>;

// Kernel of a block-preserving operator on degree n, merged across blocks by pivot.
Cohomology kernel_in(const GradedComplex& complex, int n, const Operator& op) {
    struct Tag {
        Monomial pivot;
        std::size_t index;
    };
    std::vector<Tag> tags;
    std::vector<Element> elements;
    const std::size_t arity = complex.model().size();
    for (std::uint32_t b = 0; b < complex.blocks().size(); ++b) {
        const auto& cell = complex.blocks()[b].cell(n);
        if (cell.size() == 0)
            continue;
        Matrix m(cell.size(), cell.size());
        for (std::size_t i = 0; i < cell.size(); ++i) {
            const Element image = op(Element::monomial(arity, cell.monomials[i]));
            for (const auto& [t, c] : image.terms()) {
                const auto loc = complex.locate(t);
                if (loc.block != b)
                    throw std::logic_error("harmonic kernel: operator leaves its weight block");
                m(i, loc.index) = c;
            }
        }
        const Subspace ker = left_kernel(m);
        for (std::size_t i = 0; i < ker.dim(); ++i) {
            tags.push_back({cell.monomials[ker.pivots()[i]], elements.size()});
            elements.push_back(complex.assemble(b, n, ker.basis().row(i)));
        }
    }
    std::sort(tags.begin(), tags.end(),
              [&](const Tag& x, const Tag& y) { return complex.order()(x.pivot, y.pivot); });
    Cohomology out;
    out.dimension = tags.size();
    for (const auto& t : tags)
        out.basis.push_back(std::move(elements[t.index]));
    return out;
}

} // namespace

Element hodge_star(const ModelSpec& model, const Element& a) {
    degree_of(a, "hodge_star");
    if (a.arity() != model.size())
        throw std::invalid_argument("hodge_star: element is not over the model's generators");
    return star_in(model.orientation().bits(), a);
}

Element codifferential(const ModelSpec& model, const Element& a) {
    return codifferential_in(model, model.orientation().bits(), a, "codifferential");
}

Element laplacian(const ModelSpec& model, const Element& a) {
    degree_of(a, "laplacian");
    return differential(model, codifferential(model, a)) + codifferential(model, differential(model, a));
}

Cohomology harmonic_basis(const ModelSpec& model, int n) {
    require_valid(model);
    const GradedComplex complex(model, model.orientation().bits());
    return kernel_in(complex, n, [&](const Element& a) { return laplacian(model, a); });
}

Element basic_star(const ModelSpec& model, const Element& a) {
    degree_of(a, "basic_star");
    require_basic(model, a, "basic_star");
    return star_in(model.base_mask(), a);
}

Element basic_codifferential(const ModelSpec& model, const Element& a) {
    require_basic(model, a, "basic_codifferential");
    return codifferential_in(model, model.base_mask(), a, "basic_codifferential");
}

Element basic_laplacian(const ModelSpec& model, const Element& a) {
    degree_of(a, "basic_laplacian");
    require_basic(model, a, "basic_laplacian");
    return differential(model, basic_codifferential(model, a)) +
           basic_codifferential(model, differential(model, a));
}

Cohomology basic_harmonic_basis(const ModelSpec& model, int n) {
    require_valid(model);
    const GradedComplex complex(model, model.base_mask());
    return kernel_in(complex, n, [&](const Element& a) { return basic_laplacian(model, a); });
}

HarmonicReport harmonic_report(const ModelSpec& model, HarmonicFlavor flavor) {
    require_valid(model);
    HarmonicReport report;
    report.flavor = flavor;
    const bool basic = flavor == HarmonicFlavor::basic;
    const GradedComplex complex(model, basic ? model.base_mask() : model.orientation().bits());
    const auto betti = basic ? basic_betti_numbers(model) : betti_numbers(model);
    const Operator op = basic ? Operator([&](const Element& a) { return basic_laplacian(model, a); })
                              : Operator([&](const Element& a) { return laplacian(model, a); });
    for (std::size_t n = 0; n < betti.size(); ++n) {
        report.degrees.push_back(kernel_in(complex, static_cast<int>(n), op));
        report.betti_crosscheck.push_back(report.degrees.back().dimension == betti[n]);
    }
    return report;
}

bool star_splitting_check(const ModelSpec& model, const std::vector<std::size_t>& fibers, const Element& a) {
    if (!model.base_before_fiber())
        throw std::invalid_argument("star_splitting_check: base generators must precede fiber generators");
    require_basic(model, a, "star_splitting_check");
    const int r = degree_of(a, "star_splitting_check");
    std::set<std::size_t> chosen;
    for (auto i : fibers) {
        if (i >= model.size() || !model.is_fiber(i))
            throw std::invalid_argument("star_splitting_check: index is not a fiber generator");
        if (!chosen.insert(i).second)
            throw std::invalid_argument("star_splitting_check: repeated fiber index");
    }
    std::vector<std::size_t> order = fibers;
    Element eta_j = model.unit();
    for (auto j : model.fiber_indices())
        if (!chosen.contains(j)) {
            order.push_back(j);
            eta_j = wedge(eta_j, Element::generator(model.size(), j));
        }
    Element eta_i = model.unit();
    for (auto i : fibers)
        eta_i = wedge(eta_i, Element::generator(model.size(), i));

    const int k = static_cast<int>(fibers.size());
    const int s = model.fiber_count();
    const int sign = permutation_sign(order) * (((s - k) * r) % 2 ? -1 : 1);
    const Element lhs = hodge_star(model, wedge(eta_i, a));
    const Element rhs = Rational(sign) * wedge(eta_j, basic_star(model, a));
    return lhs == rhs;
}

bool orientability_check(const ModelSpec& model) {
    const auto betti = basic_betti_numbers(model);
    return betti.at(static_cast<std::size_t>(model.base_count())) == 1;
}

} // namespace ssq
