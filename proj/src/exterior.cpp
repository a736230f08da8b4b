#include "ssq/exterior.hpp"

#include <stdexcept>

namespace ssq {

Monomial Monomial::generator(std::size_t index) {
    if (index >= max_generators)
        throw std::out_of_range("Monomial::generator: index exceeds 64 generators");
    return Monomial(std::uint64_t{1} << index);
}

Monomial Monomial::from_indices(const std::vector<std::size_t>& indices) {
    std::uint64_t bits = 0;
    for (auto i : indices) {
        const auto g = generator(i).bits();
        if (bits & g)
            throw std::invalid_argument("Monomial::from_indices: repeated generator");
        bits |= g;
    }
    return Monomial(bits);
}

std::vector<std::size_t> Monomial::indices() const {
    std::vector<std::size_t> out;
    out.reserve(static_cast<std::size_t>(degree()));
    for (std::uint64_t b = bits_; b != 0; b &= b - 1)
        out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
}

int Monomial::position_of(std::size_t index) const {
    const std::uint64_t below = index == 0 ? 0 : (bits_ & ((std::uint64_t{1} << index) - 1));
    return std::popcount(below);
}

bool lex_less(Monomial a, Monomial b) {
    const std::uint64_t diff = a.bits() ^ b.bits();
    if (diff == 0)
        return false;
    // The lowest differing generator is present in exactly one of the two; the
    // monomial holding it has the smaller entry at the first difference.
    return (a.bits() & (diff & (~diff + 1))) != 0;
}

bool operator<(Monomial a, Monomial b) {
    if (a.degree() != b.degree())
        return a.degree() < b.degree();
    return lex_less(a, b);
}

int wedge_sign(Monomial a, Monomial b) {
    if (a.bits() & b.bits())
        return 0;
    // Count inversions: pairs (i in a, j in b) with i > j.
    int inversions = 0;
    for (std::uint64_t bb = b.bits(); bb != 0; bb &= bb - 1) {
        const int j = std::countr_zero(bb);
        const std::uint64_t above = j == 63 ? 0 : (a.bits() >> (j + 1));
        inversions += std::popcount(above);
    }
    return (inversions & 1) ? -1 : 1;
}

int permutation_sign(const std::vector<std::size_t>& sequence) {
    int inversions = 0;
    for (std::size_t i = 0; i < sequence.size(); ++i)
        for (std::size_t j = i + 1; j < sequence.size(); ++j) {
            if (sequence[i] == sequence[j])
                return 0;
            if (sequence[i] > sequence[j])
                ++inversions;
        }
    return (inversions & 1) ? -1 : 1;
}

Element::Element(std::size_t arity) : arity_(arity) {
    if (arity > max_generators)
        throw std::invalid_argument("Element: more than 64 generators");
}

Element Element::unit(std::size_t arity) { return monomial(arity, Monomial{}, 1); }

Element Element::generator(std::size_t arity, std::size_t index) {
    if (index >= arity)
        throw std::out_of_range("Element::generator: index out of range");
    return monomial(arity, Monomial::generator(index), 1);
}

Element Element::monomial(std::size_t arity, Monomial m, const Rational& coeff) {
    Element e(arity);
    if (arity < 64 && (m.bits() >> arity) != 0)
        throw std::out_of_range("Element::monomial: generator index out of range");
    e.add_term(m, coeff);
    return e;
}

Rational Element::coefficient(Monomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Element::add_term(Monomial m, const Rational& coeff) {
    if (sgn(coeff) == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, coeff);
    if (!inserted) {
        it->second += coeff;
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }
}

std::optional<int> Element::degree() const {
    if (terms_.empty())
        return std::nullopt;
    const int d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
        if (m.degree() != d)
            return std::nullopt;
    return d;
}

bool Element::is_homogeneous() const { return terms_.empty() || degree().has_value(); }

void Element::check_same_arity(const Element& other) const {
    if (arity_ != other.arity_)
        throw std::invalid_argument("Element: generator-set mismatch");
}

Element& Element::operator+=(const Element& other) {
    check_same_arity(other);
    for (const auto& [m, c] : other.terms_)
        add_term(m, c);
    return *this;
}

Element& Element::operator-=(const Element& other) {
    check_same_arity(other);
    for (const auto& [m, c] : other.terms_)
        add_term(m, -c);
    return *this;
}

Element& Element::operator*=(const Rational& scalar) {
    if (sgn(scalar) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_)
        c *= scalar;
    return *this;
}

Element wedge(const Element& a, const Element& b) {
    if (a.arity() != b.arity())
        throw std::invalid_argument("wedge: generator-set mismatch");
    Element out(a.arity());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            const int s = wedge_sign(ma, mb);
            if (s == 0)
                continue;
            const Rational c = ca * cb;
            out.add_term(Monomial(ma.bits() | mb.bits()), s > 0 ? c : Rational(-c));
        }
    return out;
}

Rational inner_product(const Element& a, const Element& b) {
    if (a.arity() != b.arity())
        throw std::invalid_argument("inner_product: generator-set mismatch");
    Rational sum = 0;
    for (const auto& [m, c] : a.terms())
        sum += c * b.coefficient(m);
    return sum;
}

} // namespace ssq
