#pragma once

// Exterior algebra on up to 64 degree-one generators.
//
// A Monomial is a set of generator indices, always read in increasing index
// order: {i_1 < ... < i_k} stands for g_{i_1} ^ ... ^ g_{i_k}. All signs come
// from sorting permutations against that order.

#include "ssq/linalg.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace ssq {

inline constexpr std::size_t max_generators = 64;

class Monomial {
public:
    constexpr Monomial() = default;
    constexpr explicit Monomial(std::uint64_t bits) : bits_(bits) {}

    static Monomial generator(std::size_t index);
    static Monomial from_indices(const std::vector<std::size_t>& indices);

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr int degree() const { return std::popcount(bits_); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr bool contains(std::size_t index) const { return (bits_ >> index) & 1u; }
    std::vector<std::size_t> indices() const;

    /// Number of factors in this monomial that precede generator `index`.
    int position_of(std::size_t index) const;

    friend constexpr bool operator==(Monomial a, Monomial b) { return a.bits_ == b.bits_; }
    /// Degree first, then lexicographic on the sorted index lists.
    friend bool operator<(Monomial a, Monomial b);

private:
    std::uint64_t bits_ = 0;
};

/// Lexicographic comparison of the sorted index lists of two monomials of equal
/// degree.
bool lex_less(Monomial a, Monomial b);

/// Sign s with e_a ^ e_b = s e_{a|b}; zero when a and b share a generator.
int wedge_sign(Monomial a, Monomial b);

/// Sign of the permutation sorting the given distinct indices; zero on repeats.
int permutation_sign(const std::vector<std::size_t>& sequence);

/// Sparse rational combination of monomials over `arity` generators.
class Element {
public:
    using Terms = std::map<Monomial, Rational>;

    explicit Element(std::size_t arity = 0);

    static Element unit(std::size_t arity);
    static Element generator(std::size_t arity, std::size_t index);
    static Element monomial(std::size_t arity, Monomial m, const Rational& coeff = 1);

    std::size_t arity() const { return arity_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coefficient(Monomial m) const;

    /// Adds coeff * m, dropping the term if it cancels.
    void add_term(Monomial m, const Rational& coeff);

    /// Degree of a homogeneous nonzero element; nullopt for zero or mixed degree.
    std::optional<int> degree() const;
    bool is_homogeneous() const;

    /// Terms whose monomial satisfies a predicate.
    template <class Pred>
    Element filter(Pred&& pred) const {
        Element out(arity_);
        for (const auto& [m, c] : terms_)
            if (pred(m))
                out.terms_.emplace(m, c);
        return out;
    }

    Element& operator+=(const Element& other);
    Element& operator-=(const Element& other);
    Element& operator*=(const Rational& scalar);
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Rational& s, Element a) { return a *= s; }
    friend Element operator-(Element a) { return a *= Rational(-1); }
    friend bool operator==(const Element& a, const Element& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

private:
    void check_same_arity(const Element& other) const;

    std::size_t arity_ = 0;
    Terms terms_;
};

/// Bilinear exterior product. Throws std::invalid_argument on arity mismatch.
Element wedge(const Element& a, const Element& b);

/// Monomial-orthonormal pairing <a, b>.
Rational inner_product(const Element& a, const Element& b);

} // namespace ssq
