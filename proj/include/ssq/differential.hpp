#pragma once

#include "ssq/model.hpp"

namespace ssq {

/// (base-degree, fiber-degree).
struct Bidegree {
    int p = 0;
    int q = 0;

    friend bool operator==(const Bidegree&, const Bidegree&) = default;
    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

Bidegree bidegree(const ModelSpec& model, Monomial m);
/// nullopt for zero or mixed bidegree.
std::optional<Bidegree> bidegree(const ModelSpec& model, const Element& a);

/// Minimum number of base factors over the terms of a; nullopt for zero.
std::optional<int> filtration_level(const ModelSpec& model, const Element& a);

/// d extended from the generators by the graded Leibniz rule.
Element differential(const ModelSpec& model, Monomial m);
Element differential(const ModelSpec& model, const Element& a);

/// Contraction with the fundamental field dual to fiber generator `index`
/// (index in declaration order). Throws std::invalid_argument if it is not a
/// fiber generator.
Element interior_product(const ModelSpec& model, std::size_t index, const Element& a);

struct SplitDifferential {
    Element d10;  // bidegree (p+1, q)
    Element d2m1; // bidegree (p+2, q-1)
};

/// Throws std::invalid_argument unless a is bihomogeneous (zero is accepted).
SplitDifferential split_differential(const ModelSpec& model, const Element& a);

} // namespace ssq
