#pragma once

// Hodge theory for the orthonormal coframe given by the generators.
//
// Monomials are orthonormal, the orientation is the full monomial in
// declaration order, and *e_I = sgn(I, I^c) e_{I^c}. The basic versions work
// inside the base subalgebra with the base generators' orientation.

#include "ssq/spectral.hpp"

namespace ssq {

/// Throws std::invalid_argument for an inhomogeneous element.
Element hodge_star(const ModelSpec& model, const Element& a);
/// (-1)^(N(k+1)+1) * d * on degree k, N the number of generators.
Element codifferential(const ModelSpec& model, const Element& a);
Element laplacian(const ModelSpec& model, const Element& a);
/// Kernel of the Laplacian on degree n, canonical basis.
Cohomology harmonic_basis(const ModelSpec& model, int n);

/// Throws std::invalid_argument for inhomogeneous or non-basic input.
Element basic_star(const ModelSpec& model, const Element& a);
/// (-1)^(q(k+1)+1) *_b d *_b on degree k, q the number of base generators.
Element basic_codifferential(const ModelSpec& model, const Element& a);
Element basic_laplacian(const ModelSpec& model, const Element& a);
Cohomology basic_harmonic_basis(const ModelSpec& model, int n);

enum class HarmonicFlavor { total, basic };

struct HarmonicReport {
    HarmonicFlavor flavor = HarmonicFlavor::total;
    std::vector<Cohomology> degrees;     // harmonic forms of degree 0, 1, ...
    std::vector<bool> betti_crosscheck;  // dimension equals the cohomology dimension
};

HarmonicReport harmonic_report(const ModelSpec& model, HarmonicFlavor flavor);

/// Checks *(eta_I ^ a) = sign(I, J) (-1)^((s-k) r) eta_J ^ *_b a for a basic
/// homogeneous a of degree r, I an ordered list of k fiber generator indices
/// and J the remaining fiber indices in increasing order. Requires every base
/// generator to be declared before every fiber generator (std::invalid_argument
/// otherwise), as well as distinct fiber indices and a basic homogeneous a.
bool star_splitting_check(const ModelSpec& model, const std::vector<std::size_t>& fibers, const Element& a);

/// True when the top basic cohomology is one-dimensional.
bool orientability_check(const ModelSpec& model);

} // namespace ssq
