#pragma once

// The spectral sequence of the filtration by number of base factors.
//
// F^p in degree n is spanned by the degree-n monomials with at least p base
// factors. For each page r and bidegree (p, q), n = p + q:
//
//   Z_r^{p,q} = { x in F^p : dx in F^{p+r} }
//   B_r^{p,q} = Z_r^{p,q} intersected with (F^{p+1} + d F^{p-r+1} in degree n-1)
//   E_r^{p,q} = Z_r^{p,q} / B_r^{p,q}
//
// and d_r : E_r^{p,q} -> E_r^{p+r,q-r+1} is the map induced by d.

#include "ssq/differential.hpp"
#include "ssq/graded_complex.hpp"

#include <map>
#include <memory>
#include <optional>

namespace ssq {

/// Span of the degree-n monomials with at least k base factors, as a subspace of
/// the degree-n coordinate space (coordinates: degree_basis(model, n)).
Subspace filtration_space(const ModelSpec& model, int k, int n);

struct Cohomology {
    std::size_t dimension = 0;
    std::vector<Element> basis; // representatives of a basis of classes
};

/// Cohomology of the base subalgebra in degree n.
Cohomology basic_cohomology(const ModelSpec& model, int n);
/// Cohomology of the whole model in degree n, computed without the filtration.
Cohomology total_cohomology(const ModelSpec& model, int n);
std::vector<std::size_t> basic_betti_numbers(const ModelSpec& model);
std::vector<std::size_t> betti_numbers(const ModelSpec& model);

/// Dimension of the span of the basic classes [d e_1], ..., [d e_s] in H^2.
int cohomological_rank(const ModelSpec& model);

struct PageSlot {
    int p = 0;
    int q = 0;
    std::size_t dimension = 0;
    std::vector<Element> representatives; // elements of Z_r^{p,q}, one per class
    Bidegree target;                      // (p + r, q - r + 1)
    SparseMatrix differential;            // row i holds the coordinates of d_r(class i)
    /// (block, index) of each representative inside the weight decomposition.
    std::vector<GradedComplex::Location> origins;
};

struct SpectralPage {
    int r = 0;
    int max_p = 0; // number of base generators
    int max_q = 0; // number of fiber generators
    std::map<std::pair<int, int>, PageSlot> slots;

    /// Throws std::out_of_range outside 0 <= p <= max_p, 0 <= q <= max_q.
    const PageSlot& slot(int p, int q) const;
    /// Zero outside the valid range.
    std::size_t dimension(int p, int q) const;
    /// Dimension grid with rows q = max_q, ..., 0 and columns p = 0, ..., max_p.
    std::vector<std::vector<std::size_t>> grid() const;
    /// Dimension grid row for a fixed q, p = 0, ..., max_p.
    std::vector<std::size_t> row(int q) const;
    bool differential_is_zero() const;
};

struct DegenerationResult {
    int page = 2;                      // smallest l >= 2 with d_r = 0 for all r >= l
    int rank = 0;                      // cohomological rank k
    int s = 0;                         // number of fiber generators
    bool bound_kplus2_ok = true;       // page <= k + 2
    bool bound_splus2_ok = true;       // page <= s + 2
    std::optional<int> last_nonzero_dr; // largest r >= 2 with d_r != 0
};

/// Pages of one model, computed on demand and cached.
class SpectralSequence {
public:
    /// Throws ValidationError for an invalid model.
    explicit SpectralSequence(const ModelSpec& model);

    const ModelSpec& model() const { return complex_.model(); }
    const GradedComplex& complex() const { return complex_; }
    int fiber_count() const { return model().fiber_count(); }

    const SpectralPage& page(int r);

    /// Basis of Z_r^{p,q} and of B_r^{p,q}.
    std::vector<Element> cycles(int r, int p, int q) const;
    std::vector<Element> boundaries(int r, int p, int q) const;

    /// Zig-zag lift: an element z of Z_r^{p,q} with z - a in F^{p+1}, where a is
    /// homogeneous of degree p + q and filtration p. nullopt when no such z
    /// exists, i.e. a does not survive to page r.
    std::optional<Element> lift(int r, const Element& a) const;

    /// Class coordinates of z in E_r^{p,q}. Throws std::invalid_argument when z is
    /// not in Z_r^{p,q}.
    Vector class_coordinates(int r, int p, int q, const Element& z);

    /// d_r applied to class coordinates. Throws std::out_of_range for a slot
    /// outside the page or coordinates of the wrong length.
    Vector d_r_on_class(int r, int p, int q, std::span<const Rational> coords);

    /// Target class coordinates of d z for a cycle z in Z_r^{p,q}, computed from
    /// z itself rather than from the stored representatives. Empty when the
    /// target slot lies outside the page.
    Vector d_r_on_cycle(int r, int p, int q, const Element& z);

    DegenerationResult degeneration();

private:
    SpectralPage build_page(int r) const;
    Subspace cycles_in(const GradedComplex::Block& block, int n, int p, int r) const;
    Subspace boundaries_in(const GradedComplex::Block& block, const Subspace& cycles, int n, int p,
                           int r) const;

    GradedComplex complex_;
    std::map<int, SpectralPage> pages_;
};

SpectralPage compute_page(const ModelSpec& model, int r);
Vector d_r_on_class(const ModelSpec& model, int r, int p, int q, std::span<const Rational> coords);
DegenerationResult degeneration_page(const ModelSpec& model);
/// dim E_2^{p,q} = dim H^p_basic * C(s, q) for every (p, q).
bool e2_structure_check(const ModelSpec& model);

std::size_t binomial(int n, int k);

} // namespace ssq
