#pragma once

// Weight decomposition of the monomial basis of a model.
//
// Give each generator g a weight w(g) in Q^N / R, where R is spanned by
// e_g - e_a - e_b for every term a^b of d(g). A monomial's weight is the sum of
// its generators' weights, and d maps each weight space to itself. The
// complex therefore splits into blocks, one per weight, and every construction
// used here (filtration, cycles, boundaries, star-adjoint Laplacians) splits
// with it. Canonical objects on a whole degree are the disjoint unions of the
// block-local ones, ordered by pivot monomial.

#include "ssq/model.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace ssq {

/// Order on monomials of one degree: fewer base factors first, then
/// lexicographic. With this order the filtration F^p is always a suffix.
struct GradedOrder {
    std::uint64_t base_mask = 0;
    bool operator()(Monomial a, Monomial b) const;
};

/// All degree-n monomials supported on `support_mask`, in GradedOrder. These
/// are the global coordinates of the degree-n piece.
std::vector<Monomial> degree_basis(const ModelSpec& model, int n, std::uint64_t support_mask);
std::vector<Monomial> degree_basis(const ModelSpec& model, int n);

/// Coordinates of `a` against a list of monomials. Throws std::invalid_argument if
/// a has a term outside the list.
Vector coordinates_in(const std::vector<Monomial>& basis, const Element& a);
Element element_from(std::size_t arity, const std::vector<Monomial>& basis, std::span<const Rational> v);

class GradedComplex {
public:
    struct Cell {
        std::vector<Monomial> monomials; // GradedOrder
        std::vector<std::size_t> starts; // starts[p]: first index with >= p base factors

        std::size_t size() const { return monomials.size(); }
        /// First index of F^p, clamped to [0, size()].
        std::size_t start(int p) const;
        /// True when some monomial of this cell has exactly p base factors.
        bool has_level(int p) const { return start(p) < start(p + 1); }
    };

    struct Block {
        int first_degree = 0;
        std::vector<Cell> cells;           // degree first_degree + i
        std::vector<Matrix> differentials; // differentials[i]: cells[i] -> cells[i+1]

        const Cell& cell(int n) const;
        /// Matrix of d from degree n to degree n + 1 (possibly with empty sides).
        Matrix differential(int n) const;
    };

    struct Location {
        std::uint32_t block = 0;
        std::uint32_t index = 0;
    };

    /// Largest support handled by exhaustive monomial enumeration.
    static constexpr int max_support = 26;

    GradedComplex(const ModelSpec& model, std::uint64_t support_mask);

    const ModelSpec& model() const { return model_; }
    const GradedOrder& order() const { return order_; }
    std::uint64_t support() const { return support_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    Location locate(Monomial m) const;

    /// Splits a homogeneous element into its block components as vectors in the
    /// block's degree-n cell coordinates.
    std::vector<std::pair<std::uint32_t, Vector>> split(const Element& a, int n) const;
    Element assemble(std::uint32_t block, int n, std::span<const Rational> v) const;

private:
    ModelSpec model_;
    std::uint64_t support_ = 0;
    GradedOrder order_;
    std::vector<Block> blocks_;
    std::unordered_map<std::uint64_t, Location> locations_;
};

} // namespace ssq
