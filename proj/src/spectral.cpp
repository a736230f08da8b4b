#include "ssq/spectral.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace ssq {

std::size_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n)
        return 0;
    std::size_t out = 1;
    for (int i = 1; i <= k; ++i)
        out = out * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return out;
}

Subspace filtration_space(const ModelSpec& model, int k, int n) {
    const auto basis = degree_basis(model, n);
    std::vector<std::size_t> coords;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (std::popcount(basis[i].bits() & model.base_mask()) >= k)
            coords.push_back(i);
    return Subspace::coordinate(basis.size(), coords);
}

namespace {

// Pivot-ordered merge of block-local bases into one canonical list.
struct Tagged {
    Monomial pivot;
    std::uint32_t block;
    std::size_t index;
};

void sort_by_pivot(std::vector<Tagged>& items, const GradedOrder& order) {
    std::sort(items.begin(), items.end(), [&](const Tagged& a, const Tagged& b) { return order(a.pivot, b.pivot); });
}

Cohomology cohomology_of(const GradedComplex& complex, int n) {
    Cohomology out;
    std::vector<Tagged> tags;
    std::vector<Element> elements;
    for (std::uint32_t b = 0; b < complex.blocks().size(); ++b) {
        const auto& block = complex.blocks()[b];
        const auto& cell = block.cell(n);
        if (cell.size() == 0)
            continue;
        const Subspace cycles = left_kernel(block.differential(n));
        const Subspace exact = Subspace::span(block.differential(n - 1));
        const Quotient h(cycles, exact);
        for (std::size_t i = 0; i < h.dimension(); ++i) {
            tags.push_back({cell.monomials[h.representative_pivots()[i]], b, elements.size()});
            elements.push_back(complex.assemble(b, n, h.representatives().row(i)));
        }
    }
    sort_by_pivot(tags, complex.order());
    out.dimension = tags.size();
    for (const auto& t : tags)
        out.basis.push_back(std::move(elements[t.index]));
    return out;
}

std::vector<std::size_t> betti_of(const GradedComplex& complex, int top) {
    std::vector<std::size_t> out;
    for (int n = 0; n <= top; ++n) {
        std::size_t dim = 0;
        for (const auto& block : complex.blocks()) {
            const std::size_t size = block.cell(n).size();
            if (size == 0)
                continue;
            dim += size - rank(block.differential(n)) - rank(block.differential(n - 1));
        }
        out.push_back(dim);
    }
    return out;
}

// Rows start.. of a subspace of Q^(size - start), padded to Q^size.
Subspace pad(const Subspace& s, std::size_t start, std::size_t size) {
    Matrix m(s.dim(), size);
    for (std::size_t i = 0; i < s.dim(); ++i)
        for (std::size_t j = 0; j < s.ambient_dim(); ++j)
            m(i, start + j) = s.basis()(i, j);
    return Subspace::span(m);
}

} // namespace

Cohomology basic_cohomology(const ModelSpec& model, int n) {
    require_valid(model);
    return cohomology_of(GradedComplex(model, model.base_mask()), n);
}

Cohomology total_cohomology(const ModelSpec& model, int n) {
    require_valid(model);
    return cohomology_of(GradedComplex(model, model.orientation().bits()), n);
}

std::vector<std::size_t> basic_betti_numbers(const ModelSpec& model) {
    require_valid(model);
    return betti_of(GradedComplex(model, model.base_mask()), model.base_count());
}

std::vector<std::size_t> betti_numbers(const ModelSpec& model) {
    require_valid(model);
    return betti_of(GradedComplex(model, model.orientation().bits()), static_cast<int>(model.size()));
}

int cohomological_rank(const ModelSpec& model) {
    require_valid(model);
    const auto one = degree_basis(model, 1, model.base_mask());
    const auto two = degree_basis(model, 2, model.base_mask());
    std::vector<Vector> exact;
    for (auto m : one)
        exact.push_back(coordinates_in(two, differential(model, m)));
    std::vector<Vector> with_curvature = exact;
    for (auto i : model.fiber_indices())
        with_curvature.push_back(coordinates_in(two, model.differential_of(i)));
    return static_cast<int>(Subspace::span(two.size(), with_curvature).dim() -
                            Subspace::span(two.size(), exact).dim());
}

const PageSlot& SpectralPage::slot(int p, int q) const {
    auto it = slots.find({p, q});
    if (it == slots.end())
        throw std::out_of_range("SpectralPage: slot (" + std::to_string(p) + ", " + std::to_string(q) +
                                ") outside the page");
    return it->second;
}

std::size_t SpectralPage::dimension(int p, int q) const {
    auto it = slots.find({p, q});
    return it == slots.end() ? 0 : it->second.dimension;
}

std::vector<std::size_t> SpectralPage::row(int q) const {
    std::vector<std::size_t> out;
    for (int p = 0; p <= max_p; ++p)
        out.push_back(dimension(p, q));
    return out;
}

std::vector<std::vector<std::size_t>> SpectralPage::grid() const {
    std::vector<std::vector<std::size_t>> out;
    for (int q = max_q; q >= 0; --q)
        out.push_back(row(q));
    return out;
}

bool SpectralPage::differential_is_zero() const {
    return std::all_of(slots.begin(), slots.end(), [](const auto& kv) { return kv.second.differential.is_zero(); });
}

SpectralSequence::SpectralSequence(const ModelSpec& model)
    : complex_((require_valid(model), model), model.orientation().bits()) {}

Subspace SpectralSequence::cycles_in(const GradedComplex::Block& block, int n, int p, int r) const {
    const auto& cell = block.cell(n);
    const auto& next = block.cell(n + 1);
    const std::size_t lo = cell.start(p);
    const std::size_t cut = next.start(p + r);
    if (cut == 0)
        return pad(Subspace::full(cell.size() - lo), lo, cell.size());
    const Matrix d = block.differential(n).submatrix(lo, cell.size(), 0, cut);
    return pad(left_kernel(d), lo, cell.size());
}

Subspace SpectralSequence::boundaries_in(const GradedComplex::Block& block, const Subspace& cycles, int n, int p,
                                         int r) const {
    const auto& cell = block.cell(n);
    const auto& prev = block.cell(n - 1);
    std::vector<Vector> gens;
    for (std::size_t i = cell.start(p + 1); i < cell.size(); ++i) {
        Vector e(cell.size());
        e[i] = 1;
        gens.push_back(std::move(e));
    }
    if (prev.size() > 0) {
        const Matrix d = block.differential(n - 1);
        for (std::size_t i = prev.start(p - r + 1); i < prev.size(); ++i)
            gens.push_back(d.row_vector(i));
    }
    return subspace_intersect(cycles, Subspace::span(cell.size(), gens));
}

SpectralPage SpectralSequence::build_page(int r) const {
    const ModelSpec& m = model();
    SpectralPage page;
    page.r = r;
    page.max_p = m.base_count();
    page.max_q = m.fiber_count();

    // Block-local quotients for every slot, keyed by (p, q, block).
    std::map<std::tuple<int, int, std::uint32_t>, Quotient> local;
    std::map<std::pair<int, int>, std::vector<Tagged>> tags;
    const auto& blocks = complex_.blocks();
    for (std::uint32_t b = 0; b < blocks.size(); ++b) {
        const auto& block = blocks[b];
        for (std::size_t i = 0; i < block.cells.size(); ++i) {
            const int n = block.first_degree + static_cast<int>(i);
            const auto& cell = block.cells[i];
            for (int p = 0; p <= page.max_p; ++p) {
                if (!cell.has_level(p))
                    continue;
                const Subspace z = cycles_in(block, n, p, r);
                Quotient e(z, boundaries_in(block, z, n, p, r));
                auto& slot_tags = tags[{p, n - p}];
                for (std::size_t k = 0; k < e.dimension(); ++k)
                    slot_tags.push_back({cell.monomials[e.representative_pivots()[k]], b, k});
                local.emplace(std::tuple{p, n - p, b}, std::move(e));
            }
        }
    }

    // Global class order and the (block, local) -> global index maps.
    std::map<std::tuple<int, int, std::uint32_t>, std::vector<std::size_t>> global;
    for (int p = 0; p <= page.max_p; ++p)
        for (int q = 0; q <= page.max_q; ++q) {
            PageSlot& slot = page.slots[{p, q}];
            slot.p = p;
            slot.q = q;
            slot.target = {p + r, q - r + 1};
            auto it = tags.find({p, q});
            if (it == tags.end())
                continue;
            auto& list = it->second;
            sort_by_pivot(list, complex_.order());
            slot.dimension = list.size();
            for (std::size_t g = 0; g < list.size(); ++g) {
                const auto key = std::tuple{p, q, list[g].block};
                auto& indices = global[key];
                const Quotient& e = local.at(key);
                if (indices.empty())
                    indices.resize(e.dimension());
                indices[list[g].index] = g;
                slot.representatives.push_back(
                    complex_.assemble(list[g].block, p + q, e.representatives().row(list[g].index)));
                slot.origins.push_back({list[g].block, static_cast<std::uint32_t>(list[g].index)});
            }
        }

    for (auto& [pq, slot] : page.slots) {
        const auto [p, q] = pq;
        const std::size_t target_dim = page.dimension(slot.target.p, slot.target.q);
        slot.differential = SparseMatrix(slot.dimension, target_dim);
        if (slot.dimension == 0 || target_dim == 0)
            continue;
        const int n = p + q;
        for (std::size_t g = 0; g < slot.dimension; ++g) {
            const auto [b, k] = slot.origins[g];
            const auto key = std::tuple{slot.target.p, slot.target.q, b};
            auto target = local.find(key);
            if (target == local.end() || target->second.dimension() == 0)
                continue; // the target slot has no classes in this block
            const Vector z = local.at(std::tuple{p, q, b}).representatives().row_vector(k);
            const Vector dz = multiply(z, blocks[b].differential(n));
            const Vector coords = target->second.coordinates(dz);
            const auto& map = global.at(key);
            for (std::size_t j = 0; j < coords.size(); ++j)
                if (sgn(coords[j]) != 0)
                    slot.differential.set(g, map[j], coords[j]);
        }
    }
    return page;
}

const SpectralPage& SpectralSequence::page(int r) {
    if (r < 0)
        throw std::invalid_argument("SpectralSequence::page: negative page index");
    auto it = pages_.find(r);
    if (it == pages_.end())
        it = pages_.emplace(r, build_page(r)).first;
    return it->second;
}

std::vector<Element> SpectralSequence::cycles(int r, int p, int q) const {
    std::vector<Tagged> tags;
    std::vector<Element> elements;
    const int n = p + q;
    for (std::uint32_t b = 0; b < complex_.blocks().size(); ++b) {
        const auto& block = complex_.blocks()[b];
        if (block.cell(n).size() == 0)
            continue;
        const Subspace z = cycles_in(block, n, p, r);
        for (std::size_t i = 0; i < z.dim(); ++i) {
            tags.push_back({block.cell(n).monomials[z.pivots()[i]], b, elements.size()});
            elements.push_back(complex_.assemble(b, n, z.basis().row(i)));
        }
    }
    sort_by_pivot(tags, complex_.order());
    std::vector<Element> out;
    for (const auto& t : tags)
        out.push_back(std::move(elements[t.index]));
    return out;
}

std::vector<Element> SpectralSequence::boundaries(int r, int p, int q) const {
    std::vector<Tagged> tags;
    std::vector<Element> elements;
    const int n = p + q;
    for (std::uint32_t b = 0; b < complex_.blocks().size(); ++b) {
        const auto& block = complex_.blocks()[b];
        if (block.cell(n).size() == 0)
            continue;
        const Subspace z = boundaries_in(block, cycles_in(block, n, p, r), n, p, r);
        for (std::size_t i = 0; i < z.dim(); ++i) {
            tags.push_back({block.cell(n).monomials[z.pivots()[i]], b, elements.size()});
            elements.push_back(complex_.assemble(b, n, z.basis().row(i)));
        }
    }
    sort_by_pivot(tags, complex_.order());
    std::vector<Element> out;
    for (const auto& t : tags)
        out.push_back(std::move(elements[t.index]));
    return out;
}

std::optional<Element> SpectralSequence::lift(int r, const Element& a) const {
    const auto n = a.degree();
    if (!n)
        throw std::invalid_argument("lift: element must be nonzero and homogeneous");
    const int p = *filtration_level(model(), a);
    Element out = a;
    for (const auto& [b, v] : complex_.split(a, *n)) {
        const auto& block = complex_.blocks()[b];
        const auto& cell = block.cell(*n);
        const std::size_t lo = cell.start(p + 1);
        const std::size_t cut = block.cell(*n + 1).start(p + r);
        if (cut == 0)
            continue;
        const Matrix d = block.differential(*n);
        const Vector da = multiply(v, d);
        Vector rhs(cut);
        for (std::size_t j = 0; j < cut; ++j)
            rhs[j] = -da[j];
        // f d = -(a d) on the columns below F^{p+r}, with f supported on F^{p+1}.
        const auto f = solve(d.submatrix(lo, cell.size(), 0, cut).transpose(), rhs);
        if (!f)
            return std::nullopt;
        Vector full(cell.size());
        std::copy(f->begin(), f->end(), full.begin() + static_cast<std::ptrdiff_t>(lo));
        out += complex_.assemble(b, *n, full);
    }
    return out;
}

Vector SpectralSequence::class_coordinates(int r, int p, int q, const Element& z) {
    const SpectralPage& pg = page(r);
    const PageSlot& slot = pg.slot(p, q);
    Vector out(slot.dimension);
    if (z.is_zero())
        return out;
    const int n = p + q;
    for (const auto& [b, v] : complex_.split(z, n)) {
        const auto& block = complex_.blocks()[b];
        const Subspace cyc = cycles_in(block, n, p, r);
        if (!cyc.contains(v))
            throw std::invalid_argument("class_coordinates: element is not in Z_r^{p,q}");
        if (!block.cell(n).has_level(p))
            continue;
        const Quotient e(cyc, boundaries_in(block, cyc, n, p, r));
        const Vector local = e.coordinates(v);
        for (std::size_t g = 0; g < slot.dimension; ++g)
            if (slot.origins[g].block == b)
                out[g] = local[slot.origins[g].index];
    }
    return out;
}

Vector SpectralSequence::d_r_on_class(int r, int p, int q, std::span<const Rational> coords) {
    const PageSlot& slot = page(r).slot(p, q);
    if (coords.size() != slot.dimension)
        throw std::out_of_range("d_r_on_class: coordinate vector does not match the slot dimension");
    return slot.differential.apply(coords);
}

Vector SpectralSequence::d_r_on_cycle(int r, int p, int q, const Element& z) {
    const PageSlot& slot = page(r).slot(p, q);
    class_coordinates(r, p, q, z); // rejects z outside Z_r^{p,q}
    const auto& pg = page(r);
    if (!pg.slots.contains({slot.target.p, slot.target.q}))
        return {};
    return class_coordinates(r, slot.target.p, slot.target.q, differential(model(), z));
}

DegenerationResult SpectralSequence::degeneration() {
    DegenerationResult out;
    out.s = fiber_count();
    out.rank = cohomological_rank(model());
    for (int r = 0; r <= out.s + 2; ++r) {
        const SpectralPage& pg = page(r);
        if (r >= 2 && !pg.differential_is_zero())
            out.last_nonzero_dr = r;
    }
    out.page = out.last_nonzero_dr ? std::max(2, *out.last_nonzero_dr + 1) : 2;
    out.bound_kplus2_ok = out.page <= out.rank + 2;
    out.bound_splus2_ok = out.page <= out.s + 2;
    return out;
}

SpectralPage compute_page(const ModelSpec& model, int r) { return SpectralSequence(model).page(r); }

Vector d_r_on_class(const ModelSpec& model, int r, int p, int q, std::span<const Rational> coords) {
    return SpectralSequence(model).d_r_on_class(r, p, q, coords);
}

DegenerationResult degeneration_page(const ModelSpec& model) { return SpectralSequence(model).degeneration(); }

bool e2_structure_check(const ModelSpec& model) {
    SpectralSequence ss(model);
    const auto basic = basic_betti_numbers(model);
    const SpectralPage& e2 = ss.page(2);
    for (int p = 0; p <= e2.max_p; ++p)
        for (int q = 0; q <= e2.max_q; ++q)
            if (e2.dimension(p, q) != basic[static_cast<std::size_t>(p)] * binomial(e2.max_q, q))
                return false;
    return true;
}

} // namespace ssq
