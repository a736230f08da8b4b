#include "ssq/graded_complex.hpp"

#include "ssq/differential.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ssq {

bool GradedOrder::operator()(Monomial a, Monomial b) const {
    const int pa = std::popcount(a.bits() & base_mask);
    const int pb = std::popcount(b.bits() & base_mask);
    if (pa != pb)
        return pa < pb;
    return lex_less(a, b);
}

std::vector<Monomial> degree_basis(const ModelSpec& model, int n, std::uint64_t support_mask) {
    std::vector<Monomial> out;
    const auto support = Monomial(support_mask).indices();
    if (n < 0 || n > static_cast<int>(support.size()))
        return out;
    // Enumerate n-subsets of the support in lexicographic order.
    std::vector<std::size_t> pick(static_cast<std::size_t>(n));
    std::iota(pick.begin(), pick.end(), 0);
    const std::size_t k = support.size();
    while (true) {
        std::uint64_t bits = 0;
        for (auto i : pick)
            bits |= std::uint64_t{1} << support[i];
        out.emplace_back(bits);
        int i = n - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == k - static_cast<std::size_t>(n - i))
            --i;
        if (i < 0)
            break;
        ++pick[static_cast<std::size_t>(i)];
        for (auto j = static_cast<std::size_t>(i) + 1; j < pick.size(); ++j)
            pick[j] = pick[j - 1] + 1;
    }
    std::stable_sort(out.begin(), out.end(), GradedOrder{model.base_mask()});
    return out;
}

std::vector<Monomial> degree_basis(const ModelSpec& model, int n) {
    return degree_basis(model, n, model.orientation().bits());
}

Vector coordinates_in(const std::vector<Monomial>& basis, const Element& a) {
    std::unordered_map<std::uint64_t, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i)
        index.emplace(basis[i].bits(), i);
    Vector v(basis.size());
    for (const auto& [m, c] : a.terms()) {
        auto it = index.find(m.bits());
        if (it == index.end())
            throw std::invalid_argument("coordinates_in: element has a term outside the basis");
        v[it->second] = c;
    }
    return v;
}

Element element_from(std::size_t arity, const std::vector<Monomial>& basis, std::span<const Rational> v) {
    Element e(arity);
    for (std::size_t i = 0; i < v.size(); ++i)
        e.add_term(basis[i], v[i]);
    return e;
}

std::size_t GradedComplex::Cell::start(int p) const {
    if (p <= 0 || monomials.empty())
        return 0;
    if (static_cast<std::size_t>(p) >= starts.size())
        return monomials.size();
    return starts[static_cast<std::size_t>(p)];
}

const GradedComplex::Cell& GradedComplex::Block::cell(int n) const {
    static const Cell empty;
    const int i = n - first_degree;
    if (i < 0 || i >= static_cast<int>(cells.size()))
        return empty;
    return cells[static_cast<std::size_t>(i)];
}

Matrix GradedComplex::Block::differential(int n) const {
    const int i = n - first_degree;
    if (i >= 0 && i < static_cast<int>(differentials.size()))
        return differentials[static_cast<std::size_t>(i)];
    return Matrix(cell(n).size(), cell(n + 1).size());
}

namespace {

using WeightKey = std::vector<std::int64_t>;

// Integer weight vectors, one per generator of the support.
std::vector<WeightKey> generator_weights(const ModelSpec& model, const std::vector<std::size_t>& support) {
    const std::size_t n = model.size();
    std::vector<Vector> relations;
    for (auto g : support)
        for (const auto& [t, c] : model.differential_of(g).terms()) {
            Vector r(n);
            r[g] += 1;
            for (auto i : t.indices())
                r[i] -= 1;
            relations.push_back(std::move(r));
        }
    const Subspace rel = Subspace::span(n, relations);
    std::vector<bool> pivot(n, false);
    for (auto c : rel.pivots())
        pivot[c] = true;

    std::vector<Vector> reduced;
    mpz_class scale = 1;
    for (auto g : support) {
        Vector e(n);
        e[g] = 1;
        reduced.push_back(rel.reduce(e));
        for (const auto& x : reduced.back())
            scale = lcm(scale, x.get_den());
    }
    std::vector<WeightKey> out;
    for (const auto& r : reduced) {
        WeightKey key;
        for (std::size_t j = 0; j < n; ++j) {
            if (pivot[j])
                continue;
            mpq_class scaled = r[j] * scale;
            const mpz_class& z = scaled.get_num();
            if (!z.fits_slong_p() || abs(z) > (mpz_class(1) << 40))
                throw std::overflow_error("GradedComplex: weight out of range");
            key.push_back(z.get_si());
        }
        out.push_back(std::move(key));
    }
    return out;
}

} // namespace

GradedComplex::GradedComplex(const ModelSpec& model, std::uint64_t support_mask)
    : model_(model), support_(support_mask), order_{model.base_mask()} {
    const auto support = Monomial(support_mask).indices();
    if (static_cast<int>(support.size()) > max_support)
        throw std::length_error("GradedComplex: too many generators for exhaustive enumeration");
    for (auto g : support)
        for (const auto& [t, c] : model.differential_of(g).terms())
            if ((t.bits() & ~support_mask) != 0)
                throw std::invalid_argument("GradedComplex: support is not closed under d");

    const auto weights = generator_weights(model, support);
    const std::size_t width = weights.empty() ? 0 : weights.front().size();

    std::map<WeightKey, std::vector<Monomial>> groups;
    WeightKey current(width, 0);
    // Depth-first enumeration of all subsets of the support with a running weight.
    auto visit = [&](auto&& self, std::size_t i, std::uint64_t bits) -> void {
        if (i == support.size()) {
            groups[current].emplace_back(bits);
            return;
        }
        self(self, i + 1, bits);
        for (std::size_t j = 0; j < width; ++j)
            current[j] += weights[i][j];
        self(self, i + 1, bits | (std::uint64_t{1} << support[i]));
        for (std::size_t j = 0; j < width; ++j)
            current[j] -= weights[i][j];
    };
    visit(visit, 0, 0);

    const int max_p = model.base_count();
    blocks_.reserve(groups.size());
    for (auto& [key, monomials] : groups) {
        Block block;
        int lo = 64, hi = -1;
        for (auto m : monomials) {
            lo = std::min(lo, m.degree());
            hi = std::max(hi, m.degree());
        }
        block.first_degree = lo;
        block.cells.resize(static_cast<std::size_t>(hi - lo + 1));
        for (auto m : monomials)
            block.cells[static_cast<std::size_t>(m.degree() - lo)].monomials.push_back(m);
        const auto id = static_cast<std::uint32_t>(blocks_.size());
        for (std::size_t i = 0; i < block.cells.size(); ++i) {
            Cell& cell = block.cells[i];
            std::sort(cell.monomials.begin(), cell.monomials.end(), order_);
            cell.starts.assign(static_cast<std::size_t>(max_p) + 2, cell.size());
            for (std::size_t k = cell.size(); k-- > 0;) {
                const int p = std::popcount(cell.monomials[k].bits() & model.base_mask());
                for (int q = 0; q <= p; ++q)
                    cell.starts[static_cast<std::size_t>(q)] = k;
            }
            for (std::size_t k = 0; k < cell.size(); ++k)
                locations_.emplace(cell.monomials[k].bits(), Location{id, static_cast<std::uint32_t>(k)});
        }
        blocks_.push_back(std::move(block));
    }

    for (std::uint32_t id = 0; id < blocks_.size(); ++id) {
        Block& block = blocks_[id];
        for (std::size_t i = 0; i + 1 < block.cells.size(); ++i) {
            const Cell& src = block.cells[i];
            const Cell& dst = block.cells[i + 1];
            Matrix d(src.size(), dst.size());
            for (std::size_t k = 0; k < src.size(); ++k) {
                const Element dm = ssq::differential(model, src.monomials[k]);
                for (const auto& [t, c] : dm.terms()) {
                    const Location loc = locate(t);
                    if (loc.block != id)
                        throw std::logic_error("GradedComplex: differential leaves its weight block");
                    d(k, loc.index) = c;
                }
            }
            block.differentials.push_back(std::move(d));
        }
    }
}

GradedComplex::Location GradedComplex::locate(Monomial m) const {
    auto it = locations_.find(m.bits());
    if (it == locations_.end())
        throw std::invalid_argument("GradedComplex: monomial outside the support");
    return it->second;
}

std::vector<std::pair<std::uint32_t, Vector>> GradedComplex::split(const Element& a, int n) const {
    std::map<std::uint32_t, Vector> parts;
    for (const auto& [m, c] : a.terms()) {
        if (m.degree() != n)
            throw std::invalid_argument("GradedComplex::split: element is not of the requested degree");
        const Location loc = locate(m);
        auto& v = parts[loc.block];
        if (v.empty())
            v.resize(blocks_[loc.block].cell(n).size());
        v[loc.index] = c;
    }
    return {parts.begin(), parts.end()};
}

Element GradedComplex::assemble(std::uint32_t block, int n, std::span<const Rational> v) const {
    return element_from(model_.size(), blocks_.at(block).cell(n).monomials, v);
}

} // namespace ssq
