#pragma once

// Brute-force reference implementations used only by the tests. They share
// nothing with the library beyond ModelSpec's generator table: monomials are
// sorted index lists, signs come from bubble sorting, and ranks from a plain
// elimination over mpq_class.

#include "ssq/model.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <vector>

namespace oracle {

using Word = std::vector<int>; // sorted generator indices
using Poly = std::map<Word, mpq_class>;

// Sign of sorting `w` by adjacent swaps; 0 when an index repeats.
inline int sort_word(Word& w) {
    int sign = 1;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j + 1 < w.size() - i; ++j) {
            if (w[j] == w[j + 1])
                return 0;
            if (w[j] > w[j + 1]) {
                std::swap(w[j], w[j + 1]);
                sign = -sign;
            }
        }
    for (std::size_t j = 0; j + 1 < w.size(); ++j)
        if (w[j] == w[j + 1])
            return 0;
    return sign;
}

inline void add(Poly& p, Word w, const mpq_class& c) {
    const int s = sort_word(w);
    if (s == 0 || c == 0)
        return;
    mpq_class& slot = p[w];
    slot += s * c;
    if (slot == 0)
        p.erase(w);
}

inline Poly generator_differential(const ssq::ModelSpec& m, int g) {
    Poly out;
    for (const auto& [mono, c] : m.differential_of(static_cast<std::size_t>(g)).terms()) {
        Word w;
        for (int i = 0; i < 64; ++i)
            if ((mono.bits() >> i) & 1)
                w.push_back(i);
        add(out, w, c);
    }
    return out;
}

// d(g_1 ... g_k) = sum_j (-1)^(j-1) g_1 ... d(g_j) ... g_k.
inline Poly differential(const ssq::ModelSpec& m, const Word& word) {
    Poly out;
    for (std::size_t j = 0; j < word.size(); ++j) {
        const Poly dg = generator_differential(m, word[j]);
        for (const auto& [t, c] : dg) {
            Word w(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(j));
            w.insert(w.end(), t.begin(), t.end());
            w.insert(w.end(), word.begin() + static_cast<std::ptrdiff_t>(j) + 1, word.end());
            add(out, w, (j % 2 ? -1 : 1) * c);
        }
    }
    return out;
}

inline int base_count(const ssq::ModelSpec& m, const Word& w) {
    return static_cast<int>(std::count_if(w.begin(), w.end(), [&](int i) { return !m.is_fiber(static_cast<std::size_t>(i)); }));
}

// All degree-n words on the generator subset `gens`.
inline std::vector<Word> words(const std::vector<int>& gens, int n) {
    std::vector<Word> out;
    const int k = static_cast<int>(gens.size());
    if (n < 0 || n > k)
        return out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        if (std::popcount(mask) != n)
            continue;
        Word w;
        for (int i = 0; i < k; ++i)
            if ((mask >> i) & 1)
                w.push_back(gens[static_cast<std::size_t>(i)]);
        std::sort(w.begin(), w.end());
        out.push_back(w);
    }
    return out;
}

using Dense = std::vector<std::vector<mpq_class>>;

inline std::size_t rank(Dense a) {
    std::size_t r = 0;
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0)
            ++p;
        if (p == a.size())
            continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < a.size(); ++i) {
            if (a[i][c] == 0)
                continue;
            const mpq_class f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

// Matrix of d from degree n to n + 1 over `gens`, rows restricted to words
// with at least `min_row` base factors and columns to words with fewer than
// `max_col` base factors.
inline Dense differential_matrix(const ssq::ModelSpec& m, const std::vector<int>& gens, int n, int min_row = 0,
                                 int max_col = 1 << 20) {
    std::vector<Word> rows, cols;
    for (auto& w : words(gens, n))
        if (base_count(m, w) >= min_row)
            rows.push_back(w);
    for (auto& w : words(gens, n + 1))
        if (base_count(m, w) < max_col)
            cols.push_back(w);
    std::map<Word, std::size_t> index;
    for (std::size_t j = 0; j < cols.size(); ++j)
        index[cols[j]] = j;
    Dense d(rows.size(), std::vector<mpq_class>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [t, c] : differential(m, rows[i])) {
            auto it = index.find(t);
            if (it != index.end())
                d[i][it->second] = c;
        }
    return d;
}

inline std::vector<int> all_generators(const ssq::ModelSpec& m) {
    std::vector<int> g;
    for (std::size_t i = 0; i < m.size(); ++i)
        g.push_back(static_cast<int>(i));
    return g;
}

inline std::vector<int> base_generators(const ssq::ModelSpec& m) {
    std::vector<int> g;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (!m.is_fiber(i))
            g.push_back(static_cast<int>(i));
    return g;
}

inline std::vector<std::size_t> betti(const ssq::ModelSpec& m, const std::vector<int>& gens) {
    std::vector<std::size_t> ranks;
    const int top = static_cast<int>(gens.size());
    for (int n = 0; n <= top; ++n)
        ranks.push_back(rank(differential_matrix(m, gens, n)));
    std::vector<std::size_t> out;
    for (int n = 0; n <= top; ++n)
        out.push_back(words(gens, n).size() - ranks[static_cast<std::size_t>(n)] -
                      (n > 0 ? ranks[static_cast<std::size_t>(n - 1)] : 0));
    return out;
}

inline std::vector<std::size_t> betti(const ssq::ModelSpec& m) { return betti(m, all_generators(m)); }
inline std::vector<std::size_t> basic_betti(const ssq::ModelSpec& m) { return betti(m, base_generators(m)); }

// Page dimensions from ranks of filtered blocks of d alone:
//   z_n(p, r)  = dim F^p_n - rank d(F^p_n -> below F^{p+r})
//   dim E_r^{p,q} = z(p, r) - z(p+1, r-1) - dim dZ_{r-1}^{p-r+1} + dim dZ_r^{p-r+1}
// with dim dZ_r^{p'} (degree n-1) = z_{n-1}(p', r) - (dim F^{p'} - rank d on F^{p'}).
class PageDimensions {
public:
    explicit PageDimensions(const ssq::ModelSpec& m) : m_(m), gens_(all_generators(m)) {}

    std::size_t dimension(int r, int p, int q) {
        const int n = p + q;
        const long e = static_cast<long>(z(n, p, r)) - static_cast<long>(z(n, p + 1, r - 1)) -
                       image(n - 1, p - r + 1, r - 1) + image(n - 1, p - r + 1, r);
        return static_cast<std::size_t>(e);
    }

private:
    std::size_t filtered(int n, int p) {
        std::size_t count = 0;
        for (auto& w : words(gens_, n))
            if (base_count(m_, w) >= p)
                ++count;
        return count;
    }

    std::size_t rank_of(int n, int p, int limit) {
        const auto key = std::tuple{n, std::max(p, 0), limit};
        auto it = ranks_.find(key);
        if (it != ranks_.end())
            return it->second;
        const std::size_t r = rank(differential_matrix(m_, gens_, n, std::max(p, 0), limit));
        ranks_.emplace(key, r);
        return r;
    }

    // F^p for p < 0 is F^0, but the target level p + r keeps the original p.
    std::size_t z(int n, int p, int r) {
        if (n < 0)
            return 0;
        const int rows = std::max(p, 0);
        return filtered(n, rows) - rank_of(n, rows, std::max(p + r, 0));
    }

    long image(int n, int p, int r) {
        if (n < 0)
            return 0;
        const int rows = std::max(p, 0);
        const std::size_t zinf = filtered(n, rows) - rank_of(n, rows, 1 << 20);
        return static_cast<long>(z(n, p, r)) - static_cast<long>(zinf);
    }

    const ssq::ModelSpec& m_;
    std::vector<int> gens_;
    std::map<std::tuple<int, int, int>, std::size_t> ranks_;
};

} // namespace oracle
