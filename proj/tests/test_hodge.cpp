#include "corpus.hpp"
#include "oracle.hpp"

#include "ssq/hodge.hpp"
#include "ssq/io.hpp"

#include <doctest.h>

#include <random>

using namespace ssq;

namespace {

Element random_form(std::mt19937& rng, const ModelSpec& m, int degree, bool basic = false) {
    const auto basis = degree_basis(m, degree);
    std::uniform_int_distribution<int> coeff(-3, 3);
    Element e(m.size());
    for (const auto& mono : basis) {
        if (basic && (mono.bits() & m.fiber_mask()))
            continue;
        e.add_term(mono, coeff(rng));
    }
    return e;
}

Element parse(const ModelSpec& m, const char* text) { return parse_element(m, text); }

bool in_span(const ModelSpec& m, int n, const std::vector<Element>& span, const Element& e) {
    const auto basis = degree_basis(m, n);
    std::vector<Vector> rows;
    for (const auto& b : span)
        rows.push_back(coordinates_in(basis, b));
    return Subspace::span(basis.size(), rows).contains(coordinates_in(basis, e));
}

// Star from its definition: e_I -> sign(I, I^c) e_{I^c}, signs by sorting.
Element star_oracle(const ModelSpec& m, Monomial mono) {
    oracle::Word w;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (mono.contains(i))
            w.push_back(static_cast<int>(i));
        else
            rest.push_back(i);
    for (auto i : rest)
        w.push_back(static_cast<int>(i));
    const int sign = oracle::sort_word(w);
    return Element::monomial(m.size(), Monomial::from_indices(rest), sign);
}

std::vector<ModelSpec> hodge_models() {
    std::vector<ModelSpec> out{example_family(1), example_family(2), heisenberg_factor(), circle_factor(),
                               product(heisenberg_factor(), circle_factor())};
    for (auto& m : corpus::random_models(15, 21))
        out.push_back(m);
    return out;
}

} // namespace

TEST_CASE("star examples") {
    const ModelSpec m = example_family(2);
    const Element vol = parse(m, "a1^a2^b1^s^c1^e1^e2");
    CHECK(hodge_star(m, m.unit()) == vol);
    CHECK(hodge_star(m, vol) == m.unit());
    // a1 ^ (e1 ^ a1)* = vol  with  *(e1^a1) = -*(a1^e1).
    CHECK(wedge(parse(m, "e1^a1"), hodge_star(m, parse(m, "e1^a1"))) == vol);
    CHECK(hodge_star(m, parse(m, "a1^e1")) == parse(m, "a2^b1^s^c1^e2"));
    CHECK_THROWS_AS(hodge_star(m, m.unit() + m.gen("a1")), std::invalid_argument);
    CHECK_THROWS_AS(hodge_star(m, Element::generator(3, 0)), std::invalid_argument);
}

TEST_CASE("star matches the complement oracle and squares to a sign") {
    for (const auto& m : {example_family(2), heisenberg_factor(), product(circle_factor(), example_family(1))}) {
        const std::size_t n = m.size();
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
            const Monomial mono(bits);
            const Element e = Element::monomial(n, mono);
            CHECK(hodge_star(m, e) == star_oracle(m, mono));
            const int k = mono.degree();
            const Rational sign = (k * (static_cast<int>(n) - k)) % 2 ? -1 : 1;
            CHECK(hodge_star(m, hodge_star(m, e)) == sign * e);
        }
    }
}

TEST_CASE("a ^ *b = <a, b> vol") {
    std::mt19937 rng(31);
    const ModelSpec m = example_family(2);
    const Element vol = Element::monomial(m.size(), m.orientation());
    for (int trial = 0; trial < 40; ++trial) {
        const int k = std::uniform_int_distribution<int>(0, 7)(rng);
        const Element a = random_form(rng, m, k), b = random_form(rng, m, k);
        CHECK(wedge(a, hodge_star(m, b)) == inner_product(a, b) * vol);
    }
}

TEST_CASE("codifferential examples") {
    const ModelSpec m = example_family(2);
    CHECK(codifferential(m, m.unit()).is_zero());
    CHECK(codifferential(m, m.gen("a1")).is_zero());
    // <delta(s^a1), e1> = <s^a1, d e1> = 1.
    CHECK(inner_product(codifferential(m, parse(m, "s^a1")), m.gen("e1")) == 1);
    CHECK(codifferential(m, parse(m, "s^a1")) == m.gen("e1"));
    CHECK(codifferential(m, parse(m, "b1^s")) == m.gen("c1"));
}

TEST_CASE("d and the codifferential are adjoint") {
    std::mt19937 rng(32);
    for (const auto& m : hodge_models()) {
        const int n = static_cast<int>(m.size());
        for (int k = 0; k < n; ++k) {
            const Element a = random_form(rng, m, k), b = random_form(rng, m, k + 1);
            CHECK(inner_product(differential(m, a), b) == inner_product(a, codifferential(m, b)));
            CHECK(codifferential(m, codifferential(m, b)).is_zero());
        }
    }
}

TEST_CASE("laplacian examples") {
    const ModelSpec m = example_family(2);
    CHECK(laplacian(m, m.unit()).is_zero());
    CHECK(laplacian(m, m.gen("a1")).is_zero());
    CHECK_FALSE(laplacian(m, m.gen("e1")).is_zero());
    CHECK(laplacian(m, m.gen("e1")) == m.gen("e1"));
    CHECK_THROWS_AS(laplacian(m, m.gen("e1") + m.unit()), std::invalid_argument);
}

TEST_CASE("harmonic forms of the s=2 example") {
    const ModelSpec m = example_family(2);
    const auto betti = betti_numbers(m);
    for (int n = 0; n <= 7; ++n) {
        const auto h = harmonic_basis(m, n);
        CHECK(h.dimension == betti[static_cast<std::size_t>(n)]);
        for (const auto& e : h.basis) {
            CHECK(laplacian(m, e).is_zero());
            CHECK(differential(m, e).is_zero());
            CHECK(codifferential(m, e).is_zero());
        }
    }
    const auto h2 = harmonic_basis(m, 2);
    CHECK(in_span(m, 2, h2.basis, parse(m, "a1^e2 + a2^e1")));
    CHECK(in_span(m, 2, h2.basis, parse(m, "-a1^c1 + b1^e1")));
    const auto h3 = harmonic_basis(m, 3);
    CHECK(in_span(m, 3, h3.basis, parse(m, "a2^s^c1 - e2^b1^s")));
    CHECK(in_span(m, 3, h3.basis, parse(m, "e1^e2^s")));
    CHECK_FALSE(in_span(m, 3, h3.basis, parse(m, "e1^e2^b1")));
    const auto h7 = harmonic_basis(m, 7);
    REQUIRE(h7.dimension == 1);
    CHECK(in_span(m, 7, h7.basis, Element::monomial(m.size(), m.orientation())));
}

TEST_CASE("harmonic dimensions equal Betti numbers and ker d meet ker delta") {
    for (const auto& m : hodge_models()) {
        const auto betti = oracle::betti(m);
        for (int n = 0; n <= static_cast<int>(m.size()); ++n) {
            const auto h = harmonic_basis(m, n);
            CHECK(h.dimension == betti[static_cast<std::size_t>(n)]);
            // dim(ker d ^ ker delta) from the stacked matrix [d | delta].
            const auto basis = degree_basis(m, n);
            const auto up = degree_basis(m, n + 1);
            const auto down = n > 0 ? degree_basis(m, n - 1) : std::vector<Monomial>{};
            oracle::Dense stacked;
            for (const auto& mono : basis) {
                const Element e = Element::monomial(m.size(), mono);
                auto row = coordinates_in(up, differential(m, e));
                const auto delta = coordinates_in(down, codifferential(m, e));
                row.insert(row.end(), delta.begin(), delta.end());
                stacked.push_back(std::move(row));
            }
            CHECK(basis.size() - oracle::rank(stacked) == h.dimension);
            // Hodge decomposition: dim = b_n + rank d_{n-1} + rank d_n.
            const auto gens = oracle::all_generators(m);
            const std::size_t rank_in = n > 0 ? oracle::rank(oracle::differential_matrix(m, gens, n - 1)) : 0;
            const std::size_t rank_out = oracle::rank(oracle::differential_matrix(m, gens, n));
            CHECK(basis.size() == h.dimension + rank_in + rank_out);
        }
    }
}

TEST_CASE("star maps harmonic forms to harmonic forms") {
    for (const auto& m : {example_family(2), heisenberg_factor()}) {
        const int n = static_cast<int>(m.size());
        for (int k = 0; k <= n; ++k) {
            const auto dual = harmonic_basis(m, n - k);
            for (const auto& h : harmonic_basis(m, k).basis)
                CHECK(in_span(m, n - k, dual.basis, hodge_star(m, h)));
        }
    }
}

TEST_CASE("basic Hodge theory of the s=2 example") {
    const ModelSpec m = example_family(2);
    CHECK(basic_star(m, m.unit()) == parse(m, "a1^a2^b1^s^c1"));
    CHECK_THROWS_AS(basic_star(m, m.gen("e1")), std::invalid_argument);
    CHECK_THROWS_AS(basic_laplacian(m, m.gen("e1")), std::invalid_argument);
    CHECK_THROWS_AS(basic_star(m, m.gen("a1") + m.unit()), std::invalid_argument);

    const auto basic_betti = basic_betti_numbers(m);
    for (int n = 0; n <= 5; ++n) {
        const auto h = basic_harmonic_basis(m, n);
        CHECK(h.dimension == basic_betti[static_cast<std::size_t>(n)]);
        for (const auto& e : h.basis) {
            CHECK(basic_laplacian(m, e).is_zero());
            CHECK(e.filter([&](Monomial x) { return x.bits() & m.fiber_mask(); }).is_zero());
        }
    }
    const auto h2 = basic_harmonic_basis(m, 2);
    CHECK(h2.dimension == 7);
    for (auto form : {"a1^b1", "a2^b1", "a1^a2", "c1^s", "c1^b1"})
        CHECK(in_span(m, 2, h2.basis, parse(m, form)));

    const ModelSpec h = heisenberg_factor();
    for (int n = 0; n <= 2; ++n)
        CHECK(basic_harmonic_basis(h, n).dimension == std::vector<std::size_t>{1, 2, 1}[static_cast<std::size_t>(n)]);
}

TEST_CASE("basic codifferential is adjoint to d on basic forms") {
    std::mt19937 rng(33);
    for (const auto& m : hodge_models()) {
        const int n = m.base_count();
        for (int k = 0; k < n; ++k) {
            const Element a = random_form(rng, m, k, true), b = random_form(rng, m, k + 1, true);
            CHECK(inner_product(differential(m, a), b) == inner_product(a, basic_codifferential(m, b)));
        }
    }
}

TEST_CASE("harmonic reports") {
    const ModelSpec m = example_family(2);
    const auto total = harmonic_report(m, HarmonicFlavor::total);
    CHECK(total.degrees.size() == 8);
    CHECK(std::all_of(total.betti_crosscheck.begin(), total.betti_crosscheck.end(), [](bool b) { return b; }));
    const auto basic = harmonic_report(m, HarmonicFlavor::basic);
    CHECK(basic.degrees.size() == 6);
    CHECK(basic.degrees[2].dimension == 7);
    CHECK(std::all_of(basic.betti_crosscheck.begin(), basic.betti_crosscheck.end(), [](bool b) { return b; }));
}

TEST_CASE("star splitting on the s=2 example") {
    const ModelSpec m = example_family(2);
    const auto e1 = m.require_index("e1"), e2 = m.require_index("e2");
    const std::vector<std::vector<std::size_t>> sets{{}, {e1}, {e2}, {e1, e2}, {e2, e1}};
    for (const auto& set : sets)
        for (std::uint64_t bits = 0; bits < 32; ++bits)
            CHECK(star_splitting_check(m, set, Element::monomial(m.size(), Monomial(bits))));
    std::mt19937 rng(34);
    for (int r = 0; r <= 5; ++r)
        CHECK(star_splitting_check(m, {e2}, random_form(rng, m, r, true)));

    CHECK_THROWS_AS(star_splitting_check(m, {e1}, m.gen("e2")), std::invalid_argument);
    CHECK_THROWS_AS(star_splitting_check(m, {e1, e1}, m.unit()), std::invalid_argument);
    CHECK_THROWS_AS(star_splitting_check(m, {0}, m.unit()), std::invalid_argument);
    CHECK_THROWS_AS(star_splitting_check(m, {e1}, m.unit() + m.gen("a1")), std::invalid_argument);

    const ModelSpec fiber_first = product(circle_factor(), heisenberg_factor());
    CHECK_THROWS_AS(star_splitting_check(fiber_first, {0}, fiber_first.unit()), std::invalid_argument);
}

TEST_CASE("star splitting holds exactly when base and fiber counts are not both odd") {
    // One base generator a and one fiber e: *e = -a while e_J ^ *_b 1 = a.
    const ModelSpec odd("odd", {{"a", GeneratorKind::base}, {"e", GeneratorKind::fiber}});
    CHECK_FALSE(star_splitting_check(odd, {1}, odd.unit()));

    for (const auto& m : corpus::random_models(30, 35)) {
        const bool even = (m.base_count() * m.fiber_count()) % 2 == 0;
        const auto fibers = m.fiber_indices();
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m.base_count()); ++bits) {
            const Element a = Element::monomial(m.size(), Monomial(bits));
            for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << fibers.size()); ++sub) {
                std::vector<std::size_t> set;
                for (std::size_t i = 0; i < fibers.size(); ++i)
                    if (sub >> i & 1)
                        set.push_back(fibers[i]);
                CHECK(star_splitting_check(m, set, a) == even);
                std::reverse(set.begin(), set.end());
                CHECK(star_splitting_check(m, set, a) == even);
            }
        }
    }
}

TEST_CASE("orientability and basic Poincare duality") {
    CHECK(orientability_check(example_family(2)));
    CHECK(orientability_check(heisenberg_factor()));
    CHECK(orientability_check(circle_factor()));

    // dt = a^t: the top form a^b^t = d(b^t) is exact.
    ModelSpec skew("skew", {{"a", GeneratorKind::base}, {"b", GeneratorKind::base}, {"t", GeneratorKind::base}});
    skew.set_differential("t", wedge(skew.gen("a"), skew.gen("t")));
    REQUIRE(validate(skew).ok());
    CHECK_FALSE(orientability_check(skew));

    std::size_t orientable = 0;
    for (const auto& m : corpus::random_models(40, 36)) {
        if (!orientability_check(m))
            continue;
        ++orientable;
        const auto b = basic_betti_numbers(m);
        for (std::size_t k = 0; k < b.size(); ++k)
            CHECK(b[k] == b[b.size() - 1 - k]);
    }
    CHECK(orientable > 0);
}
