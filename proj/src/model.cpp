#include "ssq/model.hpp"

#include "ssq/differential.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace ssq {

ModelSpec::ModelSpec(std::string name, std::vector<Generator> generators)
    : name_(std::move(name)), generators_(std::move(generators)) {
    if (generators_.size() > max_generators)
        throw std::invalid_argument("ModelSpec: more than 64 generators");
    differentials_.assign(generators_.size(), Element(generators_.size()));
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        (generators_[i].kind == GeneratorKind::base ? base_mask_ : fiber_mask_) |= bit;
    }
}

std::optional<std::size_t> ModelSpec::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < generators_.size(); ++i)
        if (generators_[i].name == name)
            return i;
    return std::nullopt;
}

std::size_t ModelSpec::require_index(std::string_view name) const {
    auto i = index_of(name);
    if (!i)
        throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
    return *i;
}

void ModelSpec::set_differential(std::size_t index, Element value) {
    if (index >= generators_.size())
        throw std::out_of_range("set_differential: generator index out of range");
    if (value.arity() != generators_.size())
        throw std::invalid_argument("set_differential: element is not over the model's generators");
    differentials_[index] = std::move(value);
}

void ModelSpec::set_differential(std::string_view name, Element value) {
    set_differential(require_index(name), std::move(value));
}

std::vector<std::size_t> ModelSpec::base_indices() const { return Monomial(base_mask_).indices(); }

std::vector<std::size_t> ModelSpec::fiber_indices() const { return Monomial(fiber_mask_).indices(); }

Monomial ModelSpec::orientation() const {
    const std::size_t n = generators_.size();
    return Monomial(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

bool ModelSpec::base_before_fiber() const {
    // No fiber generator below the highest base generator.
    if (base_mask_ == 0 || fiber_mask_ == 0)
        return true;
    return std::countr_zero(fiber_mask_) > 63 - std::countl_zero(base_mask_);
}

std::string ValidationReport::summary() const {
    std::ostringstream out;
    for (const auto& v : violations)
        out << v.generator << ": " << v.message << '\n';
    return out.str();
}

ValidationError::ValidationError(ValidationReport report)
    : std::runtime_error("invalid model:\n" + report.summary()), report_(std::move(report)) {}

bool is_identifier(std::string_view name) {
    if (name.empty())
        return false;
    auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto tail = [&](char c) { return head(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '.'; };
    return head(name.front()) && std::all_of(name.begin() + 1, name.end(), tail);
}

ValidationReport validate(const ModelSpec& model) {
    ValidationReport report;
    std::set<std::string> seen;
    for (const auto& g : model.generators()) {
        if (!is_identifier(g.name))
            report.violations.push_back({g.name, "malformed generator name"});
        if (!seen.insert(g.name).second)
            report.violations.push_back({g.name, "duplicate generator name"});
    }
    for (std::size_t i = 0; i < model.size(); ++i) {
        const auto& g = model.generator(i);
        const Element& dg = model.differential_of(i);
        const bool degree_two = dg.is_zero() || dg.degree() == 2;
        const bool basic = std::all_of(dg.terms().begin(), dg.terms().end(),
                                       [&](const auto& t) { return (t.first.bits() & model.fiber_mask()) == 0; });
        if (!degree_two)
            report.violations.push_back({g.name, "differential is not of degree 2"});
        if (!basic)
            report.violations.push_back(
                {g.name, g.kind == GeneratorKind::fiber ? "fiber differential not basic" : "base differential not basic"});
        if (!differential(model, dg).is_zero())
            report.violations.push_back({g.name, "d^2 != 0 at " + g.name});
    }
    return report;
}

void require_valid(const ModelSpec& model) {
    auto report = validate(model);
    if (!report.ok())
        throw ValidationError(std::move(report));
}

ModelSpec example_family(int s) {
    if (s < 1)
        throw std::invalid_argument("example_family: s must be positive");
    std::vector<Generator> gens;
    for (int i = 1; i <= s; ++i)
        gens.push_back({"a" + std::to_string(i), GeneratorKind::base});
    for (int i = 1; i < s; ++i)
        gens.push_back({"b" + std::to_string(i), GeneratorKind::base});
    gens.push_back({"s", GeneratorKind::base});
    for (int i = 1; i < s; ++i)
        gens.push_back({"c" + std::to_string(i), GeneratorKind::base});
    for (int i = 1; i <= s; ++i)
        gens.push_back({"e" + std::to_string(i), GeneratorKind::fiber});

    ModelSpec m("family" + std::to_string(s), std::move(gens));
    m.set_description("torus bundle example with d e_i = s^a_i, d c_i = b_i^s");
    for (int i = 1; i <= s; ++i) {
        const auto n = std::to_string(i);
        m.set_differential("e" + n, wedge(m.gen("s"), m.gen("a" + n)));
        if (i < s)
            m.set_differential("c" + n, wedge(m.gen("b" + n), m.gen("s")));
    }
    return m;
}

ModelSpec circle_factor() {
    ModelSpec m("circle", {{"e", GeneratorKind::fiber}});
    m.set_description("circle acting on itself");
    return m;
}

ModelSpec heisenberg_factor() {
    ModelSpec m("heisenberg", {{"a", GeneratorKind::base}, {"t", GeneratorKind::base}, {"e", GeneratorKind::fiber}});
    m.set_description("circle bundle over the 2-torus with curvature t^a");
    m.set_differential("e", wedge(m.gen("t"), m.gen("a")));
    return m;
}

ModelSpec product(std::span<const ModelSpec> factors) {
    std::vector<Generator> gens;
    std::vector<std::size_t> offsets;
    std::string name;
    for (std::size_t f = 0; f < factors.size(); ++f) {
        require_valid(factors[f]);
        offsets.push_back(gens.size());
        for (const auto& g : factors[f].generators())
            gens.push_back({"f" + std::to_string(f) + "." + g.name, g.kind});
        name += (f ? "*" : "") + factors[f].name();
    }
    ModelSpec m(name, std::move(gens));
    for (std::size_t f = 0; f < factors.size(); ++f) {
        const auto& src = factors[f];
        for (std::size_t i = 0; i < src.size(); ++i) {
            Element d(m.size());
            for (const auto& [mono, c] : src.differential_of(i).terms())
                d.add_term(Monomial(mono.bits() << offsets[f]), c);
            m.set_differential(offsets[f] + i, std::move(d));
        }
    }
    return m;
}

ModelSpec product(const ModelSpec& a, const ModelSpec& b) {
    const ModelSpec both[] = {a, b};
    return product(std::span<const ModelSpec>(both));
}

} // namespace ssq
