#pragma once

// Finite models of a locally free isometric torus-type action: an exterior
// algebra on base generators (basic 1-forms) and fiber generators (the duals of
// the fundamental vector fields), with the differential fixed on generators.

#include "ssq/exterior.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ssq {

enum class GeneratorKind { base, fiber };

struct Generator {
    std::string name;
    GeneratorKind kind = GeneratorKind::base;

    friend bool operator==(const Generator&, const Generator&) = default;
};

class ModelSpec {
public:
    ModelSpec() = default;
    /// Generators in declaration order; every differential starts at zero.
    ModelSpec(std::string name, std::vector<Generator> generators);

    const std::string& name() const { return name_; }
    const std::string& description() const { return description_; }
    void set_description(std::string text) { description_ = std::move(text); }

    std::size_t size() const { return generators_.size(); }
    const std::vector<Generator>& generators() const { return generators_; }
    const Generator& generator(std::size_t index) const { return generators_.at(index); }
    bool is_fiber(std::size_t index) const { return generator(index).kind == GeneratorKind::fiber; }

    std::optional<std::size_t> index_of(std::string_view name) const;
    /// Throws std::invalid_argument for an unknown name.
    std::size_t require_index(std::string_view name) const;

    const Element& differential_of(std::size_t index) const { return differentials_.at(index); }
    void set_differential(std::size_t index, Element value);
    void set_differential(std::string_view name, Element value);

    std::uint64_t base_mask() const { return base_mask_; }
    std::uint64_t fiber_mask() const { return fiber_mask_; }
    std::vector<std::size_t> base_indices() const;
    std::vector<std::size_t> fiber_indices() const;
    int base_count() const { return std::popcount(base_mask_); }
    /// Dimension s of the acting group.
    int fiber_count() const { return std::popcount(fiber_mask_); }

    /// The full monomial in declaration order.
    Monomial orientation() const;
    /// True when every base generator is declared before every fiber generator.
    bool base_before_fiber() const;

    Element zero() const { return Element(size()); }
    Element unit() const { return Element::unit(size()); }
    Element gen(std::string_view name) const { return Element::generator(size(), require_index(name)); }

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;

private:
    std::string name_;
    std::string description_;
    std::vector<Generator> generators_;
    std::vector<Element> differentials_;
    std::uint64_t base_mask_ = 0;
    std::uint64_t fiber_mask_ = 0;
};

struct Violation {
    std::string generator;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    /// One line per violation, "<generator>: <message>".
    std::string summary() const;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(ValidationReport report);
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

/// Checks the abelian isometric action shape:
///  (a) every generator differential is a degree-2 element of the base subalgebra,
///  (b) d(d(g)) = 0 for every generator g,
///  (c) generator names are unique identifiers.
ValidationReport validate(const ModelSpec& model);
/// Throws ValidationError when validate() reports a violation.
void require_valid(const ModelSpec& model);

bool is_identifier(std::string_view name);

/// Base a_1..a_s, b_1..b_{s-1}, s, c_1..c_{s-1}; fiber e_1..e_s with
/// d e_i = s ^ a_i and d c_i = b_i ^ s. Throws std::invalid_argument for s = 0.
ModelSpec example_family(int s);
/// A circle acting on itself: one closed fiber generator.
ModelSpec circle_factor();
/// Circle bundle over the 2-torus with curvature t ^ a.
ModelSpec heisenberg_factor();

/// Generators of factor i are renamed "f<i>.<name>"; declaration order (and so
/// orientation) is the concatenation of the factors in order.
ModelSpec product(std::span<const ModelSpec> factors);
ModelSpec product(const ModelSpec& a, const ModelSpec& b);

} // namespace ssq
