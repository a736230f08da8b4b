#pragma once

// Text formats: differential expressions, model files and page tables.
//
// Expression grammar (whitespace between tokens is ignored):
//
//   expr  := [sign] term (sign term)*
//   sign  := '+' | '-'
//   term  := coeff ['*' word] | word
//   word  := gen ('^' gen)*
//   coeff := int | int '/' int
//   gen   := [A-Za-z_][A-Za-z0-9_.]*
//
// A bare coefficient is a constant, so "0" is the zero expression.
//
// Model files are line oriented; '#' starts a comment:
//
//   name = s2
//   description = free text up to the end of the line
//   base = a1 a2 b s c
//   fiber = e1 e2
//   [differential]
//   c = b^s
//   e1 = s^a1
//
// `base` and `fiber` may repeat; each line appends generators in order, and
// the file order is the declaration order. Differentials that are omitted
// are zero. Keys may not repeat except `base` and `fiber`.

#include "ssq/spectral.hpp"

#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ssq {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& detail() const { return detail_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

/// Any expression over the model's generators; line 1, columns 1-based.
Element parse_element(const ModelSpec& model, std::string_view text);
/// An expression that must be zero or of degree 2.
Element parse_expression(const ModelSpec& model, std::string_view text);

/// Parses a model file without checking the differential's structure.
ModelSpec parse_model_unchecked(std::string_view text);
/// Parses and validates; throws ParseError or ValidationError.
ModelSpec parse_model(std::string_view text);
/// Reads and parses a file; throws std::runtime_error if it cannot be read.
ModelSpec load_model(const std::string& path, bool validate = true);

std::string format_element(const ModelSpec& model, const Element& a);
std::string serialize_model(const ModelSpec& model);

enum class TableFormat { md, csv, json };

std::string emit_page_table(const ModelSpec& model, const SpectralPage& page, TableFormat format);
/// Several pages in one document: md sections, one csv table, or a json array.
std::string emit_pages(const ModelSpec& model, const std::vector<const SpectralPage*>& pages, TableFormat format);

} // namespace ssq
