#include "ssq/io.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ssq {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line), column_(column), detail_(message) {}

namespace {

bool ident_head(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_tail(char c) { return ident_head(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '.'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

// Recursive-descent parser for one expression; `line` and `offset` place its
// text inside a larger document for error positions.
class ExpressionParser {
public:
    ExpressionParser(const ModelSpec& model, std::string_view text, std::size_t line, std::size_t offset)
        : model_(model), text_(text), line_(line), offset_(offset) {}

    Element parse() {
        Element out = model_.zero();
        skip();
        if (at_end())
            fail("empty expression");
        bool negative = false;
        if (peek() == '+' || peek() == '-') {
            negative = peek() == '-';
            ++pos_;
        }
        while (true) {
            Element t = term();
            out += negative ? -t : t;
            skip();
            if (at_end())
                break;
            if (peek() != '+' && peek() != '-')
                fail("expected '+', '-' or end of expression");
            negative = peek() == '-';
            ++pos_;
        }
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, offset_ + pos_ + 1, message); }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    mpz_class integer() {
        const std::size_t start = pos_;
        while (!at_end() && digit(peek()))
            ++pos_;
        return mpz_class(std::string(text_.substr(start, pos_ - start)));
    }

    Element term() {
        skip();
        if (at_end())
            fail("expected a term");
        Rational coeff = 1;
        if (digit(peek())) {
            mpz_class num = integer();
            mpz_class den = 1;
            skip();
            if (!at_end() && peek() == '/') {
                ++pos_;
                skip();
                if (at_end() || !digit(peek()))
                    fail("expected a denominator");
                const std::size_t at = pos_;
                den = integer();
                if (den == 0) {
                    pos_ = at;
                    fail("zero denominator");
                }
            }
            coeff = Rational(num, den);
            coeff.canonicalize();
            skip();
            if (at_end() || peek() != '*')
                return Element::monomial(model_.size(), Monomial(), coeff);
            ++pos_;
        }
        Element word = generator();
        while (true) {
            skip();
            if (at_end() || peek() != '^')
                break;
            ++pos_;
            word = wedge(word, generator());
        }
        return coeff * word;
    }

    Element generator() {
        skip();
        if (at_end() || !ident_head(peek()))
            fail("expected a generator name");
        const std::size_t start = pos_;
        while (!at_end() && ident_tail(peek()))
            ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        const auto index = model_.index_of(name);
        if (!index) {
            pos_ = start;
            fail("unknown generator '" + std::string(name) + "'");
        }
        return Element::generator(model_.size(), *index);
    }

    const ModelSpec& model_;
    std::string_view text_;
    std::size_t line_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

Element parse_degree_two(const ModelSpec& model, std::string_view text, std::size_t line, std::size_t offset) {
    Element e = ExpressionParser(model, text, line, offset).parse();
    if (!e.is_zero() && e.degree() != 2)
        throw ParseError(line, offset + 1, "differential must be of degree 2");
    return e;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::string coefficient_text(const Rational& q) {
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string monomial_text(const ModelSpec& model, Monomial m) {
    std::string out;
    for (auto i : m.indices()) {
        if (!out.empty())
            out += '^';
        out += model.generator(i).name;
    }
    return out;
}

} // namespace

Element parse_element(const ModelSpec& model, std::string_view text) {
    return ExpressionParser(model, text, 1, 0).parse();
}

Element parse_expression(const ModelSpec& model, std::string_view text) {
    return parse_degree_two(model, text, 1, 0);
}

ModelSpec parse_model_unchecked(std::string_view text) {
    struct PendingDifferential {
        std::string name;
        std::string expression;
        std::size_t line;
        std::size_t name_column;
        std::size_t expr_column;
    };
    std::string name;
    std::optional<std::string> description;
    bool have_name = false;
    std::vector<Generator> gens;
    std::set<std::string> seen;
    std::vector<PendingDifferential> pending;
    std::set<std::string> assigned;
    bool in_differential = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        const std::string_view content = trim(line);
        if (content.empty())
            continue;
        const std::size_t indent = static_cast<std::size_t>(content.data() - line.data());

        if (content.front() == '[') {
            if (content != "[differential]")
                throw ParseError(line_no, indent + 1, "unknown section '" + std::string(content) + "'");
            if (in_differential)
                throw ParseError(line_no, indent + 1, "duplicate [differential] section");
            in_differential = true;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(line_no, indent + 1, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view raw_value = line.substr(eq + 1);
        const std::string_view value = trim(raw_value);
        const std::size_t value_column =
            eq + 2 + static_cast<std::size_t>(value.empty() ? 0 : value.data() - raw_value.data());

        if (in_differential) {
            if (!is_identifier(key))
                throw ParseError(line_no, indent + 1, "malformed generator name '" + key + "'");
            if (!assigned.insert(key).second)
                throw ParseError(line_no, indent + 1, "duplicate differential for '" + key + "'");
            pending.push_back({key, std::string(value), line_no, indent + 1, value_column});
            continue;
        }
        if (key == "name") {
            if (have_name)
                throw ParseError(line_no, indent + 1, "duplicate key 'name'");
            have_name = true;
            name = std::string(value);
        } else if (key == "description") {
            if (description)
                throw ParseError(line_no, indent + 1, "duplicate key 'description'");
            description = std::string(value);
        } else if (key == "base" || key == "fiber") {
            const auto kind = key == "base" ? GeneratorKind::base : GeneratorKind::fiber;
            std::size_t i = 0;
            while (i < value.size()) {
                if (std::isspace(static_cast<unsigned char>(value[i]))) {
                    ++i;
                    continue;
                }
                const std::size_t start = i;
                while (i < value.size() && !std::isspace(static_cast<unsigned char>(value[i])))
                    ++i;
                const std::string gen(value.substr(start, i - start));
                const std::size_t column = value_column + start;
                if (!is_identifier(gen))
                    throw ParseError(line_no, column, "malformed generator name '" + gen + "'");
                if (!seen.insert(gen).second)
                    throw ParseError(line_no, column, "duplicate generator '" + gen + "'");
                gens.push_back({gen, kind});
            }
        } else {
            throw ParseError(line_no, indent + 1, "unknown key '" + key + "'");
        }
    }
    if (!have_name)
        throw ParseError(1, 1, "missing 'name'");

    ModelSpec model(name, std::move(gens));
    if (description)
        model.set_description(*description);
    for (const auto& d : pending) {
        const auto index = model.index_of(d.name);
        if (!index)
            throw ParseError(d.line, d.name_column, "unknown generator '" + d.name + "'");
        model.set_differential(*index, parse_degree_two(model, d.expression, d.line, d.expr_column - 1));
    }
    return model;
}

ModelSpec parse_model(std::string_view text) {
    ModelSpec model = parse_model_unchecked(text);
    require_valid(model);
    return model;
}

ModelSpec load_model(const std::string& path, bool validate) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return validate ? parse_model(buffer.str()) : parse_model_unchecked(buffer.str());
}

std::string format_element(const ModelSpec& model, const Element& a) {
    if (a.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : a.terms()) {
        const bool negative = sgn(c) < 0;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        const Rational magnitude = abs(c);
        if (m.empty()) {
            out += coefficient_text(magnitude);
            continue;
        }
        if (magnitude != 1)
            out += coefficient_text(magnitude) + "*";
        out += monomial_text(model, m);
    }
    return out;
}

std::string serialize_model(const ModelSpec& model) {
    std::ostringstream out;
    out << "name = " << model.name() << '\n';
    if (!model.description().empty())
        out << "description = " << model.description() << '\n';
    // Runs of same-kind generators keep the declaration order.
    std::size_t i = 0;
    while (i < model.size()) {
        const auto kind = model.generator(i).kind;
        out << (kind == GeneratorKind::base ? "base =" : "fiber =");
        for (; i < model.size() && model.generator(i).kind == kind; ++i)
            out << ' ' << model.generator(i).name;
        out << '\n';
    }
    out << "[differential]\n";
    for (std::size_t g = 0; g < model.size(); ++g)
        if (!model.differential_of(g).is_zero())
            out << model.generator(g).name << " = " << format_element(model, model.differential_of(g)) << '\n';
    return out.str();
}

namespace {

using nlohmann::ordered_json;

ordered_json element_json(const ModelSpec& model, const Element& a) {
    ordered_json terms = ordered_json::array();
    for (const auto& [m, c] : a.terms()) {
        ordered_json names = ordered_json::array();
        for (auto i : m.indices())
            names.push_back(model.generator(i).name);
        terms.push_back({{"monomial", names}, {"coeff", coefficient_text(c)}});
    }
    return terms;
}

ordered_json page_json(const ModelSpec& model, const SpectralPage& page) {
    ordered_json j;
    j["model"] = model.name();
    j["r"] = page.r;
    j["max_p"] = page.max_p;
    j["max_q"] = page.max_q;
    j["grid"] = page.grid();
    ordered_json slots = ordered_json::array();
    for (const auto& [pq, slot] : page.slots) {
        ordered_json s;
        s["p"] = slot.p;
        s["q"] = slot.q;
        s["dimension"] = slot.dimension;
        ordered_json reps = ordered_json::array();
        for (const auto& e : slot.representatives)
            reps.push_back(element_json(model, e));
        s["representatives"] = reps;
        s["target"] = {slot.target.p, slot.target.q};
        ordered_json d = ordered_json::array();
        for (std::size_t i = 0; i < slot.differential.rows(); ++i)
            for (const auto& [col, v] : slot.differential.row(i))
                d.push_back({{"row", i}, {"col", col}, {"value", coefficient_text(v)}});
        s["differential"] = d;
        slots.push_back(std::move(s));
    }
    j["slots"] = slots;
    return j;
}

void md_table(std::ostream& out, const SpectralPage& page) {
    out << "| q\\p |";
    for (int p = 0; p <= page.max_p; ++p)
        out << ' ' << p << " |";
    out << "\n|---|";
    for (int p = 0; p <= page.max_p; ++p)
        out << "---|";
    out << '\n';
    for (int q = page.max_q; q >= 0; --q) {
        out << "| " << q << " |";
        for (auto d : page.row(q))
            out << ' ' << d << " |";
        out << '\n';
    }
}

void csv_header(std::ostream& out, const SpectralPage& page) {
    out << "r,q";
    for (int p = 0; p <= page.max_p; ++p)
        out << ",p=" << p;
    out << '\n';
}

void csv_rows(std::ostream& out, const SpectralPage& page) {
    for (int q = page.max_q; q >= 0; --q) {
        out << page.r << ',' << q;
        for (auto d : page.row(q))
            out << ',' << d;
        out << '\n';
    }
}

} // namespace

std::string emit_page_table(const ModelSpec& model, const SpectralPage& page, TableFormat format) {
    std::ostringstream out;
    switch (format) {
    case TableFormat::md:
        md_table(out, page);
        break;
    case TableFormat::csv:
        csv_header(out, page);
        csv_rows(out, page);
        break;
    case TableFormat::json:
        out << page_json(model, page).dump(2) << '\n';
        break;
    }
    return out.str();
}

std::string emit_pages(const ModelSpec& model, const std::vector<const SpectralPage*>& pages, TableFormat format) {
    std::ostringstream out;
    switch (format) {
    case TableFormat::md:
        for (std::size_t i = 0; i < pages.size(); ++i) {
            out << (i ? "\n" : "") << "### E_" << pages[i]->r << "\n\n";
            md_table(out, *pages[i]);
        }
        break;
    case TableFormat::csv:
        if (!pages.empty())
            csv_header(out, *pages.front());
        for (const auto* page : pages)
            csv_rows(out, *page);
        break;
    case TableFormat::json: {
        ordered_json all = ordered_json::array();
        for (const auto* page : pages)
            all.push_back(page_json(model, *page));
        out << all.dump(2) << '\n';
        break;
    }
    }
    return out.str();
}

} // namespace ssq
