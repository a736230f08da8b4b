#include "corpus.hpp"

#include "ssq/io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sstream>

using namespace ssq;

namespace {

const std::string s2_path = std::string(SSQ_SOURCE_DIR) + "/models/s2.model";

ParseError parse_error(std::string_view text) {
    try {
        parse_model(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("no parse error");
    return ParseError(0, 0, "");
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        out.push_back(line);
    return out;
}

} // namespace

TEST_CASE("the shipped s=2 model matches the built-in family") {
    const ModelSpec file = load_model(s2_path);
    const ModelSpec family = example_family(2);
    CHECK(file.name() == "s2");
    REQUIRE(file.size() == family.size());
    const std::map<std::string, std::string> renamed{{"b", "b1"}, {"c", "c1"}};
    for (std::size_t i = 0; i < file.size(); ++i) {
        const auto& name = file.generator(i).name;
        CHECK(family.generator(i).name == (renamed.contains(name) ? renamed.at(name) : name));
        CHECK(file.generator(i).kind == family.generator(i).kind);
        CHECK(file.differential_of(i).terms() == family.differential_of(i).terms());
    }
    CHECK(format_element(file, file.differential_of(file.require_index("c"))) == "b^s");
    CHECK(format_element(file, file.differential_of(file.require_index("e1"))) == "-a1^s");
    CHECK(compute_page(file, 3).grid() == compute_page(family, 3).grid());
}

TEST_CASE("expression parsing") {
    const ModelSpec m("m", {{"a", GeneratorKind::base},
                            {"b", GeneratorKind::base},
                            {"c", GeneratorKind::base},
                            {"d", GeneratorKind::base}});
    const Element e = parse_expression(m, "2*a^b - 1/3*c^d");
    CHECK(e.coefficient(Monomial::from_indices({0, 1})) == 2);
    CHECK(e.coefficient(Monomial::from_indices({2, 3})) == Rational(-1, 3));
    CHECK(e.terms().size() == 2);
    CHECK(parse_expression(m, "b^a") == -parse_expression(m, "a^b"));
    CHECK(parse_expression(m, "a^b + b^a").is_zero());
    CHECK(parse_expression(m, "0").is_zero());
    CHECK(parse_expression(m, "-a^b") == parse_expression(m, "-1*a^b"));
    CHECK(parse_expression(m, " 4/6 * a ^ b ").coefficient(Monomial::from_indices({0, 1})) == Rational(2, 3));
    CHECK(parse_element(m, "1 + a").terms().size() == 2);
    CHECK(parse_element(m, "a^a").is_zero());

    auto error_at = [&](std::string_view text) -> std::optional<std::pair<std::size_t, std::string>> {
        try {
            parse_expression(m, text);
        } catch (const ParseError& e) {
            return std::pair{e.column(), e.detail()};
        }
        return std::nullopt;
    };
    const auto caret = error_at("a^^b");
    REQUIRE(caret);
    CHECK(caret->first == 3);
    const auto unknown = error_at("a^z");
    REQUIRE(unknown);
    CHECK(unknown->first == 3);
    CHECK(unknown->second.find("unknown generator 'z'") != std::string::npos);
    CHECK(error_at("a"));
    CHECK(error_at("a^b^c"));
    CHECK(error_at("1/0*a^b"));
    CHECK(error_at(""));
    CHECK(error_at("a^b c^d"));
}

TEST_CASE("model file errors carry positions") {
    const auto missing = parse_error("base = a\n");
    CHECK(missing.detail().find("missing 'name'") != std::string::npos);

    const auto unknown_key = parse_error("name = x\ncolour = red\n");
    CHECK(unknown_key.line() == 2);
    CHECK(unknown_key.detail().find("unknown key 'colour'") != std::string::npos);

    const auto duplicate = parse_error("name = x\nbase = a b a\n");
    CHECK(duplicate.line() == 2);
    CHECK(duplicate.column() == 12);
    CHECK(duplicate.detail().find("duplicate generator 'a'") != std::string::npos);

    const auto twice = parse_error("name = x\nname = y\n");
    CHECK(twice.detail().find("duplicate key 'name'") != std::string::npos);

    const auto undeclared = parse_error("name = x\nbase = a b\n[differential]\nt = a^b\n");
    CHECK(undeclared.line() == 4);
    CHECK(undeclared.column() == 1);

    const auto expr = parse_error("name = x\nbase = a b t\n[differential]\nt = a^^b\n");
    CHECK(expr.line() == 4);
    CHECK(expr.column() == 7);

    const auto degree = parse_error("name = x\nbase = a b\n[differential]\nb = a\n");
    CHECK(degree.detail() == "differential must be of degree 2");

    CHECK(parse_error("name = x\nbase = a\n[differential]\na = 0\na = 0\n").detail().find("duplicate differential") !=
          std::string::npos);
    CHECK(parse_error("name = x\n[other]\n").detail().find("unknown section") != std::string::npos);

    // Structural problems are reported by validation, not by the parser.
    CHECK_THROWS_AS(parse_model("name = x\nbase = a\nfiber = e f\n[differential]\ne = 0\nf = a^e\n"), ValidationError);
    CHECK_NOTHROW(parse_model_unchecked("name = x\nbase = a\nfiber = e f\n[differential]\nf = a^e\n"));
    CHECK_THROWS(load_model(std::string(SSQ_SOURCE_DIR) + "/no/such.model"));
}

TEST_CASE("comments, descriptions and repeated generator lines") {
    const ModelSpec m = parse_model("# leading comment\n"
                                    "name = h   # trailing\n"
                                    "description = Heisenberg nilmanifold\n"
                                    "base = a\n"
                                    "base = t\n"
                                    "\n"
                                    "fiber = e\n"
                                    "[differential]\n"
                                    "e = t^a\n");
    CHECK(m.name() == "h");
    CHECK(m.description() == "Heisenberg nilmanifold");
    CHECK(m.size() == 3);
    CHECK(m.differential_of(2) == wedge(m.gen("t"), m.gen("a")));
}

TEST_CASE("serialization round-trips") {
    std::vector<ModelSpec> models{example_family(1), example_family(2), example_family(3), heisenberg_factor(),
                                  circle_factor(), product(circle_factor(), example_family(2))};
    for (auto& m : corpus::products(20, 41))
        models.push_back(m);
    for (auto& m : corpus::random_models(20, 42))
        models.push_back(m);
    ModelSpec described = example_family(2);
    described.set_description("with a description");
    models.push_back(described);
    ModelSpec fractions("q", {{"a", GeneratorKind::base}, {"b", GeneratorKind::base}, {"e", GeneratorKind::fiber}});
    fractions.set_differential("e", Rational(-3, 7) * wedge(fractions.gen("a"), fractions.gen("b")));
    models.push_back(fractions);

    for (const auto& m : models) {
        const std::string text = serialize_model(m);
        CHECK(parse_model(text) == m);
        CHECK(serialize_model(parse_model(text)) == text);
    }
    CHECK(format_element(fractions, fractions.differential_of(2)) == "-3/7*a^b");
    CHECK(format_element(fractions, fractions.zero()) == "0");
    CHECK(format_element(fractions, fractions.unit() - Rational(1, 2) * fractions.gen("a")) == "1 - 1/2*a");
}

TEST_CASE("page tables") {
    const ModelSpec m = example_family(2);
    SpectralSequence ss(m);
    const auto& e3 = ss.page(3);

    const std::string md = emit_page_table(m, e3, TableFormat::md);
    CHECK(md == emit_page_table(m, e3, TableFormat::md));
    const auto md_lines = lines(md);
    REQUIRE(md_lines.size() == 5);
    CHECK(md_lines[0] == "| q\\p | 0 | 1 | 2 | 3 | 4 | 5 |");
    CHECK(md_lines[2] == "| 2 | 0 | 2 | 6 | 5 | 4 | 1 |");
    CHECK(md_lines[4] == "| 0 | 1 | 4 | 5 | 6 | 2 | 0 |");

    const auto csv = lines(emit_page_table(m, e3, TableFormat::csv));
    REQUIRE(csv.size() == 4);
    CHECK(csv[0] == "r,q,p=0,p=1,p=2,p=3,p=4,p=5");
    CHECK(csv[1] == "3,2,0,2,6,5,4,1");
    CHECK(csv[3] == "3,0,1,4,5,6,2,0");

    const auto j = nlohmann::json::parse(emit_page_table(m, e3, TableFormat::json));
    CHECK(j["model"] == m.name());
    CHECK(j["r"] == 3);
    CHECK(j["grid"] == nlohmann::json(e3.grid()));
    CHECK(j["slots"].size() == 18);
    std::size_t nonzero = 0;
    for (const auto& s : j["slots"]) {
        CHECK(s["representatives"].size() == s["dimension"]);
        nonzero += s["differential"].size();
        if (s["p"] == 1 && s["q"] == 2)
            CHECK(s["target"] == nlohmann::json::array({4, 0}));
    }
    CHECK(nonzero > 0);
}

TEST_CASE("page documents") {
    const ModelSpec m = heisenberg_factor();
    SpectralSequence ss(m);
    const std::vector<const SpectralPage*> pages{&ss.page(2), &ss.page(3)};
    const std::string md = emit_pages(m, pages, TableFormat::md);
    CHECK(md.find("### E_2") != std::string::npos);
    CHECK(md.find("### E_3") > md.find("### E_2"));
    const auto csv = lines(emit_pages(m, pages, TableFormat::csv));
    REQUIRE(csv.size() == 5);
    CHECK(csv[0] == "r,q,p=0,p=1,p=2");
    CHECK(csv[1] == "2,1,1,2,1");
    CHECK(csv[3] == "3,1,0,2,1");
    CHECK(csv[4] == "3,0,1,2,0");
    const auto j = nlohmann::json::parse(emit_pages(m, pages, TableFormat::json));
    REQUIRE(j.is_array());
    CHECK(j.size() == 2);
    CHECK(j[1]["r"] == 3);

    const ModelSpec point = parse_model("name = pt\n");
    SpectralSequence trivial(point);
    CHECK(emit_page_table(point, trivial.page(2), TableFormat::csv) == "r,q,p=0\n2,0,1\n");
    CHECK(lines(emit_page_table(point, trivial.page(2), TableFormat::md)).back() == "| 0 | 1 |");
}
