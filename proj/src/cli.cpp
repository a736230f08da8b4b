#include "ssq/cli.hpp"

#include "ssq/hodge.hpp"
#include "ssq/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>

namespace ssq {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const char* verdict(int page, int bound) {
    if (page == bound)
        return "tight";
    return page < bound ? "holds" : "violated";
}

void print_degeneration(std::ostream& out, const DegenerationResult& d) {
    out << "page=" << d.page << " k=" << d.rank << " k+2 bound: " << verdict(d.page, d.rank + 2) << '\n';
    out << "s=" << d.s << " s+2 bound: " << verdict(d.page, d.s + 2) << '\n';
}

std::vector<const SpectralPage*> collect_pages(SpectralSequence& ss, int max_r) {
    std::vector<const SpectralPage*> pages;
    for (int r = 0; r <= max_r; ++r)
        pages.push_back(&ss.page(r));
    return pages;
}

void print_harmonic(std::ostream& out, const ModelSpec& model, bool basic, std::optional<int> degree) {
    const auto report = harmonic_report(model, basic ? HarmonicFlavor::basic : HarmonicFlavor::total);
    const auto betti = basic ? basic_betti_numbers(model) : betti_numbers(model);
    for (std::size_t n = 0; n < report.degrees.size(); ++n) {
        if (degree && *degree != static_cast<int>(n))
            continue;
        const auto& h = report.degrees[n];
        out << "degree " << n << ": dim " << h.dimension << " (b_" << n << " = " << betti[n] << ")\n";
        for (const auto& e : h.basis)
            out << "  " << format_element(model, e) << '\n';
    }
}

void write_report(std::ostream& out, const ModelSpec& model) {
    out << "# " << model.name() << "\n\n";
    if (!model.description().empty())
        out << model.description() << "\n\n";
    out << "## Model\n\n```\n" << serialize_model(model) << "```\n\n";
    const auto report = validate(model);
    out << "## Validation\n\n" << (report.ok() ? "ok\n" : report.summary()) << '\n';
    if (!report.ok())
        return;

    SpectralSequence ss(model);
    const auto degeneration = ss.degeneration();
    out << "## Cohomological rank\n\nk=" << degeneration.rank << "\n\n";
    out << "## Pages\n\n" << emit_pages(model, collect_pages(ss, degeneration.s + 2), TableFormat::md) << '\n';
    out << "## Degeneration\n\n";
    print_degeneration(out, degeneration);
    out << '\n';

    const auto betti = betti_numbers(model);
    const auto basic = basic_betti_numbers(model);
    const auto total_h = harmonic_report(model, HarmonicFlavor::total);
    const auto basic_h = harmonic_report(model, HarmonicFlavor::basic);
    out << "## Cohomology and harmonic forms\n\n| n | b_n | harmonic | basic b_n | basic harmonic |\n|---|---|---|---|---|\n";
    for (std::size_t n = 0; n < betti.size(); ++n) {
        out << "| " << n << " | " << betti[n] << " | " << total_h.degrees[n].dimension << " | ";
        if (n < basic.size())
            out << basic[n] << " | " << basic_h.degrees[n].dimension << " |\n";
        else
            out << "- | - |\n";
    }
    out << "\nE_2 structure: " << (e2_structure_check(model) ? "ok" : "fails") << '\n';
    out << "homologically orientable: " << (orientability_check(model) ? "yes" : "no") << '\n';
}

ModelSpec build_example(int s, int circles, int heisenbergs) {
    std::vector<ModelSpec> factors{example_family(s)};
    for (int i = 0; i < circles; ++i)
        factors.push_back(circle_factor());
    for (int i = 0; i < heisenbergs; ++i)
        factors.push_back(heisenberg_factor());
    if (factors.size() == 1)
        return factors.front();
    return product(std::span<const ModelSpec>(factors));
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectral sequences and Hodge theory of torus-action models"};
    app.name("ssq");
    app.require_subcommand(1);

    std::string file;
    auto* validate_cmd = app.add_subcommand("validate", "Check a model file");
    validate_cmd->add_option("file", file, "Model file")->required()->check(CLI::ExistingFile);

    int max_r = -1;
    std::string format = "md";
    auto* pages_cmd = app.add_subcommand("pages", "Print spectral sequence pages");
    pages_cmd->add_option("file", file, "Model file")->required()->check(CLI::ExistingFile);
    pages_cmd->add_option("--max-r", max_r, "Last page to print (default s+2)")->check(CLI::NonNegativeNumber);
    pages_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"md", "csv", "json"}));

    auto* rank_cmd = app.add_subcommand("rank", "Print the cohomological rank");
    rank_cmd->add_option("file", file, "Model file")->required()->check(CLI::ExistingFile);

    auto* degenerate_cmd = app.add_subcommand("degenerate", "Print the degeneration page and bound verdicts");
    degenerate_cmd->add_option("file", file, "Model file")->required()->check(CLI::ExistingFile);

    std::optional<int> degree;
    bool basic = false;
    auto* harmonic_cmd = app.add_subcommand("harmonic", "Print harmonic bases");
    harmonic_cmd->add_option("file", file, "Model file")->required()->check(CLI::ExistingFile);
    harmonic_cmd->add_option("--degree", degree, "Only this degree")->check(CLI::NonNegativeNumber);
    harmonic_cmd->add_flag("--basic", basic, "Basic forms only");

    int s = 0;
    int circles = 0;
    int heisenbergs = 0;
    std::string output;
    auto* example_cmd = app.add_subcommand("example", "Write a generated model file");
    example_cmd->add_option("--s", s, "Rank of the torus in the example family")->required()->check(CLI::PositiveNumber);
    example_cmd->add_option("--circle", circles, "Number of circle factors")->check(CLI::NonNegativeNumber);
    example_cmd->add_option("--heisenberg", heisenbergs, "Number of Heisenberg factors")
        ->check(CLI::NonNegativeNumber);
    example_cmd->add_option("-o,--output", output, "Output file (default stdout)");

    auto* report_cmd = app.add_subcommand("report", "Full markdown report");
    report_cmd->add_option("file", file, "Model file")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (example_cmd->parsed()) {
            const std::string text = serialize_model(build_example(s, circles, heisenbergs));
            if (output.empty()) {
                out << text;
            } else {
                std::ofstream f(output, std::ios::binary);
                if (!(f << text))
                    throw UsageError("cannot write '" + output + "'");
            }
            return 0;
        }

        const ModelSpec model = load_model(file, false);
        if (validate_cmd->parsed()) {
            const auto report = validate(model);
            if (!report.ok()) {
                out << report.summary();
                err << file << ": invalid model\n";
                return 1;
            }
            out << "ok: " << model.name() << " (" << model.base_count() << " base, " << model.fiber_count()
                << " fiber generators)\n";
            return 0;
        }
        if (report_cmd->parsed()) {
            write_report(out, model);
            return validate(model).ok() ? 0 : 1;
        }
        require_valid(model);
        if (pages_cmd->parsed()) {
            SpectralSequence ss(model);
            const int last = max_r >= 0 ? max_r : model.fiber_count() + 2;
            const TableFormat f =
                format == "csv" ? TableFormat::csv : format == "json" ? TableFormat::json : TableFormat::md;
            out << emit_pages(model, collect_pages(ss, last), f);
        } else if (rank_cmd->parsed()) {
            out << "k=" << cohomological_rank(model) << '\n';
        } else if (degenerate_cmd->parsed()) {
            print_degeneration(out, degeneration_page(model));
        } else if (harmonic_cmd->parsed()) {
            print_harmonic(out, model, basic, degree);
        }
        return 0;
    } catch (const ParseError& e) {
        err << file << ':' << e.line() << ':' << e.column() << ": " << e.detail() << '\n';
        return 2;
    } catch (const UsageError& e) {
        err << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        err << file << ": " << e.what();
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace ssq
