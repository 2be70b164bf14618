#include "cli.hpp"

#include "dcurve/comparison.hpp"
#include "dcurve/curves.hpp"
#include "dcurve/equivalences.hpp"
#include "dcurve/errors.hpp"
#include "dcurve/ingest.hpp"
#include "dcurve/report.hpp"
#include "dcurve/resampling.hpp"
#include "dcurve/svg.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace dcurve::cli {
namespace {

using json = nlohmann::ordered_json;

struct GlobalOptions {
    std::string grid = "0.01:0.50:0.01";
    std::string format = "json";
    std::string out;
};

struct InputOptions {
    std::string input;
    std::string outcome;
    std::vector<std::string> models;
    char delimiter = ',';
    bool no_header = false;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("--input", in.input, "Delimited input file")->required();
    cmd->add_option("--outcome", in.outcome, "Outcome column (0/1)")->required();
    cmd->add_option("--models", in.models, "Risk column(s), one per model")->required();
    cmd->add_option("--delimiter", in.delimiter, "Field delimiter")->capture_default_str();
    cmd->add_flag("--no-header", in.no_header, "Input has no header row; columns are 1, 2, ...");
}

IngestionSpec to_spec(const InputOptions& in) {
    return {in.input, in.outcome, in.models, in.delimiter, !in.no_header};
}

ReportMetadata make_metadata(const std::string& command, const GlobalOptions& g,
                             const InputOptions& in, const ThresholdGrid& grid) {
    ReportMetadata m;
    m.command = command;
    m.input_digest = file_digest(in.input);
    m.grid = grid;
    m.options["input"] = in.input;
    m.options["outcome"] = in.outcome;
    std::string models;
    for (const auto& name : in.models) models += (models.empty() ? "" : ",") + name;
    m.options["models"] = models;
    m.options["grid"] = g.grid;
    return m;
}

void write_output(const GlobalOptions& g, const std::string& text, std::ostream& out) {
    if (g.out.empty()) out << text;
    else write_file_atomic(g.out, text);
}

void write_svgs(const std::string& prefix, const ReportDocument& doc) {
    if (prefix.empty()) return;
    for (Panel p : {Panel::decision, Panel::ppv, Panel::calibration}) {
        write_file_atomic(prefix + "-" + to_string(p) + ".svg", render_svg(doc, p));
    }
}

std::string render_bounds(const PpvInterval& b, double prevalence, ReportFormat format) {
    if (format == ReportFormat::csv) {
        return "t,nb,prevalence,kind,lower,upper\n" + format_number(b.t) + "," +
               format_number(b.nb) + "," + format_number(prevalence) + "," + to_string(b.kind) +
               "," + format_number(b.lower) + "," + format_number(b.upper) + "\n";
    }
    json j{{"t", b.t},         {"nb", b.nb},       {"prevalence", prevalence},
           {"kind", to_string(b.kind)}, {"lower", b.lower}, {"upper", b.upper}};
    if (b.kind == PpvIntervalKind::zero_nb_two_point) j["feasible_set"] = {b.lower, b.upper};
    else j["feasible_interval"] = {b.lower, b.upper};
    return j.dump(2) + "\n";
}

std::string render_demo(const MiscalibrationDemo& demo, ReportFormat format) {
    if (format == ReportFormat::csv) {
        std::ostringstream s;
        s << "t,nb,nb_all,y_above,y_below,worse_than_treat_none,worse_than_treat_all\n";
        for (const auto& p : demo.points) {
            s << format_number(p.t) << ',' << format_number(p.nb) << ',' << format_number(p.nb_all)
              << ',' << (p.y_above ? format_number(*p.y_above) : "") << ','
              << (p.y_below ? format_number(*p.y_below) : "") << ','
              << (p.worse_than_none ? "true" : "false") << ','
              << (p.worse_than_all ? "true" : "false") << '\n';
        }
        return s.str();
    }
    auto regions = [](const std::vector<ThresholdRegion>& rs) {
        json a = json::array();
        for (const auto& r : rs) a.push_back({r.first, r.last});
        return a;
    };
    json points = json::array();
    for (const auto& p : demo.points) {
        json q{{"t", p.t},
               {"nb", p.nb},
               {"nb_all", p.nb_all},
               {"worse_than_treat_none", p.worse_than_none},
               {"worse_than_treat_all", p.worse_than_all}};
        if (p.y_above) q["y_above"] = *p.y_above;
        if (p.y_below) q["y_below"] = *p.y_below;
        points.push_back(std::move(q));
    }
    const auto& spec = demo.spec;
    json j{{"spec",
            {{"n", spec.n},
             {"seed", spec.seed},
             {"distribution", spec.risk_distribution.to_string()},
             {"logit_shift", spec.logit_shift}}},
           {"prevalence", demo.prevalence},
           {"regions",
            {{"worse_than_treat_none", regions(demo.worse_than_none)},
             {"worse_than_treat_all", regions(demo.worse_than_all)}}},
           {"points", std::move(points)}};
    return j.dump(2) + "\n";
}

// Malformed option text is a usage error, not a data error.
template <class F>
auto parse_or_usage(F f) {
    try {
        return f();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decision-curve, PPV-curve and threshold-calibration analytics", "dcurve"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--grid", g.grid, "Threshold grid lo:hi:step")->capture_default_str();
    app.add_option("--format", g.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", g.out, "Write the report to this path instead of stdout");

    InputOptions curves_in;
    std::string curves_svg;
    auto* curves = app.add_subcommand("curves", "Decision, PPV and calibration curves");
    add_input_options(curves, curves_in);
    curves->add_option("--svg", curves_svg, "Write PREFIX-{decision,ppv,calibration}.svg");

    InputOptions compare_in;
    auto* compare = app.add_subcommand("compare", "Pairwise net-benefit comparison of two models");
    add_input_options(compare, compare_in);

    double bounds_nb = 0.0, bounds_prevalence = 0.0, bounds_t = 0.0;
    auto* bounds = app.add_subcommand("bounds", "Feasible PPV range implied by a net benefit");
    bounds->add_option("--nb", bounds_nb, "Net benefit")->required();
    bounds->add_option("--prevalence", bounds_prevalence, "Event prevalence")->required();
    bounds->add_option("--t", bounds_t, "Threshold")->required();

    InputOptions boot_in;
    BandSpec band_spec;
    band_spec.seed = 42;
    std::string boot_svg;
    auto* bootstrap = app.add_subcommand("bootstrap", "Curves with percentile bootstrap bands");
    add_input_options(bootstrap, boot_in);
    bootstrap->add_option("--replicates", band_spec.replicates, "Bootstrap replicates")
        ->capture_default_str();
    bootstrap->add_option("--seed", band_spec.seed, "Random seed")->capture_default_str();
    bootstrap->add_option("--level", band_spec.level, "Band level")->capture_default_str();
    bootstrap->add_option("--svg", boot_svg, "Write PREFIX-{decision,ppv,calibration}.svg");

    SyntheticSpec demo_spec;
    demo_spec.n = 20000;
    demo_spec.seed = 7;
    std::string demo_distribution = "beta:2:5";
    auto* demo = app.add_subcommand("demo-miscalibration",
                                    "Synthetic over/underestimation scenario and its failure regions");
    demo->add_option("--shift", demo_spec.logit_shift, "Logit shift of reported risks")->required();
    demo->add_option("--n", demo_spec.n, "Cohort size")->capture_default_str();
    demo->add_option("--seed", demo_spec.seed, "Random seed")->capture_default_str();
    demo->add_option("--distribution", demo_distribution, "True-risk distribution: uniform or beta:a:b")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return usage;
    }

    try {
        const ReportFormat format = parse_report_format(g.format);
        const ThresholdGrid grid = parse_or_usage([&] { return ThresholdGrid::parse(g.grid); });

        if (*curves) {
            const auto sets = ingest(to_spec(curves_in));
            ReportDocument doc;
            doc.metadata = make_metadata("curves", g, curves_in, grid);
            for (const auto& s : sets) doc.models.push_back(make_model_curve(s, grid));
            write_output(g, emit_report(doc, format), out);
            write_svgs(curves_svg, doc);
        } else if (*compare) {
            if (compare_in.models.size() != 2) {
                throw UsageError("compare needs exactly two --models columns");
            }
            const auto sets = ingest(to_spec(compare_in));
            ReportDocument doc;
            doc.metadata = make_metadata("compare", g, compare_in, grid);
            for (const auto& s : sets) doc.models.push_back(make_model_curve(s, grid));
            ModelComparison cmp{sets[0].name(), sets[1].name(), {}};
            for (double t : grid.points()) cmp.points.push_back(compare_models(sets[0], sets[1], t));
            doc.comparisons.push_back(std::move(cmp));
            write_output(g, emit_report(doc, format), out);
        } else if (*bounds) {
            const auto b = ppv_bounds_given_nb(bounds_nb, bounds_prevalence, bounds_t);
            write_output(g, render_bounds(b, bounds_prevalence, format), out);
        } else if (*bootstrap) {
            const auto sets = ingest(to_spec(boot_in));
            ReportDocument doc;
            doc.metadata = make_metadata("bootstrap", g, boot_in, grid);
            doc.metadata.options["replicates"] = std::to_string(band_spec.replicates);
            doc.metadata.options["seed"] = std::to_string(band_spec.seed);
            doc.metadata.options["level"] = format_number(band_spec.level);
            for (const auto& s : sets) {
                doc.models.push_back(make_model_curve(s, grid));
                doc.bands.push_back({s.name(), band_spec, bootstrap_bands(s, grid, band_spec)});
            }
            write_output(g, emit_report(doc, format), out);
            write_svgs(boot_svg, doc);
        } else if (*demo) {
            demo_spec.risk_distribution =
                parse_or_usage([&] { return RiskDistribution::parse(demo_distribution); });
            demo_spec.label = "reported";
            write_output(g, render_demo(run_miscalibration_demo(demo_spec, grid), format), out);
        }
        return ok;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return usage;
    } catch (const InvariantViolation& e) {
        err << "internal invariant violated: " << e.what() << "\n";
        return internal;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << "\n";
        return data;
    } catch (const std::domain_error& e) {
        err << "data error: " << e.what() << "\n";
        return data;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return internal;
    }
}

} // namespace dcurve::cli
