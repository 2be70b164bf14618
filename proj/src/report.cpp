#include "dcurve/report.hpp"

#include "dcurve/errors.hpp"

#include "json.hpp"

#include <cstdio>
#include <sstream>

namespace dcurve {

using json = nlohmann::ordered_json;

namespace {

template <class T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

template <class T>
std::optional<T> get_optional(const json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    return j.at(key).get<T>();
}

Winner parse_winner(const std::string& s) {
    if (s == "model1") return Winner::model1;
    if (s == "model2") return Winner::model2;
    if (s == "tie") return Winner::tie;
    throw DataError("unknown winner '" + s + "'");
}

std::optional<Winner> get_winner(const json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    return parse_winner(j.at(key).get<std::string>());
}

json to_json(const CalibrationSummary& s) {
    json j;
    j["n_above"] = s.n_above;
    j["n_below"] = s.n_below;
    put_optional(j, "y_above", s.y_above);
    put_optional(j, "y_below", s.y_below);
    put_optional(j, "p_above", s.p_above);
    put_optional(j, "p_below", s.p_below);
    put_optional(j, "delta_t", s.delta_t);
    put_optional(j, "enrichment", s.enrichment);
    put_optional(j, "calibration_term", s.calibration_term);
    return j;
}

json to_json(const CurvePoint& p) {
    json j;
    j["t"] = p.t;
    j["nb_model"] = p.nb_model;
    j["nb_all"] = p.nb_all;
    j["nb_none"] = p.nb_none;
    j["s_t"] = p.s_t;
    j["ppv"] = p.ppv;
    j["ppv_none_ref"] = p.ppv_none_ref;
    put_optional(j, "ppv_all_ref", p.ppv_all_ref);
    j["beats_none"] = p.beats_none;
    j["beats_all"] = p.beats_all;
    j["confusion"] = {{"tp", p.confusion.tp},
                      {"fp", p.confusion.fp},
                      {"tn", p.confusion.tn},
                      {"fn", p.confusion.fn}};
    j["calibration"] = to_json(p.calibration);
    return j;
}

CurvePoint curve_point_from_json(const json& j) {
    CurvePoint p;
    p.t = j.at("t").get<double>();
    p.nb_model = j.at("nb_model").get<double>();
    p.nb_all = j.at("nb_all").get<double>();
    p.nb_none = j.at("nb_none").get<double>();
    p.s_t = j.at("s_t").get<double>();
    p.ppv = j.at("ppv").get<double>();
    p.ppv_none_ref = j.at("ppv_none_ref").get<double>();
    p.ppv_all_ref = get_optional<double>(j, "ppv_all_ref");
    p.beats_none = j.at("beats_none").get<bool>();
    p.beats_all = j.at("beats_all").get<bool>();
    const auto& c = j.at("confusion");
    p.confusion = {p.t, c.at("tp").get<std::int64_t>(), c.at("fp").get<std::int64_t>(),
                   c.at("tn").get<std::int64_t>(), c.at("fn").get<std::int64_t>()};
    const auto& s = j.at("calibration");
    auto& cal = p.calibration;
    cal.t = p.t;
    cal.s_t = p.s_t;
    cal.n_above = s.at("n_above").get<std::int64_t>();
    cal.n_below = s.at("n_below").get<std::int64_t>();
    cal.y_above = get_optional<double>(s, "y_above");
    cal.y_below = get_optional<double>(s, "y_below");
    cal.p_above = get_optional<double>(s, "p_above");
    cal.p_below = get_optional<double>(s, "p_below");
    cal.delta_t = get_optional<double>(s, "delta_t");
    cal.enrichment = get_optional<double>(s, "enrichment");
    cal.calibration_term = get_optional<double>(s, "calibration_term");
    return p;
}

json to_json(const ComparisonVerdict& v) {
    json j;
    j["t"] = v.t;
    j["nb1"] = v.nb1;
    j["nb2"] = v.nb2;
    j["winner"] = to_string(v.winner);
    put_optional(j, "ppv1", v.ppv1);
    put_optional(j, "ppv_superiority_ref", v.ppv_superiority_ref);
    put_optional(j, "margin_above_1", v.margin_above_1);
    put_optional(j, "margin_above_2", v.margin_above_2);
    put_optional(j, "margin_below_1", v.margin_below_1);
    put_optional(j, "margin_below_2", v.margin_below_2);
    if (v.ppv_route) j["ppv_route"] = to_string(*v.ppv_route);
    if (v.margin_above_route) j["margin_above_route"] = to_string(*v.margin_above_route);
    if (v.margin_below_route) j["margin_below_route"] = to_string(*v.margin_below_route);
    return j;
}

ComparisonVerdict comparison_from_json(const json& j) {
    ComparisonVerdict v;
    v.t = j.at("t").get<double>();
    v.nb1 = j.at("nb1").get<double>();
    v.nb2 = j.at("nb2").get<double>();
    v.winner = parse_winner(j.at("winner").get<std::string>());
    v.ppv1 = get_optional<double>(j, "ppv1");
    v.ppv_superiority_ref = get_optional<double>(j, "ppv_superiority_ref");
    v.margin_above_1 = get_optional<double>(j, "margin_above_1");
    v.margin_above_2 = get_optional<double>(j, "margin_above_2");
    v.margin_below_1 = get_optional<double>(j, "margin_below_1");
    v.margin_below_2 = get_optional<double>(j, "margin_below_2");
    v.ppv_route = get_winner(j, "ppv_route");
    v.margin_above_route = get_winner(j, "margin_above_route");
    v.margin_below_route = get_winner(j, "margin_below_route");
    return v;
}

json to_json(const ModelBand& b) {
    json j;
    j["model"] = b.model;
    j["spec"] = {{"replicates", b.spec.replicates},
                 {"seed", b.spec.seed},
                 {"level", b.spec.level},
                 {"method", "percentile"}};
    json points = json::array();
    for (const auto& p : b.band.points) {
        json q;
        q["t"] = p.t;
        q["nb_lower"] = p.nb_lower;
        q["nb_upper"] = p.nb_upper;
        put_optional(q, "ppv_lower", p.ppv_lower);
        put_optional(q, "ppv_upper", p.ppv_upper);
        q["nb_replicates"] = p.nb_replicates;
        q["ppv_replicates"] = p.ppv_replicates;
        q["ppv_excluded"] = p.ppv_excluded;
        points.push_back(std::move(q));
    }
    j["points"] = std::move(points);
    return j;
}

ModelBand band_from_json(const json& j) {
    ModelBand b;
    b.model = j.at("model").get<std::string>();
    const auto& s = j.at("spec");
    b.spec.replicates = s.at("replicates").get<std::size_t>();
    b.spec.seed = s.at("seed").get<std::uint64_t>();
    b.spec.level = s.at("level").get<double>();
    if (s.at("method").get<std::string>() != "percentile") {
        throw DataError("unknown band method");
    }
    for (const auto& q : j.at("points")) {
        BandPoint p;
        p.t = q.at("t").get<double>();
        p.nb_lower = q.at("nb_lower").get<double>();
        p.nb_upper = q.at("nb_upper").get<double>();
        p.ppv_lower = get_optional<double>(q, "ppv_lower");
        p.ppv_upper = get_optional<double>(q, "ppv_upper");
        p.nb_replicates = q.at("nb_replicates").get<std::size_t>();
        p.ppv_replicates = q.at("ppv_replicates").get<std::size_t>();
        p.ppv_excluded = q.at("ppv_excluded").get<std::size_t>();
        b.band.points.push_back(p);
    }
    return b;
}

json to_json(const ReportDocument& doc) {
    json j;
    const auto& m = doc.metadata;
    j["metadata"] = {{"tool", m.tool},
                     {"version", m.version},
                     {"command", m.command},
                     {"input_digest", m.input_digest},
                     {"grid", {{"lo", m.grid.lo()}, {"hi", m.grid.hi()}, {"step", m.grid.step()}}},
                     {"options", m.options}};
    json models = json::array();
    for (const auto& mc : doc.models) {
        json points = json::array();
        for (const auto& p : mc.points) points.push_back(to_json(p));
        models.push_back({{"name", mc.name},
                          {"n", mc.n},
                          {"n1", mc.n1},
                          {"prevalence", mc.prevalence},
                          {"points", std::move(points)}});
    }
    j["models"] = std::move(models);
    if (!doc.bands.empty()) {
        json bands = json::array();
        for (const auto& b : doc.bands) bands.push_back(to_json(b));
        j["bands"] = std::move(bands);
    }
    if (!doc.comparisons.empty()) {
        json comparisons = json::array();
        for (const auto& c : doc.comparisons) {
            json points = json::array();
            for (const auto& v : c.points) points.push_back(to_json(v));
            comparisons.push_back(
                {{"model1", c.model1}, {"model2", c.model2}, {"points", std::move(points)}});
        }
        j["comparisons"] = std::move(comparisons);
    }
    return j;
}

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string emit_csv(const ReportDocument& doc) {
    std::ostringstream out;
    const bool with_bands = !doc.bands.empty();
    out << "model,t,tp,fp,tn,fn,nb_model,nb_all,nb_none,s_t,ppv,ppv_none_ref,ppv_all_ref,"
           "beats_none,beats_all,y_above,y_below,p_above,p_below,delta_t,enrichment,"
           "calibration_term";
    if (with_bands) {
        out << ",nb_lower,nb_upper,ppv_lower,ppv_upper,nb_replicates,ppv_replicates,ppv_excluded";
    }
    out << '\n';
    for (const auto& mc : doc.models) {
        const ModelBand* band = nullptr;
        for (const auto& b : doc.bands) {
            if (b.model == mc.name) band = &b;
        }
        for (std::size_t k = 0; k < mc.points.size(); ++k) {
            const auto& p = mc.points[k];
            const auto& c = p.calibration;
            out << csv_field(mc.name) << ',' << format_number(p.t) << ',' << p.confusion.tp << ','
                << p.confusion.fp << ',' << p.confusion.tn << ',' << p.confusion.fn << ','
                << format_number(p.nb_model) << ',' << format_number(p.nb_all) << ','
                << format_number(p.nb_none) << ',' << format_number(p.s_t) << ','
                << format_number(p.ppv) << ',' << format_number(p.ppv_none_ref) << ','
                << cell(p.ppv_all_ref) << ',' << (p.beats_none ? "true" : "false") << ','
                << (p.beats_all ? "true" : "false") << ',' << cell(c.y_above) << ','
                << cell(c.y_below) << ',' << cell(c.p_above) << ',' << cell(c.p_below) << ','
                << cell(c.delta_t) << ',' << cell(c.enrichment) << ',' << cell(c.calibration_term);
            if (with_bands) {
                if (band && k < band->band.points.size()) {
                    const auto& b = band->band.points[k];
                    out << ',' << format_number(b.nb_lower) << ',' << format_number(b.nb_upper)
                        << ',' << cell(b.ppv_lower) << ',' << cell(b.ppv_upper) << ','
                        << b.nb_replicates << ',' << b.ppv_replicates << ',' << b.ppv_excluded;
                } else {
                    out << ",,,,,,,";
                }
            }
            out << '\n';
        }
    }
    if (!doc.comparisons.empty()) {
        out << "\nmodel1,model2,t,nb1,nb2,winner,ppv1,ppv_superiority_ref,margin_above_1,"
               "margin_above_2,margin_below_1,margin_below_2\n";
        for (const auto& cmp : doc.comparisons) {
            for (const auto& v : cmp.points) {
                out << csv_field(cmp.model1) << ',' << csv_field(cmp.model2) << ','
                    << format_number(v.t) << ',' << format_number(v.nb1) << ','
                    << format_number(v.nb2) << ',' << to_string(v.winner) << ',' << cell(v.ppv1)
                    << ',' << cell(v.ppv_superiority_ref) << ',' << cell(v.margin_above_1) << ','
                    << cell(v.margin_above_2) << ',' << cell(v.margin_below_1) << ','
                    << cell(v.margin_below_2) << '\n';
            }
        }
    }
    return out.str();
}

} // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ReportFormat parse_report_format(const std::string& text) {
    if (text == "json") return ReportFormat::json;
    if (text == "csv") return ReportFormat::csv;
    throw UsageError("unknown report format '" + text + "' (expected json or csv)");
}

ModelCurve make_model_curve(const PredictionSet& data, const ThresholdGrid& grid) {
    return {data.name(), data.n(), data.n1(), data.prevalence(), decision_curve(data, grid)};
}

std::string emit_report(const ReportDocument& doc, ReportFormat format) {
    if (format == ReportFormat::csv) return emit_csv(doc);
    return to_json(doc).dump(2) + "\n";
}

ReportDocument parse_report_json(std::string_view text) {
    try {
        const json j = json::parse(text);
        ReportDocument doc;
        const auto& m = j.at("metadata");
        doc.metadata.tool = m.at("tool").get<std::string>();
        doc.metadata.version = m.at("version").get<std::string>();
        doc.metadata.command = m.at("command").get<std::string>();
        doc.metadata.input_digest = m.at("input_digest").get<std::string>();
        const auto& g = m.at("grid");
        doc.metadata.grid = ThresholdGrid(g.at("lo").get<double>(), g.at("hi").get<double>(),
                                          g.at("step").get<double>());
        doc.metadata.options = m.at("options").get<std::map<std::string, std::string>>();
        for (const auto& mj : j.at("models")) {
            ModelCurve mc;
            mc.name = mj.at("name").get<std::string>();
            mc.n = mj.at("n").get<std::size_t>();
            mc.n1 = mj.at("n1").get<std::size_t>();
            mc.prevalence = mj.at("prevalence").get<double>();
            for (const auto& p : mj.at("points")) mc.points.push_back(curve_point_from_json(p));
            doc.models.push_back(std::move(mc));
        }
        if (j.contains("bands")) {
            for (const auto& b : j.at("bands")) doc.bands.push_back(band_from_json(b));
        }
        if (j.contains("comparisons")) {
            for (const auto& cj : j.at("comparisons")) {
                ModelComparison c;
                c.model1 = cj.at("model1").get<std::string>();
                c.model2 = cj.at("model2").get<std::string>();
                for (const auto& v : cj.at("points")) c.points.push_back(comparison_from_json(v));
                doc.comparisons.push_back(std::move(c));
            }
        }
        return doc;
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed report: ") + e.what());
    }
}

} // namespace dcurve
