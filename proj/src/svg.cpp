#include "dcurve/svg.hpp"

#include "dcurve/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

namespace dcurve {

Panel parse_panel(const std::string& text) {
    if (text == "decision") return Panel::decision;
    if (text == "ppv") return Panel::ppv;
    if (text == "calibration") return Panel::calibration;
    throw UsageError("unknown panel '" + text + "'");
}

const char* to_string(Panel p) {
    switch (p) {
    case Panel::decision: return "decision";
    case Panel::ppv: return "ppv";
    case Panel::calibration: return "calibration";
    }
    return "unknown";
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo;
    double hi;
};

class Canvas {
public:
    Canvas(const SvgStyle& style, Range x, Range y) : style_(style), x_(x), y_(y) {}

    double px(double v) const {
        const double w = style_.width - style_.margin_left - style_.margin_right;
        return style_.margin_left + (v - x_.lo) / (x_.hi - x_.lo) * w;
    }
    double py(double v) const {
        const double h = style_.height - style_.margin_top - style_.margin_bottom;
        return style_.margin_top + (1.0 - (v - y_.lo) / (y_.hi - y_.lo)) * h;
    }

    void open(const std::string& title) {
        out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
             << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << style_.width
             << "\" height=\"" << style_.height << "\" viewBox=\"0 0 " << style_.width << ' '
             << style_.height << "\">\n"
             << "<title>" << escape(title) << "</title>\n"
             << "<defs><clipPath id=\"plot-area\"><rect x=\"" << style_.margin_left << "\" y=\""
             << style_.margin_top << "\" width=\""
             << style_.width - style_.margin_left - style_.margin_right << "\" height=\""
             << style_.height - style_.margin_top - style_.margin_bottom
             << "\"/></clipPath></defs>\n"
             << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
             << "<text x=\"" << style_.width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
             << "font-family=\"sans-serif\" font-size=\"16\">" << escape(title) << "</text>\n";
    }

    void axes(const std::string& x_label, const std::string& y_label) {
        const double x0 = style_.margin_left;
        const double x1 = style_.width - style_.margin_right;
        const double y0 = style_.height - style_.margin_bottom;
        const double y1 = style_.margin_top;
        out_ << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
             << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x1)
             << "\" y2=\"" << fmt(y0) << "\"/>\n"
             << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x0)
             << "\" y2=\"" << fmt(y1) << "\"/>\n</g>\n";
        out_ << "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
        for (int i = 0; i <= 5; ++i) {
            const double xv = x_.lo + (x_.hi - x_.lo) * i / 5.0;
            const double yv = y_.lo + (y_.hi - y_.lo) * i / 5.0;
            out_ << "<line x1=\"" << fmt(px(xv)) << "\" y1=\"" << fmt(y0) << "\" x2=\""
                 << fmt(px(xv)) << "\" y2=\"" << fmt(y0 + 5) << "\" stroke=\"black\"/>\n"
                 << "<text x=\"" << fmt(px(xv)) << "\" y=\"" << fmt(y0 + 18)
                 << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n"
                 << "<line x1=\"" << fmt(x0 - 5) << "\" y1=\"" << fmt(py(yv)) << "\" x2=\""
                 << fmt(x0) << "\" y2=\"" << fmt(py(yv)) << "\" stroke=\"black\"/>\n"
                 << "<text x=\"" << fmt(x0 - 8) << "\" y=\"" << fmt(py(yv) + 4)
                 << "\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
        }
        out_ << "</g>\n"
             << "<text x=\"" << fmt((x0 + x1) / 2) << "\" y=\"" << fmt(y0 + 42)
             << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
             << escape(x_label) << "</text>\n"
             << "<text x=\"18\" y=\"" << fmt((y0 + y1) / 2)
             << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
             << "transform=\"rotate(-90 18 " << fmt((y0 + y1) / 2) << ")\">" << escape(y_label)
             << "</text>\n";
    }

    void begin_plot() { out_ << "<g clip-path=\"url(#plot-area)\">\n"; }
    void end_plot() { out_ << "</g>\n"; }

    // One polyline per run of present values; absent values break the line.
    void series(const std::vector<double>& xs, const std::vector<std::optional<double>>& ys,
                const std::string& cls, std::string_view color, std::string_view dash,
                double width = 2.0) {
        std::vector<std::pair<double, double>> run;
        auto flush = [&] {
            if (run.empty()) return;
            out_ << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << color
                 << "\" stroke-width=\"" << fmt(width) << '"';
            if (!dash.empty()) out_ << " stroke-dasharray=\"" << dash << '"';
            out_ << " points=\"";
            for (std::size_t i = 0; i < run.size(); ++i) {
                out_ << (i ? " " : "") << fmt(px(run[i].first)) << ',' << fmt(py(run[i].second));
            }
            out_ << "\"/>\n";
            run.clear();
        };
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (ys[i]) run.emplace_back(xs[i], *ys[i]);
            else flush();
        }
        flush();
    }

    void band(const std::vector<double>& xs, const std::vector<std::optional<double>>& lo,
              const std::vector<std::optional<double>>& hi, const std::string& cls,
              std::string_view color) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (lo[i] && hi[i]) idx.push_back(i);
        }
        if (idx.empty()) return;
        out_ << "<polygon class=\"" << cls << "\" fill=\"" << color
             << "\" fill-opacity=\"0.15\" stroke=\"none\" points=\"";
        bool first = true;
        for (auto i : idx) {
            out_ << (first ? "" : " ") << fmt(px(xs[i])) << ',' << fmt(py(*hi[i]));
            first = false;
        }
        for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
            out_ << ' ' << fmt(px(xs[*it])) << ',' << fmt(py(*lo[*it]));
        }
        out_ << "\"/>\n";
    }

    void legend(const std::vector<std::tuple<std::string, std::string_view, std::string_view>>& items) {
        const double x = style_.width - style_.margin_right + 12;
        double y = style_.margin_top + 10;
        out_ << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
        for (const auto& [label, color, dash] : items) {
            out_ << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(x + 24)
                 << "\" y2=\"" << fmt(y) << "\" stroke=\"" << color << "\" stroke-width=\"2\"";
            if (!dash.empty()) out_ << " stroke-dasharray=\"" << dash << '"';
            out_ << "/>\n<text x=\"" << fmt(x + 30) << "\" y=\"" << fmt(y + 4) << "\">"
                 << escape(label) << "</text>\n";
            y += 18;
        }
        out_ << "</g>\n";
    }

    std::string close() {
        out_ << "</svg>\n";
        return out_.str();
    }

private:
    const SvgStyle& style_;
    Range x_;
    Range y_;
    std::ostringstream out_;
};

Range x_range(const ReportDocument& doc) {
    double lo = doc.metadata.grid.lo();
    double hi = doc.metadata.grid.hi();
    for (const auto& m : doc.models) {
        for (const auto& p : m.points) {
            lo = std::min(lo, p.t);
            hi = std::max(hi, p.t);
        }
    }
    if (hi - lo < 1e-9) {
        lo = std::max(0.0, lo - 0.05);
        hi = std::min(1.0, hi + 0.05);
    }
    return {lo, hi};
}

std::vector<double> thresholds(const ModelCurve& m) {
    std::vector<double> xs;
    for (const auto& p : m.points) xs.push_back(p.t);
    return xs;
}

template <class F>
std::vector<std::optional<double>> column(const ModelCurve& m, F f) {
    std::vector<std::optional<double>> ys;
    for (const auto& p : m.points) ys.push_back(f(p));
    return ys;
}

const ModelBand* band_for(const ReportDocument& doc, const std::string& model) {
    for (const auto& b : doc.bands) {
        if (b.model == model) return &b;
    }
    return nullptr;
}

std::string render_decision(const ReportDocument& doc, const SvgStyle& style) {
    double lo = 0.0;
    double hi = 0.0;
    for (const auto& m : doc.models) {
        for (const auto& p : m.points) {
            lo = std::min({lo, p.nb_model, p.nb_all});
            hi = std::max({hi, p.nb_model, p.nb_all});
        }
    }
    lo = std::max(-0.05, lo);
    if (hi - lo < 1e-9) hi = lo + 0.1;
    Canvas canvas(style, x_range(doc), {lo, hi});
    canvas.open("Decision curve");
    canvas.axes("Threshold probability", "Net benefit");
    canvas.begin_plot();
    std::vector<std::tuple<std::string, std::string_view, std::string_view>> legend;
    for (std::size_t k = 0; k < doc.models.size(); ++k) {
        const auto& m = doc.models[k];
        const auto color = style.colors[k % style.colors.size()];
        if (const auto* b = band_for(doc, m.name)) {
            std::vector<double> xs;
            std::vector<std::optional<double>> blo, bhi;
            for (const auto& p : b->band.points) {
                xs.push_back(p.t);
                blo.emplace_back(p.nb_lower);
                bhi.emplace_back(p.nb_upper);
            }
            canvas.band(xs, blo, bhi, "nb-band", color);
        }
        canvas.series(thresholds(m), column(m, [](const CurvePoint& p) { return std::optional(p.nb_model); }),
                      "nb-model", color, {});
        legend.emplace_back(m.name, color, std::string_view{});
    }
    if (!doc.models.empty()) {
        const auto& m = doc.models.front();
        canvas.series(thresholds(m), column(m, [](const CurvePoint& p) { return std::optional(p.nb_all); }),
                      "treat-all", style.reference_color, style.long_dash, 1.5);
        canvas.series(thresholds(m), column(m, [](const CurvePoint& p) { return std::optional(p.nb_none); }),
                      "treat-none", style.reference_color, {}, 1.0);
    }
    canvas.end_plot();
    legend.emplace_back("Treat all", style.reference_color, style.long_dash);
    legend.emplace_back("Treat none", style.reference_color, std::string_view{});
    canvas.legend(legend);
    return canvas.close();
}

void diagonal(Canvas& canvas, Range x, const SvgStyle& style) {
    canvas.series({x.lo, x.hi}, {x.lo, x.hi}, "treat-none", style.reference_color, {}, 1.0);
}

std::string render_ppv(const ReportDocument& doc, const SvgStyle& style) {
    const Range x = x_range(doc);
    Canvas canvas(style, x, {0.0, 1.0});
    canvas.open("PPV curve");
    canvas.axes("Threshold probability", "Positive predictive value");
    canvas.begin_plot();
    diagonal(canvas, x, style);
    std::vector<std::tuple<std::string, std::string_view, std::string_view>> legend;
    for (std::size_t k = 0; k < doc.models.size(); ++k) {
        const auto& m = doc.models[k];
        const auto color = style.colors[k % style.colors.size()];
        if (const auto* b = band_for(doc, m.name)) {
            std::vector<double> xs;
            std::vector<std::optional<double>> blo, bhi;
            for (const auto& p : b->band.points) {
                xs.push_back(p.t);
                blo.push_back(p.ppv_lower);
                bhi.push_back(p.ppv_upper);
            }
            canvas.band(xs, blo, bhi, "ppv-band", color);
        }
        // Where nothing is selected PPV is 0 by convention; it is still drawn.
        canvas.series(thresholds(m), column(m, [](const CurvePoint& p) { return std::optional(p.ppv); }),
                      "ppv", color, {});
        canvas.series(thresholds(m), column(m, [](const CurvePoint& p) { return p.ppv_all_ref; }),
                      "ppv-all-ref", color, style.dash, 1.5);
        legend.emplace_back(m.name, color, std::string_view{});
        legend.emplace_back(m.name + " treat-all ref", color, style.dash);
    }
    canvas.end_plot();
    legend.emplace_back("Treat none (t)", style.reference_color, std::string_view{});
    canvas.legend(legend);
    return canvas.close();
}

std::string render_calibration(const ReportDocument& doc, const SvgStyle& style) {
    const Range x = x_range(doc);
    Canvas canvas(style, x, {0.0, 1.0});
    canvas.open("Observed event rate above and below threshold");
    canvas.axes("Threshold probability", "Observed event rate");
    canvas.begin_plot();
    diagonal(canvas, x, style);
    std::vector<std::tuple<std::string, std::string_view, std::string_view>> legend;
    for (std::size_t k = 0; k < doc.models.size(); ++k) {
        const auto& m = doc.models[k];
        const auto color = style.colors[k % style.colors.size()];
        canvas.series(thresholds(m), column(m, [](const CurvePoint& p) { return p.calibration.y_above; }),
                      "y-above", color, {});
        canvas.series(thresholds(m), column(m, [](const CurvePoint& p) { return p.calibration.y_below; }),
                      "y-below", color, style.long_dash);
        legend.emplace_back(m.name + " at/above t", color, std::string_view{});
        legend.emplace_back(m.name + " below t", color, style.long_dash);
    }
    canvas.end_plot();
    legend.emplace_back("Diagonal (t)", style.reference_color, std::string_view{});
    canvas.legend(legend);
    return canvas.close();
}

} // namespace

std::string render_svg(const ReportDocument& doc, Panel which, const SvgStyle& style) {
    switch (which) {
    case Panel::decision: return render_decision(doc, style);
    case Panel::ppv: return render_ppv(doc, style);
    case Panel::calibration: return render_calibration(doc, style);
    }
    throw UsageError("unknown panel");
}

} // namespace dcurve
