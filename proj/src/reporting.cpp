#include "besovlab/reporting.hpp"

#include <cmath>
#include <fstream>

namespace besovlab {

using json = nlohmann::ordered_json;

namespace {

std::string json_scalar_to_string(const json& v) {
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return format_double(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void append_table_csv(std::string& out, const std::string& table, const json& rows) {
    int index = 0;
    for (const auto& row : rows) {
        for (const auto& [field, value] : row.items()) {
            if (value.is_array()) continue;
            out += table + "," + std::to_string(index) + "," + field + "," +
                   json_scalar_to_string(value) + "\n";
        }
        ++index;
    }
}

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

std::string svg_loglog(const std::string& title, const std::vector<Series>& series,
                       double fit_slope, double fit_intercept, bool with_fit) {
    const int width = 640, height = 480, margin = 60;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Series& s : series)
        for (const auto& [x, y] : s.points) {
            if (!(x > 0.0) || !(y > 0.0)) continue;
            xmin = std::min(xmin, std::log10(x));
            xmax = std::max(xmax, std::log10(x));
            ymin = std::min(ymin, std::log10(y));
            ymax = std::max(ymax, std::log10(y));
        }
    if (xmin > xmax) {
        xmin = ymin = -1.0;
        xmax = ymax = 1.0;
    }
    if (xmax - xmin < 1e-9) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax - ymin < 1e-9) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    auto px = [&](double lx) {
        return margin + (lx - xmin) / (xmax - xmin) * (width - 2 * margin);
    };
    auto py = [&](double ly) {
        return height - margin - (ly - ymin) / (ymax - ymin) * (height - 2 * margin);
    };

    static const char* colors[] = {"#1f6fb2", "#c44e52", "#55a868", "#8172b2",
                                   "#ccb974", "#64b5cd", "#8c8c8c"};
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + std::to_string(width / 2) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"14\">" +
           title + "</text>\n";
    // axes
    svg += "<line x1=\"" + std::to_string(margin) + "\" y1=\"" +
           std::to_string(height - margin) + "\" x2=\"" + std::to_string(width - margin) +
           "\" y2=\"" + std::to_string(height - margin) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + std::to_string(margin) + "\" y1=\"" + std::to_string(margin) +
           "\" x2=\"" + std::to_string(margin) + "\" y2=\"" + std::to_string(height - margin) +
           "\" stroke=\"black\"/>\n";
    // decade ticks
    for (int d = static_cast<int>(std::ceil(xmin)); d <= std::floor(xmax); ++d) {
        const double x = px(d);
        svg += "<line x1=\"" + format_double(x) + "\" y1=\"" + std::to_string(height - margin) +
               "\" x2=\"" + format_double(x) + "\" y2=\"" +
               std::to_string(height - margin + 6) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + format_double(x) + "\" y=\"" +
               std::to_string(height - margin + 20) +
               "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">1e" +
               std::to_string(d) + "</text>\n";
    }
    for (int d = static_cast<int>(std::ceil(ymin)); d <= std::floor(ymax); ++d) {
        const double y = py(d);
        svg += "<line x1=\"" + std::to_string(margin - 6) + "\" y1=\"" + format_double(y) +
               "\" x2=\"" + std::to_string(margin) + "\" y2=\"" + format_double(y) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + std::to_string(margin - 10) + "\" y=\"" + format_double(y + 4) +
               "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">1e" +
               std::to_string(d) + "</text>\n";
    }
    if (with_fit) {
        const double y1 = fit_slope * xmin + fit_intercept;
        const double y2 = fit_slope * xmax + fit_intercept;
        svg += "<line x1=\"" + format_double(px(xmin)) + "\" y1=\"" + format_double(py(y1)) +
               "\" x2=\"" + format_double(px(xmax)) + "\" y2=\"" + format_double(py(y2)) +
               "\" stroke=\"#999999\" stroke-dasharray=\"6,4\"/>\n";
        svg += "<text x=\"" + std::to_string(width - margin) + "\" y=\"40\" "
               "text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\">slope " +
               format_double(fit_slope) + "</text>\n";
    }
    int color_index = 0;
    int legend_y = 56;
    for (const Series& s : series) {
        const char* color = colors[color_index++ % 7];
        for (const auto& [x, y] : s.points) {
            if (!(x > 0.0) || !(y > 0.0)) continue;
            svg += "<circle cx=\"" + format_double(px(std::log10(x))) + "\" cy=\"" +
                   format_double(py(std::log10(y))) + "\" r=\"3.5\" fill=\"" + color +
                   "\"/>\n";
        }
        svg += "<text x=\"" + std::to_string(width - margin) + "\" y=\"" +
               std::to_string(legend_y) + "\" text-anchor=\"end\" fill=\"" + color +
               "\" font-family=\"monospace\" font-size=\"12\">" + s.label + "</text>\n";
        legend_y += 16;
    }
    svg += "</svg>\n";
    return svg;
}

std::vector<Series> main_series(const ExperimentReport& report) {
    std::vector<Series> series;
    const json& tables = report.payload.at("tables");
    if (report.experiment == "inviscid" && tables.contains("A")) {
        Series s{"sup_t gap in B^s vs eps", {}};
        for (const auto& row : tables.at("A")) {
            const double eps = row.at("eps").get<double>();
            const double value = row.at("A").get<double>();
            if (eps > 0.0 && value > 0.0) s.points.push_back({eps, value});
        }
        series.push_back(std::move(s));
    } else if (report.experiment == "contdep" && tables.contains("modulus")) {
        std::map<std::string, Series> by_eps;
        for (const auto& row : tables.at("modulus")) {
            const double eps = row.at("eps").get<double>();
            const double delta = row.at("delta").get<double>();
            const double value = row.at("modulus").get<double>();
            std::string key = "eps=" + format_double(eps);
            auto& s = by_eps[key];
            s.label = "modulus, " + key;
            if (delta > 0.0 && value > 0.0) s.points.push_back({delta, value});
        }
        for (auto& [k, s] : by_eps) series.push_back(std::move(s));
    } else if (report.experiment == "bounds" && tables.contains("ub1")) {
        Series s{"sup_t besov_s vs eps", {}};
        for (const auto& row : tables.at("ub1")) {
            const double eps = row.at("eps").get<double>();
            const double value = row.at("sup_besov_s").get<double>();
            if (eps > 0.0 && value > 0.0) s.points.push_back({eps, value});
        }
        series.push_back(std::move(s));
    }
    return series;
}

}  // namespace

std::string report_to_csv(const ExperimentReport& report) {
    std::string out = "table,row,field,value\n";
    if (report.payload.contains("tables"))
        for (const auto& [name, rows] : report.payload.at("tables").items())
            append_table_csv(out, name, rows);
    if (report.payload.contains("fits")) {
        json fit_rows = json::array();
        for (const auto& [name, fit] : report.payload.at("fits").items()) {
            json row = fit;
            row["name"] = name;
            fit_rows.push_back(row);
        }
        append_table_csv(out, "fits", fit_rows);
    }
    if (report.payload.contains("verdicts"))
        append_table_csv(out, "verdicts", report.payload.at("verdicts"));
    return out;
}

std::string report_to_svg(const ExperimentReport& report) {
    double slope = 0.0, intercept = 0.0;
    bool with_fit = false;
    if (report.payload.contains("fits") && report.payload.at("fits").contains("A")) {
        slope = report.payload.at("fits").at("A").at("slope").get<double>();
        intercept = report.payload.at("fits").at("A").at("intercept").get<double>();
        with_fit = true;
    }
    return svg_loglog(report.experiment + " " + report.stem(), main_series(report), slope,
                      intercept, with_fit);
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir,
                  bool with_svg) {
    std::filesystem::create_directories(dir);
    const std::string stem = report.stem();

    json doc;
    doc["schema"] = 1;
    doc["experiment"] = report.experiment;
    doc["config_hash"] = stem.substr(report.experiment.size() + 2);
    doc["config"] = report.config_text;
    doc["payload"] = report.payload;
    {
        std::ofstream out(dir / (stem + ".json"));
        out << doc.dump(2) << "\n";
        if (!out) throw ConfigError("cannot write report json in " + dir.string());
    }
    {
        std::ofstream out(dir / (stem + ".csv"));
        out << report_to_csv(report);
        if (!out) throw ConfigError("cannot write report csv in " + dir.string());
    }
    if (with_svg) {
        std::ofstream out(dir / (stem + ".svg"));
        out << report_to_svg(report);
        if (!out) throw ConfigError("cannot write report svg in " + dir.string());
    }
    {
        std::ofstream out(dir / "manifest.toml");
        out << report.config_text;
        if (!out) throw ConfigError("cannot write manifest in " + dir.string());
    }
}

ExperimentReport read_report(const std::filesystem::path& json_path) {
    std::ifstream in(json_path);
    if (!in) throw ConfigError("cannot open report: " + json_path.string());
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded()) throw ConfigError("malformed report json: " + json_path.string());

    ExperimentReport report;
    report.experiment = doc.at("experiment").get<std::string>();
    report.config_text = doc.at("config").get<std::string>();
    report.config_hash = fnv1a_hash(report.config_text);
    report.payload = doc.at("payload");
    report.pass = report.payload.value("pass", false);
    if (report.payload.contains("verdicts"))
        for (const auto& v : report.payload.at("verdicts"))
            report.verdicts.push_back({v.at("name").get<std::string>(),
                                       v.at("pass").get<bool>(),
                                       v.at("value").get<double>(),
                                       v.value("detail", "")});
    return report;
}

int rerender_reports(const std::filesystem::path& dir) {
    int count = 0;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
        ExperimentReport report = read_report(path);
        {
            std::ofstream out(dir / (report.stem() + ".csv"));
            out << report_to_csv(report);
        }
        {
            std::ofstream out(dir / (report.stem() + ".svg"));
            out << report_to_svg(report);
        }
        ++count;
    }
    return count;
}

}  // namespace besovlab
