#include "rollframe/cli/emit.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace rollframe::cli {

namespace {

// Shortest decimal that round-trips the double.
std::string fmt(double x) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == x) break;
    }
    return buf;
}

} // namespace

void emit_csv(const ResultRecord& record, std::ostream& out) {
    out << "s";
    for (int i = 1; i <= record.dim_domain; ++i) out << ",coord_" << i;
    for (int i = 1; i <= record.dim_ambient; ++i) out << ",ambient_" << i;
    out << "\n";
    for (const TraceSample& row : record.rows) {
        out << fmt(row.s);
        for (int i = 0; i < record.dim_domain; ++i) out << "," << fmt(row.coords(i));
        for (int i = 0; i < record.dim_ambient; ++i) out << "," << fmt(row.ambient(i));
        out << "\n";
    }
}

void emit_json(const std::vector<ResultRecord>& records, std::ostream& out) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    auto& recs = doc["records"] = nlohmann::ordered_json::object();
    for (const ResultRecord& record : records) {
        nlohmann::ordered_json r;
        r["type"] = record.type;
        auto& summary = r["summary"] = nlohmann::ordered_json::object();
        for (const auto& [key, value] : record.summary) summary[key] = value;
        auto& rows = r["rows"] = nlohmann::ordered_json::array();
        for (const TraceSample& row : record.rows) {
            nlohmann::ordered_json line = nlohmann::ordered_json::array();
            line.push_back(row.s);
            for (int i = 0; i < record.dim_domain; ++i) line.push_back(row.coords(i));
            for (int i = 0; i < record.dim_ambient; ++i) line.push_back(row.ambient(i));
            rows.push_back(std::move(line));
        }
        recs[record.id] = std::move(r);
    }
    out << doc.dump(2) << "\n";
}

void emit_svg(const ResultRecord& record, std::ostream& out) {
    if (record.dim_domain != 2)
        throw IoError("svg output requires 2-dimensional frame coordinates");

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!record.rows.empty()) {
        xmin = ymin = 1e300;
        xmax = ymax = -1e300;
        for (const auto& row : record.rows) {
            xmin = std::min(xmin, row.coords(0));
            xmax = std::max(xmax, row.coords(0));
            ymin = std::min(ymin, row.coords(1));
            ymax = std::max(ymax, row.coords(1));
        }
    }
    const double spanx = std::max(xmax - xmin, 1e-9);
    const double spany = std::max(ymax - ymin, 1e-9);
    const double margin = 0.08 * std::max(spanx, spany);
    const double w = 640.0;
    const double scale = w / (std::max(spanx, spany) + 2 * margin);
    auto px = [&](double x) { return (x - xmin + margin) * scale; };
    auto py = [&](double y) { return w - (y - ymin + margin) * scale; };  // y up

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << w
        << "\" viewBox=\"0 0 " << w << " " << w << "\">\n";
    // tangent-plane axes through the origin of H_t coordinates
    out << "  <line x1=\"" << fmt(px(xmin - margin)) << "\" y1=\"" << fmt(py(0.0)) << "\" x2=\""
        << fmt(px(xmax + margin)) << "\" y2=\"" << fmt(py(0.0))
        << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    out << "  <line x1=\"" << fmt(px(0.0)) << "\" y1=\"" << fmt(py(ymin - margin)) << "\" x2=\""
        << fmt(px(0.0)) << "\" y2=\"" << fmt(py(ymax + margin))
        << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    out << "  <polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" points=\"";
    for (const auto& row : record.rows)
        out << fmt(px(row.coords(0))) << "," << fmt(py(row.coords(1))) << " ";
    out << "\"/>\n</svg>\n";
}

std::vector<std::filesystem::path> emit(const std::vector<ResultRecord>& records,
                                        const std::string& format,
                                        const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir.string());

    auto open = [&](const std::filesystem::path& p) {
        std::ofstream f(p, std::ios::binary);
        if (!f) throw IoError("cannot open " + p.string() + " for writing");
        return f;
    };

    std::vector<std::filesystem::path> written;
    if (format == "json") {
        const auto path = out_dir / "results.json";
        auto f = open(path);
        emit_json(records, f);
        written.push_back(path);
        return written;
    }
    for (const ResultRecord& record : records) {
        std::string ext = format;
        if (format == "svg" && record.dim_domain != 2) {
            // plots need a 2D tangent plane; fall back to data output
            std::cerr << "[rollframe] task '" << record.id
                      << "': svg needs 2D frame coordinates, writing csv instead\n";
            ext = "csv";
        }
        const auto path = out_dir / (record.output + "." + ext);
        auto f = open(path);
        if (ext == "csv") emit_csv(record, f);
        else if (ext == "svg") emit_svg(record, f);
        else throw IoError("unknown output format '" + format + "'");
        written.push_back(path);
    }
    return written;
}

} // namespace rollframe::cli
