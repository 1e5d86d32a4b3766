#pragma once

// Cloud file formats (csv, xyz, json), JSON report serialization, and
// deterministic SVG plots. All writes are atomic: content goes to a
// temporary file that is renamed over the destination.

#include <array>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mucrit/bounds.hpp"
#include "mucrit/cech.hpp"
#include "mucrit/cone_field.hpp"
#include "mucrit/error.hpp"
#include "mucrit/flow.hpp"
#include "mucrit/point_cloud.hpp"
#include "mucrit/scan.hpp"
#include "mucrit/stability.hpp"
#include "mucrit/version.hpp"

namespace mucrit {

enum class CloudFormat { Csv, Xyz, Json };

inline CloudFormat format_from_path(const std::string& path) {
    const std::string ext = std::filesystem::path(path).extension().string();
    if (ext == ".csv") return CloudFormat::Csv;
    if (ext == ".xyz") return CloudFormat::Xyz;
    if (ext == ".json") return CloudFormat::Json;
    throw Error("cannot infer cloud format from extension: " + path);
}

namespace detail {

inline void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(out.good(), "cannot open output file");
        out << content;
        require(out.good(), "write failed");
    }
    std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline double parse_coordinate(std::string_view token, long line_no) {
    std::size_t b = 0, e = token.size();
    while (b < e && (token[b] == ' ' || token[b] == '\t' || token[b] == '\r')) ++b;
    while (e > b && (token[e - 1] == ' ' || token[e - 1] == '\t' ||
                     token[e - 1] == '\r'))
        --e;
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data() + b, token.data() + e, value);
    if (ec != std::errc{} || ptr != token.data() + e)
        throw Error("parse error at line " + std::to_string(line_no) +
                    ": bad coordinate '" + std::string(token.substr(b, e - b)) +
                    "'");
    return value;
}

inline PointCloud parse_delimited(const std::string& text, char delim) {
    std::vector<Vec> rows;
    std::istringstream in(text);
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        Vec row;
        if (delim == ',') {
            std::size_t pos = 0;
            while (true) {
                const std::size_t next = line.find(',', pos);
                row.push_back(parse_coordinate(
                    std::string_view(line).substr(pos, next - pos), line_no));
                if (next == std::string::npos) break;
                pos = next + 1;
            }
        } else {
            std::istringstream ls(line);
            std::string token;
            while (ls >> token) row.push_back(parse_coordinate(token, line_no));
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw Error("parse error at line " + std::to_string(line_no) +
                        ": expected " + std::to_string(rows.front().size()) +
                        " coordinates, got " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    require(!rows.empty(), "file holds no points");
    return PointCloud::from_rows(rows);
}

inline std::string format_coordinate(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

inline PointCloud load_cloud(const std::string& path,
                             std::optional<CloudFormat> format = std::nullopt) {
    const CloudFormat f = format ? *format : format_from_path(path);
    const std::string text = detail::read_file(path);
    switch (f) {
        case CloudFormat::Csv: return detail::parse_delimited(text, ',');
        case CloudFormat::Xyz: return detail::parse_delimited(text, ' ');
        case CloudFormat::Json: {
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(text);
            } catch (const nlohmann::json::exception& e) {
                throw Error(std::string("parse error: ") + e.what());
            }
            if (!j.is_object() || !j.contains("dim") || !j.contains("points"))
                throw Error("parse error: expected {\"dim\": d, \"points\": [...]}");
            const int dim = j.at("dim").get<int>();
            require(dim >= 1, "dimension must be positive");
            PointCloud cloud(dim);
            for (const auto& row : j.at("points")) {
                const Vec p = row.get<Vec>();
                if (static_cast<int>(p.size()) != dim)
                    throw Error("parse error: point dimension mismatch");
                cloud.add(p);
            }
            require(cloud.size() > 0, "file holds no points");
            return cloud;
        }
    }
    throw Error("unknown cloud format");
}

inline void save_cloud(const std::string& path, const PointCloud& cloud,
                       std::optional<CloudFormat> format = std::nullopt) {
    const CloudFormat f = format ? *format : format_from_path(path);
    std::string out;
    if (f == CloudFormat::Json) {
        nlohmann::json j;
        j["dim"] = cloud.dim();
        auto& pts = j["points"] = nlohmann::json::array();
        for (int i = 0; i < cloud.size(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (double v : cloud.point(i)) row.push_back(v);
            pts.push_back(std::move(row));
        }
        out = j.dump(2);
        out += '\n';
    } else {
        const char delim = f == CloudFormat::Csv ? ',' : ' ';
        for (int i = 0; i < cloud.size(); ++i) {
            const auto p = cloud.point(i);
            for (int d = 0; d < cloud.dim(); ++d) {
                if (d > 0) out += delim;
                out += detail::format_coordinate(p[d]);
            }
            out += '\n';
        }
    }
    detail::atomic_write(path, out);
}

// -- JSON serialization (nlohmann ADL hooks) --------------------------------

inline nlohmann::json generator_stamp() {
    return {{"name", "mucrit"}, {"version", std::string(kVersion)}};
}

inline void to_json(nlohmann::json& j, const AnnulusSpec& a) {
    j = {{"a", a.a}, {"b", a.b}};
}

inline void to_json(nlohmann::json& j, const ScanEvaluation& e) {
    j = {{"x", e.x}, {"dist", e.dist}, {"norm", e.norm}};
}

inline void to_json(nlohmann::json& j, const CriticalScanReport& r) {
    j = {{"annulus", r.annulus},
         {"spacing", r.spacing},
         {"samples", r.samples},
         {"min_norm", r.min_norm},
         {"argmin", r.argmin},
         {"profile", r.profile},
         {"empirical", true},
         {"generator", generator_stamp()}};
    if (r.mu_queried) j["mu"] = *r.mu_queried;
    if (r.mu_free) j["mu_free"] = *r.mu_free;
    if (!r.evaluations.empty()) j["evaluations"] = r.evaluations;
}

inline void to_json(nlohmann::json& j, const SlackEntry& s) {
    j = {{"value", s.value},
         {"threshold", s.threshold},
         {"strict", s.strict},
         {"pass", s.pass}};
}

inline void to_json(nlohmann::json& j, const Certificate& c) {
    j = {{"verdict", c.verdict},
         {"required_annulus", c.required_annulus},
         {"inequality_slacks", c.inequality_slacks},
         {"theorem_applied", c.theorem_applied},
         {"caveats", c.caveats},
         {"generator", generator_stamp()}};
    if (c.empirical_scan) j["empirical_scan"] = *c.empirical_scan;
}

inline void to_json(nlohmann::json& j, const FlowTrace& t) {
    j = {{"points", t.points},
         {"dists", t.dists},
         {"norms", t.norms},
         {"terminated", to_string(t.terminated)}};
}

inline void to_json(nlohmann::json& j, const TraceCheck& c) {
    j = {{"start", c.start},
         {"terminated", to_string(c.terminated)},
         {"reached", c.reached},
         {"stayed_inside", c.stayed_inside},
         {"max_dist_other", c.max_dist_other},
         {"monotone", c.monotone},
         {"steps", c.steps}};
}

inline void to_json(nlohmann::json& j, const RetractionReport& r) {
    j = {{"hausdorff_measured", r.hausdorff_measured},
         {"r", r.r},
         {"delta", r.delta},
         {"target", r.target},
         {"traces", r.traces},
         {"pass_fraction", r.pass_fraction},
         {"shell_points", r.shell_points},
         {"empirical", true},
         {"generator", generator_stamp()}};
}

inline void to_json(nlohmann::json& j, const StabilityWitnessReport& r) {
    j = {{"hausdorff_measured", r.hausdorff_measured},
         {"delta_used", r.delta_used},
         {"x_dist", r.x_dist},
         {"x_norm", r.x_norm},
         {"tolerance", r.tolerance},
         {"witness_radius", r.witness_radius},
         {"condition_strict", r.condition_strict},
         {"found", r.found},
         {"witness_norm", r.witness_norm},
         {"witness_dist", r.witness_dist},
         {"examined", r.examined},
         {"empirical", true},
         {"generator", generator_stamp()}};
    if (r.found) j["witness"] = r.witness;
}

inline void to_json(nlohmann::json& j, const SemicontinuityProbeEntry& e) {
    j = {{"eta", e.eta},
         {"epsilon", e.epsilon},
         {"max_violation", e.max_violation},
         {"pairs_used", e.pairs_used}};
}

inline void to_json(nlohmann::json& j, const SemicontinuityProbeReport& r) {
    j = {{"entries", r.entries},
         {"empirical", true},
         {"generator", generator_stamp()}};
}

inline void to_json(nlohmann::json& j, const BettiVector& b) {
    j = {{"betti", b.betti}};
}

inline void save_report(const std::string& path, const nlohmann::json& j) {
    detail::atomic_write(path, j.dump(2) + "\n");
}

// -- SVG plots ---------------------------------------------------------------

struct PlotSpec {
    const PointCloud* cloud = nullptr;          // required, dimension 2
    const CriticalScanReport* scan = nullptr;   // heat layer (needs evaluations)
    std::optional<AnnulusSpec> annulus;         // offset circles per cloud point
    std::vector<FlowTrace> traces;
};

namespace detail {

inline std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

// red (norm 0) through violet to blue (norm 1)
inline std::string heat_color(double norm) {
    const double t = std::clamp(norm, 0.0, 1.0);
    const int r = static_cast<int>(std::lround(255.0 * (1.0 - t)));
    const int b = static_cast<int>(std::lround(255.0 * t));
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x20%02x", r, b);
    return buf;
}

}  // namespace detail

// Deterministic SVG: heat squares from scan evaluations, faint annulus
// circles around each cloud point, the cloud itself, and flow traces.
inline void save_plot(const std::string& path, const PlotSpec& spec) {
    require(spec.cloud != nullptr, "plot needs a cloud");
    require(spec.cloud->dim() == 2, "plots are 2d only");
    const PointCloud& cloud = *spec.cloud;

    double pad_world = spec.annulus ? spec.annulus->b : 0.0;
    if (spec.scan) pad_world = std::max(pad_world, spec.scan->annulus.b);
    auto [lo, hi] = cloud.bounding_box();
    lo[0] -= pad_world;
    lo[1] -= pad_world;
    hi[0] += pad_world;
    hi[1] += pad_world;
    const double span_x = std::max(hi[0] - lo[0], 1e-9);
    const double span_y = std::max(hi[1] - lo[1], 1e-9);

    const double width = 900.0;
    const double margin = 20.0;
    const double scale = (width - 2.0 * margin) / span_x;
    const double height = span_y * scale + 2.0 * margin;
    const auto X = [&](double x) { return margin + (x - lo[0]) * scale; };
    const auto Y = [&](double y) { return height - margin - (y - lo[1]) * scale; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           detail::fmt6(width) + "\" height=\"" + detail::fmt6(height) +
           "\" viewBox=\"0 0 " + detail::fmt6(width) + " " +
           detail::fmt6(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    if (spec.scan && !spec.scan->evaluations.empty()) {
        const double side = spec.scan->spacing * scale;
        for (const ScanEvaluation& e : spec.scan->evaluations) {
            svg += "<rect x=\"" + detail::fmt6(X(e.x[0]) - side / 2) + "\" y=\"" +
                   detail::fmt6(Y(e.x[1]) - side / 2) + "\" width=\"" +
                   detail::fmt6(side) + "\" height=\"" + detail::fmt6(side) +
                   "\" fill=\"" + detail::heat_color(e.norm) +
                   "\" fill-opacity=\"0.6\"/>\n";
        }
    }

    if (spec.annulus) {
        for (int i = 0; i < cloud.size(); ++i) {
            const auto p = cloud.point(i);
            for (double rad : {spec.annulus->a, spec.annulus->b}) {
                if (rad <= 0.0) continue;
                svg += "<circle cx=\"" + detail::fmt6(X(p[0])) + "\" cy=\"" +
                       detail::fmt6(Y(p[1])) + "\" r=\"" +
                       detail::fmt6(rad * scale) +
                       "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"0.4\""
                       " stroke-opacity=\"0.5\"/>\n";
            }
        }
    }

    for (int i = 0; i < cloud.size(); ++i) {
        const auto p = cloud.point(i);
        svg += "<circle cx=\"" + detail::fmt6(X(p[0])) + "\" cy=\"" +
               detail::fmt6(Y(p[1])) + "\" r=\"2\" fill=\"black\"/>\n";
    }

    for (const FlowTrace& trace : spec.traces) {
        if (trace.points.empty()) continue;
        svg += "<polyline fill=\"none\" stroke=\"#e07020\" stroke-width=\"1.5\""
               " points=\"";
        for (std::size_t k = 0; k < trace.points.size(); ++k) {
            if (k > 0) svg += ' ';
            svg += detail::fmt6(X(trace.points[k][0])) + "," +
                   detail::fmt6(Y(trace.points[k][1]));
        }
        svg += "\"/>\n";
    }

    svg += "</svg>\n";
    detail::atomic_write(path, svg);
}

}  // namespace mucrit
