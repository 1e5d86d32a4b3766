// mucrit — command-line front end for the critical-point analysis library.
//
// Subcommands
//   gen       synthesize a sample cloud from a named shape
//   scan      grid-scan an annulus of a distance field for low gradient norms
//   certify   evaluate an offset-reconstruction certificate
//   flow      integrate gradient-flow traces or verify an offset retraction
//   homology  Betti numbers of the Cech complex at a fixed radius
//   bounds    tabulate sampling-density bounds and locate their crossover
//
// Every parameter can also come from a single JSON config file (--config).
// Config keys match the long option names without the leading dashes, either
// at the top level or nested under a subcommand name; command-line flags
// override config values. Exit codes: 0 = verdict true / success,
// 1 = verdict false, 2 = error. Thread count falls back to the
// MUCRIT_THREADS environment variable when --threads is 0.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <mucrit/mucrit.hpp>

namespace {

using nlohmann::json;

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

bool is_set(double v) { return !std::isnan(v); }

double need(double v, const char* flag) {
    if (!is_set(v))
        throw mucrit::Error(std::string("missing required parameter ") + flag +
                            " (pass the flag or set it in the config file)");
    return v;
}

const std::string& need(const std::string& v, const char* flag) {
    if (v.empty())
        throw mucrit::Error(std::string("missing required parameter ") + flag +
                            " (pass the flag or set it in the config file)");
    return v;
}

// -- config file -------------------------------------------------------------

const std::set<std::string> kSubcommands = {"gen",  "scan",     "certify",
                                            "flow", "homology", "bounds"};

std::string find_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return {};
}

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw mucrit::Error("cannot open config file: " + path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw mucrit::Error(std::string("config parse error: ") + e.what());
    }
    if (!cfg.is_object()) throw mucrit::Error("config file must hold a JSON object");
    return cfg;
}

// Top-level keys apply to every subcommand; an object named after a
// subcommand overrides them for that subcommand only.
json merged_config(const json& cfg, const std::string& sub) {
    json m = json::object();
    for (const auto& [k, v] : cfg.items())
        if (kSubcommands.find(k) == kSubcommands.end()) m[k] = v;
    if (cfg.contains(sub)) {
        const json& s = cfg.at(sub);
        if (!s.is_object())
            throw mucrit::Error("config entry '" + sub + "' must be an object");
        for (const auto& [k, v] : s.items()) m[k] = v;
    }
    return m;
}

// Applies a config value unless the matching --<key> flag was parsed,
// so the command line always wins over the config file.
template <typename T>
void from_config(const CLI::App* sub, const json& c, const char* key, T& out) {
    if (!c.contains(key)) return;
    if (sub->count(std::string("--") + key) > 0) return;
    try {
        out = c.at(key).get<T>();
    } catch (const json::exception&) {
        throw mucrit::Error(std::string("config key '") + key + "' has the wrong type");
    }
}

// -- small parsers -------------------------------------------------------------

std::pair<std::string, double> parse_name_value(const std::string& s) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
        throw mucrit::Error("bad parameter '" + s + "': expected name=value");
    const std::string name = s.substr(0, eq);
    const std::string value = s.substr(eq + 1);
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return {name, v};
    } catch (const std::exception&) {
        throw mucrit::Error("bad parameter '" + s + "': '" + value + "' is not a number");
    }
}

mucrit::Vec parse_point(const std::string& s) {
    mucrit::Vec p;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto comma = s.find(',', pos);
        const std::string tok =
            s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            p.push_back(v);
        } catch (const std::exception&) {
            throw mucrit::Error("bad start point '" + s + "': '" + tok + "' is not a number");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (p.empty()) throw mucrit::Error("bad start point '" + s + "'");
    return p;
}

std::optional<mucrit::CloudFormat> parse_format(const std::string& name) {
    if (name.empty()) return std::nullopt;
    if (name == "csv") return mucrit::CloudFormat::Csv;
    if (name == "xyz") return mucrit::CloudFormat::Xyz;
    if (name == "json") return mucrit::CloudFormat::Json;
    throw mucrit::Error("unknown cloud format: " + name + " (expected csv, xyz, or json)");
}

mucrit::PointCloud load(const std::string& path, const std::string& format) {
    return mucrit::load_cloud(path, parse_format(format));
}

void emit_report(const std::string& out_path, const json& j) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        mucrit::save_report(out_path, j);
        std::cerr << "report written to " << out_path << "\n";
    }
}

std::string point_label(const mucrit::Vec& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ", ";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", p[i]);
        s += buf;
    }
    return s;
}

// -- gen ----------------------------------------------------------------------

struct GenArgs {
    std::string kind;
    std::vector<std::string> params;  // name=value pairs
    int count = 100;
    double noise = 0.0;
    unsigned seed = 1;
    std::string out;
    std::string format;
    std::string meta;
};

int run_gen(const CLI::App* sub, GenArgs& a, const json& cfg) {
    from_config(sub, cfg, "kind", a.kind);
    from_config(sub, cfg, "count", a.count);
    from_config(sub, cfg, "noise", a.noise);
    from_config(sub, cfg, "seed", a.seed);
    from_config(sub, cfg, "out", a.out);
    from_config(sub, cfg, "format", a.format);
    from_config(sub, cfg, "meta", a.meta);

    mucrit::ShapeSpec spec;
    spec.kind = mucrit::shape_kind_from_string(need(a.kind, "--kind"));
    spec.count = a.count;
    spec.noise = a.noise;
    spec.seed = a.seed;
    if (cfg.contains("params")) {
        const json& p = cfg.at("params");
        if (!p.is_object()) throw mucrit::Error("config key 'params' must be an object");
        for (const auto& [k, v] : p.items()) spec.params[k] = v.get<double>();
    }
    for (const auto& s : a.params) {
        const auto [name, value] = parse_name_value(s);
        spec.params[name] = value;  // command-line pairs override config pairs
    }

    const mucrit::GeneratedCloud g = mucrit::generate(spec);
    mucrit::save_cloud(need(a.out, "--out"), g.cloud, parse_format(a.format));

    if (!a.meta.empty()) {
        json meta = {{"kind", mucrit::to_string(spec.kind)},
                     {"count", spec.count},
                     {"noise", spec.noise},
                     {"seed", spec.seed},
                     {"params", spec.params},
                     {"points", g.cloud.size()},
                     {"dim", g.cloud.dim()},
                     {"dh_bound", g.dh_bound},
                     {"generator", mucrit::generator_stamp()}};
        mucrit::save_report(a.meta, meta);
    }

    std::printf("generated %s cloud: %d points, dim %d, Hausdorff bound %.6g -> %s\n",
                mucrit::to_string(spec.kind).c_str(), g.cloud.size(), g.cloud.dim(),
                g.dh_bound, a.out.c_str());
    return 0;
}

// -- scan ---------------------------------------------------------------------

struct ScanArgs {
    std::string cloud;
    std::string format;
    double annulus_a = kUnset;
    double annulus_b = kUnset;
    double h = 0.01;
    double mu = kUnset;
    int threads = 0;
    bool keep_evaluations = false;
    std::string out;
    std::string plot;
};

int run_scan(const CLI::App* sub, ScanArgs& a, const json& cfg) {
    from_config(sub, cfg, "cloud", a.cloud);
    from_config(sub, cfg, "format", a.format);
    from_config(sub, cfg, "annulus-a", a.annulus_a);
    from_config(sub, cfg, "annulus-b", a.annulus_b);
    from_config(sub, cfg, "h", a.h);
    from_config(sub, cfg, "mu", a.mu);
    from_config(sub, cfg, "threads", a.threads);
    from_config(sub, cfg, "keep-evaluations", a.keep_evaluations);
    from_config(sub, cfg, "out", a.out);
    from_config(sub, cfg, "plot", a.plot);

    const mucrit::PointCloud cloud = load(need(a.cloud, "--cloud"), a.format);
    const mucrit::AnnulusSpec annulus{need(a.annulus_a, "--annulus-a"),
                                      need(a.annulus_b, "--annulus-b")};

    mucrit::ScanParams params;
    params.h = a.h;
    params.threads = a.threads;
    params.keep_evaluations = a.keep_evaluations || !a.plot.empty();

    const std::optional<double> mu =
        is_set(a.mu) ? std::optional<double>(a.mu) : std::nullopt;

    std::cerr << "scanning annulus [" << annulus.a << ", " << annulus.b
              << "] at spacing " << params.h << " over " << cloud.size()
              << " points (dim " << cloud.dim() << ")...\n";
    const auto t0 = std::chrono::steady_clock::now();
    const mucrit::CriticalScanReport report =
        mucrit::critical_scan(cloud, annulus, params, mu);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "scan finished: " << report.samples << " samples in " << secs
              << " s, min gradient norm " << report.min_norm << "\n";

    emit_report(a.out, json(report));

    if (!a.plot.empty()) {
        mucrit::PlotSpec plot;
        plot.cloud = &cloud;
        plot.scan = &report;
        plot.annulus = annulus;
        mucrit::save_plot(a.plot, plot);
        std::cerr << "plot written to " << a.plot << "\n";
    }

    if (mu) return report.mu_free.value_or(false) ? 0 : 1;
    return 0;
}

// -- certify --------------------------------------------------------------------

struct CertifyArgs {
    std::string cloud;
    std::string other;
    std::string format;
    double mu = kUnset;
    double r = kUnset;
    double delta = kUnset;
    std::string kappa = "zero";
    std::string role = "reconstructed";
    double window_a = kUnset;
    double window_b = kUnset;
    bool conservative = false;
    double h = 0.01;
    int threads = 0;
    bool keep_evaluations = false;
    std::string out;
    std::string plot;
};

int run_certify(const CLI::App* sub, CertifyArgs& a, const json& cfg) {
    from_config(sub, cfg, "cloud", a.cloud);
    from_config(sub, cfg, "other", a.other);
    from_config(sub, cfg, "format", a.format);
    from_config(sub, cfg, "mu", a.mu);
    from_config(sub, cfg, "r", a.r);
    from_config(sub, cfg, "delta", a.delta);
    from_config(sub, cfg, "kappa", a.kappa);
    from_config(sub, cfg, "role", a.role);
    from_config(sub, cfg, "window-a", a.window_a);
    from_config(sub, cfg, "window-b", a.window_b);
    from_config(sub, cfg, "conservative", a.conservative);
    from_config(sub, cfg, "h", a.h);
    from_config(sub, cfg, "threads", a.threads);
    from_config(sub, cfg, "keep-evaluations", a.keep_evaluations);
    from_config(sub, cfg, "out", a.out);
    from_config(sub, cfg, "plot", a.plot);

    const mucrit::PointCloud scanned = load(need(a.cloud, "--cloud"), a.format);
    std::optional<mucrit::PointCloud> other;
    if (!a.other.empty()) other = load(a.other, a.format);

    mucrit::CertificateQuery query;
    query.mu = need(a.mu, "--mu");
    query.r = need(a.r, "--r");
    query.delta = need(a.delta, "--delta");
    query.conservative_annulus = a.conservative;

    if (a.kappa == "zero") {
        query.kappa = mucrit::CurvatureClass::Zero;
    } else if (a.kappa == "minus-one") {
        query.kappa = mucrit::CurvatureClass::MinusOne;
    } else {
        throw mucrit::Error("unknown curvature class: " + a.kappa +
                            " (expected zero or minus-one)");
    }

    if (a.role == "reconstructed") {
        query.role = mucrit::CertificateRole::CriticalFreeOnS;
    } else if (a.role == "annulus") {
        query.role = mucrit::CertificateRole::CriticalFreeOnA;
    } else {
        throw mucrit::Error("unknown cloud role: " + a.role +
                            " (expected reconstructed or annulus)");
    }

    if (is_set(a.window_a) != is_set(a.window_b))
        throw mucrit::Error("--window-a and --window-b must be given together");
    if (is_set(a.window_a)) query.annulus_ab = mucrit::AnnulusSpec{a.window_a, a.window_b};

    mucrit::ScanParams params;
    params.h = a.h;
    params.threads = a.threads;
    params.keep_evaluations = a.keep_evaluations || !a.plot.empty();

    std::cerr << "certifying offset radius " << query.r << " (mu " << query.mu
              << ", delta " << query.delta << ")...\n";
    const mucrit::Certificate cert =
        mucrit::certify(scanned, other ? &*other : nullptr, query, params);

    std::printf("verdict: %s\n", cert.verdict ? "true" : "false");
    std::printf("theorem applied: %s\n", cert.theorem_applied.c_str());
    std::printf("required annulus: [%.6g, %.6g]\n", cert.required_annulus.a,
                cert.required_annulus.b);
    for (const auto& [name, slack] : cert.inequality_slacks)
        std::printf("  %-28s measured %-12.6g threshold %-12.6g %s[%s]\n",
                    name.c_str(), slack.value, slack.threshold,
                    slack.strict ? "(strict) " : "", slack.pass ? "pass" : "FAIL");
    for (const auto& caveat : cert.caveats) std::printf("caveat: %s\n", caveat.c_str());

    emit_report(a.out, json(cert));

    if (!a.plot.empty()) {
        mucrit::PlotSpec plot;
        plot.cloud = &scanned;
        if (cert.empirical_scan && !cert.empirical_scan->evaluations.empty())
            plot.scan = &*cert.empirical_scan;
        plot.annulus = cert.required_annulus;
        mucrit::save_plot(a.plot, plot);
        std::cerr << "plot written to " << a.plot << "\n";
    }

    return cert.verdict ? 0 : 1;
}

// -- flow -----------------------------------------------------------------------

struct FlowArgs {
    std::string cloud;
    std::string other;
    std::string format;
    double r = kUnset;
    double delta = kUnset;
    double h_f = 0.005;
    long max_steps = 100000;
    int n_starts = 64;
    double shell_h = 0.0;
    int threads = 0;
    std::vector<std::string> starts;
    std::string out;
    std::string plot;
};

int run_flow(const CLI::App* sub, FlowArgs& a, const json& cfg) {
    from_config(sub, cfg, "cloud", a.cloud);
    from_config(sub, cfg, "other", a.other);
    from_config(sub, cfg, "format", a.format);
    from_config(sub, cfg, "r", a.r);
    from_config(sub, cfg, "delta", a.delta);
    from_config(sub, cfg, "h-f", a.h_f);
    from_config(sub, cfg, "max-steps", a.max_steps);
    from_config(sub, cfg, "n-starts", a.n_starts);
    from_config(sub, cfg, "shell-h", a.shell_h);
    from_config(sub, cfg, "threads", a.threads);
    from_config(sub, cfg, "out", a.out);
    from_config(sub, cfg, "plot", a.plot);

    std::vector<mucrit::Vec> starts;
    if (!a.starts.empty()) {
        for (const auto& s : a.starts) starts.push_back(parse_point(s));
    } else if (cfg.contains("starts")) {
        for (const auto& row : cfg.at("starts")) starts.push_back(row.get<mucrit::Vec>());
    }

    const mucrit::PointCloud cloud = load(need(a.cloud, "--cloud"), a.format);
    const double r = need(a.r, "--r");
    const double delta = need(a.delta, "--delta");

    if (!starts.empty()) {
        // Explicit starts: integrate each trace down to the (r - delta)-offset.
        const double target = r - delta;
        mucrit::FlowParams params;
        params.h_f = a.h_f;
        params.max_steps = a.max_steps;
        const mucrit::DistanceField field(cloud);

        std::vector<mucrit::FlowTrace> traces;
        bool all_reached = true;
        for (const auto& start : starts) {
            traces.push_back(mucrit::integrate_flow(start, field, target, params));
            const auto& t = traces.back();
            all_reached &= t.terminated == mucrit::FlowTermination::ReachedTarget;
            std::printf("trace from (%s): %s after %zu steps, final level %.6g\n",
                        point_label(t.points.front()).c_str(),
                        mucrit::to_string(t.terminated).c_str(), t.points.size() - 1,
                        t.dists.back());
        }

        const json out = {{"r", r},
                          {"delta", delta},
                          {"target", target},
                          {"traces", traces},
                          {"all_reached", all_reached},
                          {"empirical", true},
                          {"generator", mucrit::generator_stamp()}};
        emit_report(a.out, out);

        if (!a.plot.empty()) {
            mucrit::PlotSpec plot;
            plot.cloud = &cloud;
            plot.annulus = mucrit::AnnulusSpec{target, r};
            plot.traces = traces;
            mucrit::save_plot(a.plot, plot);
            std::cerr << "plot written to " << a.plot << "\n";
        }
        return all_reached ? 0 : 1;
    }

    // Retraction verification: flow boundary-shell starts of the r-offset
    // down to the (r - delta)-offset and check every trace.
    const mucrit::PointCloud* scanned = &cloud;
    std::optional<mucrit::PointCloud> other;
    if (!a.other.empty()) {
        other = load(a.other, a.format);
        scanned = &*other;
    }

    mucrit::RetractParams params;
    params.h_f = a.h_f;
    params.max_steps = a.max_steps;
    params.n_starts = a.n_starts;
    params.shell_h = a.shell_h;
    params.threads = a.threads;

    std::cerr << "verifying retraction from the " << r << "-offset to the "
              << (r - delta) << "-offset with " << params.n_starts << " starts...\n";
    const mucrit::RetractionReport report =
        mucrit::verify_retraction(cloud, *scanned, r, delta, params);

    std::printf("retraction pass fraction: %.4f (%zu traces, %ld shell candidates)\n",
                report.pass_fraction, report.traces.size(), report.shell_points);

    emit_report(a.out, json(report));

    if (!a.plot.empty()) {
        mucrit::PlotSpec plot;
        plot.cloud = &cloud;
        plot.annulus = mucrit::AnnulusSpec{report.target, r};
        mucrit::save_plot(a.plot, plot);
        std::cerr << "plot written to " << a.plot << " (cloud and annulus only; "
                     "pass explicit --start points to plot traces)\n";
    }

    return report.pass_fraction == 1.0 ? 0 : 1;
}

// -- homology ---------------------------------------------------------------------

struct HomologyArgs {
    std::string cloud;
    std::string format;
    double r = kUnset;
    int max_dim = 2;
    std::string out;
};

int run_homology(const CLI::App* sub, HomologyArgs& a, const json& cfg) {
    from_config(sub, cfg, "cloud", a.cloud);
    from_config(sub, cfg, "format", a.format);
    from_config(sub, cfg, "r", a.r);
    from_config(sub, cfg, "max-dim", a.max_dim);
    from_config(sub, cfg, "out", a.out);

    const mucrit::PointCloud cloud = load(need(a.cloud, "--cloud"), a.format);
    const double r = need(a.r, "--r");
    if (!(r > 0.0)) throw mucrit::Error("radius must be positive");

    std::cerr << "building Cech complex at radius " << r << " (dimension cap "
              << a.max_dim << ") over " << cloud.size() << " points...\n";
    const auto t0 = std::chrono::steady_clock::now();
    const mucrit::SimplicialComplex complex = mucrit::cech_complex(cloud, r, a.max_dim);
    const mucrit::BettiVector bv = mucrit::betti(complex, a.max_dim);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::vector<long> counts(static_cast<std::size_t>(complex.max_dim) + 1, 0);
    for (const auto& s : complex.simplices) ++counts[s.vertices.size() - 1];

    std::cerr << complex.simplices.size() << " simplices (attained dimension "
              << complex.max_dim << ") in " << secs << " s\n";
    for (std::size_t k = 0; k < bv.betti.size(); ++k)
        std::printf("betti_%zu = %ld\n", k, bv.betti[k]);
    std::printf("euler characteristic = %ld\n", mucrit::euler_characteristic(complex));
    const bool capped = complex.max_dim == a.max_dim;
    if (capped)
        std::printf("note: the complex is capped at dimension %d, so betti_%d counts "
                    "cycles the missing higher simplices would fill; trust betti_k only "
                    "for k < %d\n",
                    a.max_dim, a.max_dim, a.max_dim);

    json out = {{"r", r},
                {"max_dim", a.max_dim},
                {"attained_dim", complex.max_dim},
                {"simplex_counts", counts},
                {"betti", bv.betti},
                {"euler_characteristic", mucrit::euler_characteristic(complex)},
                {"generator", mucrit::generator_stamp()}};
    if (capped)
        out["caveat"] = "betti at the cap dimension reflects the dimension cap, not the "
                        "underlying space";
    emit_report(a.out, out);
    return 0;
}

// -- bounds -----------------------------------------------------------------------

struct BoundsArgs {
    double mu_lo = 0.05;
    double mu_hi = 0.95;
    int steps = 19;
    std::string out;
};

int run_bounds(const CLI::App* sub, BoundsArgs& a, const json& cfg) {
    from_config(sub, cfg, "mu-lo", a.mu_lo);
    from_config(sub, cfg, "mu-hi", a.mu_hi);
    from_config(sub, cfg, "steps", a.steps);
    from_config(sub, cfg, "out", a.out);

    if (!(a.mu_lo > 0.0 && a.mu_hi <= 1.0 && a.mu_lo <= a.mu_hi))
        throw mucrit::Error("mu grid must satisfy 0 < mu-lo <= mu-hi <= 1");
    if (a.steps < 1) throw mucrit::Error("steps must be at least 1");

    std::printf("%10s %12s %12s %12s\n", "mu", "ours", "classic", "radical");
    json rows = json::array();
    for (int i = 0; i < a.steps; ++i) {
        const double mu =
            a.steps == 1 ? a.mu_lo
                         : a.mu_lo + (a.mu_hi - a.mu_lo) * i / double(a.steps - 1);
        const double ours = mucrit::bound_ours(mu);
        const double classic = mucrit::bound_classic(mu);
        const double radical = mucrit::bound_radical(mu);
        std::printf("%10.4f %12.8f %12.8f %12.8f\n", mu, ours, classic, radical);
        rows.push_back(
            {{"mu", mu}, {"ours", ours}, {"classic", classic}, {"radical", radical}});
    }

    json crossings = json::object();
    const auto report_crossing = [&](const char* name, double (*f)(double),
                                     double (*g)(double)) {
        const auto x = mucrit::crossover(f, g, a.mu_lo, a.mu_hi);
        if (x) {
            std::printf("crossover %s on (%.4g, %.4g): mu = %.8f\n", name, a.mu_lo,
                        a.mu_hi, *x);
            crossings[name] = *x;
        } else {
            std::printf("crossover %s on (%.4g, %.4g): none (no sign change)\n", name,
                        a.mu_lo, a.mu_hi);
            crossings[name] = nullptr;
        }
    };
    report_crossing("ours/classic", mucrit::bound_ours, mucrit::bound_classic);
    report_crossing("ours/radical", mucrit::bound_ours, mucrit::bound_radical);

    if (!a.out.empty()) {
        const json out = {{"rows", rows},
                          {"crossover", crossings},
                          {"generator", mucrit::generator_stamp()}};
        mucrit::save_report(a.out, out);
        std::cerr << "report written to " << a.out << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::string config_path;
    GenArgs gen_args;
    ScanArgs scan_args;
    CertifyArgs certify_args;
    FlowArgs flow_args;
    HomologyArgs homology_args;
    BoundsArgs bounds_args;

    CLI::App app{"critical-point analysis of distance functions to point clouds"};
    app.set_version_flag("--version", std::string(mucrit::kVersion));
    app.require_subcommand(1);

    // --help only: the default -h short flag would shadow the --h option.
    const auto add_config = [&](CLI::App* sub) {
        sub->set_help_flag("--help", "print this help message and exit");
        sub->add_option("--config", config_path,
                        "JSON config file; flags override its values");
    };
    add_config(&app);

    CLI::App* gen = app.add_subcommand("gen", "synthesize a sample cloud");
    add_config(gen);
    gen->add_option("--kind", gen_args.kind,
                    "shape: circle, two-circles, cusp-wedge, sphere, segment");
    gen->add_option("--param", gen_args.params,
                    "shape parameter as name=value (repeatable)");
    gen->add_option("--count", gen_args.count, "number of sample points");
    gen->add_option("--noise", gen_args.noise, "radial noise amplitude");
    gen->add_option("--seed", gen_args.seed, "noise seed");
    gen->add_option("--out", gen_args.out, "output cloud file (.csv, .xyz, .json)");
    gen->add_option("--format", gen_args.format, "override format: csv, xyz, json");
    gen->add_option("--meta", gen_args.meta, "also write generation metadata JSON here");

    CLI::App* scan = app.add_subcommand("scan", "scan an annulus for critical points");
    add_config(scan);
    scan->add_option("--cloud", scan_args.cloud, "input cloud file");
    scan->add_option("--format", scan_args.format, "input format override");
    scan->add_option("--annulus-a", scan_args.annulus_a, "inner annulus radius");
    scan->add_option("--annulus-b", scan_args.annulus_b, "outer annulus radius");
    scan->add_option("--h", scan_args.h, "grid spacing");
    scan->add_option("--mu", scan_args.mu,
                     "threshold: exit 0 iff min gradient norm exceeds it");
    scan->add_option("--threads", scan_args.threads, "worker threads (0 = auto)");
    scan->add_flag("--keep-evaluations", scan_args.keep_evaluations,
                   "retain every grid evaluation in the report");
    scan->add_option("--out", scan_args.out, "report JSON path (default: stdout)");
    scan->add_option("--plot", scan_args.plot, "write an SVG plot here (2D only)");

    CLI::App* certify =
        app.add_subcommand("certify", "evaluate an offset-reconstruction certificate");
    add_config(certify);
    certify->add_option("--cloud", certify_args.cloud, "scanned cloud file");
    certify->add_option("--other", certify_args.other,
                        "second cloud for the Hausdorff condition");
    certify->add_option("--format", certify_args.format, "input format override");
    certify->add_option("--mu", certify_args.mu, "critical-norm threshold in (0, 1]");
    certify->add_option("--r", certify_args.r, "offset radius to certify");
    certify->add_option("--delta", certify_args.delta, "Hausdorff bound delta");
    certify->add_option("--kappa", certify_args.kappa,
                        "curvature class: zero or minus-one");
    certify->add_option("--role", certify_args.role,
                        "scanned cloud role: reconstructed or annulus");
    certify->add_option("--window-a", certify_args.window_a,
                        "claimed critical-free window, inner radius");
    certify->add_option("--window-b", certify_args.window_b,
                        "claimed critical-free window, outer radius");
    certify->add_flag("--conservative", certify_args.conservative,
                      "use the conservative annulus variant");
    certify->add_option("--h", certify_args.h, "scan grid spacing");
    certify->add_option("--threads", certify_args.threads, "worker threads (0 = auto)");
    certify->add_flag("--keep-evaluations", certify_args.keep_evaluations,
                      "retain every scan evaluation in the report");
    certify->add_option("--out", certify_args.out, "certificate JSON path");
    certify->add_option("--plot", certify_args.plot, "write an SVG plot here (2D only)");

    CLI::App* flow =
        app.add_subcommand("flow", "gradient-flow traces / retraction verification");
    add_config(flow);
    flow->add_option("--cloud", flow_args.cloud, "cloud whose distance field flows");
    flow->add_option("--other", flow_args.other,
                     "cloud providing the offset being retracted (default: --cloud)");
    flow->add_option("--format", flow_args.format, "input format override");
    flow->add_option("--r", flow_args.r, "offset radius the flow starts from");
    flow->add_option("--delta", flow_args.delta,
                     "offset shrink; target level is r - delta");
    flow->add_option("--h-f", flow_args.h_f, "flow step size");
    flow->add_option("--max-steps", flow_args.max_steps, "step cap per trace");
    flow->add_option("--n-starts", flow_args.n_starts,
                     "boundary starts for retraction verification");
    flow->add_option("--shell-h", flow_args.shell_h,
                     "boundary shell thickness (0 = step size)");
    flow->add_option("--threads", flow_args.threads, "worker threads (0 = auto)");
    flow->add_option("--start", flow_args.starts,
                     "explicit start point as x,y[,z] (repeatable; skips verification)");
    flow->add_option("--out", flow_args.out, "report JSON path (default: stdout)");
    flow->add_option("--plot", flow_args.plot, "write an SVG plot here (2D only)");

    CLI::App* homology =
        app.add_subcommand("homology", "Betti numbers of the Cech complex");
    add_config(homology);
    homology->add_option("--cloud", homology_args.cloud, "input cloud file");
    homology->add_option("--format", homology_args.format, "input format override");
    homology->add_option("--r", homology_args.r, "Cech radius");
    homology->add_option("--max-dim", homology_args.max_dim, "dimension cap");
    homology->add_option("--out", homology_args.out,
                         "report JSON path (default: stdout)");

    CLI::App* bounds =
        app.add_subcommand("bounds", "tabulate sampling bounds and their crossover");
    add_config(bounds);
    bounds->add_option("--mu-lo", bounds_args.mu_lo, "grid start (exclusive of 0)");
    bounds->add_option("--mu-hi", bounds_args.mu_hi, "grid end (at most 1)");
    bounds->add_option("--steps", bounds_args.steps, "grid size");
    bounds->add_option("--out", bounds_args.out, "table JSON path");

    try {
        const json cfg = load_config(find_config_path(argc, argv));

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e);
            return code == 0 ? 0 : 2;  // help/version exit 0, parse errors exit 2
        }

        if (gen->parsed()) return run_gen(gen, gen_args, merged_config(cfg, "gen"));
        if (scan->parsed()) return run_scan(scan, scan_args, merged_config(cfg, "scan"));
        if (certify->parsed())
            return run_certify(certify, certify_args, merged_config(cfg, "certify"));
        if (flow->parsed()) return run_flow(flow, flow_args, merged_config(cfg, "flow"));
        if (homology->parsed())
            return run_homology(homology, homology_args, merged_config(cfg, "homology"));
        if (bounds->parsed())
            return run_bounds(bounds, bounds_args, merged_config(cfg, "bounds"));
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
