#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "solidsum/error.hpp"
#include "solidsum/expression.hpp"
#include "solidsum/io.hpp"
#include "solidsum/parallel.hpp"
#include "solidsum/triangle_example.hpp"

namespace solidsum::cli {

namespace {

using nlohmann::json;

struct RunConfig {
    std::string polytope_path;
    double p = 2.0;
    std::string t_text;
    std::string t_range;
    std::string s_text;
    std::string eps_text;
    double eps0 = 0.5;
    int levels = 6;
    int radius = 0;
    std::string direction_text;
    std::string sigma_text;
    std::uint64_t seed = 1;
    std::size_t samples = kDefaultSamples;
    std::string output;
    std::string format = "json";
    double tolerance = 1e-4;
    unsigned threads = 0;
    std::string method = "auto";
    std::string point_text;
    int vertex = -1;
    std::string generators_text;
    std::string apex_text;
    std::string shift_text;
    std::size_t n_points = 100;
};

bool input_error(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::ParseError:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::DegenerateInput:
    case ErrorCode::BadIndex:
    case ErrorCode::NotPointed:
    case ErrorCode::DegenerateCone:
    case ErrorCode::UnsupportedDimension:
    case ErrorCode::BadEpsilon:
    case ErrorCode::ScheduleTooShort:
    case ErrorCode::UnsupportedCombination:
        return true;
    default:
        return false;
    }
}

[[noreturn]] void usage(const std::string& message)
{
    throw Error(ErrorCode::InvalidArgument, message);
}

/// Runs a parser on a flag value; parse errors name the flag.
template <typename F>
auto from_flag(const std::string& flag, F&& parse) -> decltype(parse())
{
    try {
        return parse();
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ParseError)
            throw;
        std::string what = e.what();
        what.erase(0, what.find(": ") + 2);
        throw Error(ErrorCode::ParseError, flag + ": " + what);
    }
}

DampedSumConfig damped_config(const RunConfig& rc)
{
    DampedSumConfig cfg;
    cfg.p = rc.p;
    cfg.truncation_radius = rc.radius;
    if (!rc.eps_text.empty()) {
        cfg.eps_schedule = from_flag("--eps", [&] { return parse_real_list(rc.eps_text); });
    } else {
        if (rc.levels < 2)
            usage("--levels must be at least 2");
        cfg.eps_schedule.clear();
        for (int k = 0; k < rc.levels; ++k)
            cfg.eps_schedule.push_back(rc.eps0 * std::ldexp(1.0, -k));
    }
    cfg.validate();
    return cfg;
}

LimitConfig limit_config(const RunConfig& rc)
{
    LimitConfig lc;
    if (!rc.direction_text.empty()) {
        const auto values = from_flag("--direction", [&] { return parse_real_list(rc.direction_text); });
        lc.direction = Eigen::Map<const Point>(values.data(), static_cast<Eigen::Index>(values.size()));
    }
    if (!rc.sigma_text.empty())
        lc.sigma_schedule = from_flag("--sigma", [&] { return parse_real_list(rc.sigma_text); });
    lc.seed = rc.seed;
    return lc;
}

PolytopeFile require_polytope(const RunConfig& rc, std::ostream& err)
{
    if (rc.polytope_path.empty())
        usage("--polytope is required");
    PolytopeFile file = load_polytope_file(rc.polytope_path);
    for (const auto& w : file.warnings)
        err << "warning: " << w << "\n";
    return file;
}

Point require_point(const std::string& text, const std::string& flag, int dim)
{
    if (text.empty())
        usage(flag + " is required");
    const auto values = from_flag(flag, [&] { return parse_real_list(text); });
    if (static_cast<int>(values.size()) != dim)
        throw Error(ErrorCode::DimensionMismatch, flag + " needs " + std::to_string(dim) + " entries");
    return Eigen::Map<const Point>(values.data(), dim);
}

ComplexPoint require_s(const RunConfig& rc, int dim)
{
    if (rc.s_text.empty())
        usage("--s is required");
    ComplexPoint s = from_flag("--s", [&] { return parse_complex_list(rc.s_text); });
    if (s.size() != dim)
        throw Error(ErrorCode::DimensionMismatch, "--s needs " + std::to_string(dim) + " entries");
    return s;
}

std::vector<double> t_values(const RunConfig& rc)
{
    if (!rc.t_range.empty()) {
        std::vector<std::string> parts;
        std::stringstream in(rc.t_range);
        std::string part;
        while (std::getline(in, part, ':'))
            parts.push_back(part);
        if (parts.size() != 3)
            usage("--t-range must be start:stop:step");
        const double a = from_flag("--t-range", [&] { return parse_real_expression(parts[0]); });
        const double b = from_flag("--t-range", [&] { return parse_real_expression(parts[1]); });
        const double h = from_flag("--t-range", [&] { return parse_real_expression(parts[2]); });
        if (!(h > 0.0) || b < a)
            usage("--t-range needs start <= stop and step > 0");
        std::vector<double> out;
        const auto n = static_cast<long>(std::floor((b - a) / h + 1e-9));
        for (long k = 0; k <= n; ++k)
            out.push_back(a + static_cast<double>(k) * h);
        return out;
    }
    if (rc.t_text.empty())
        usage("--t is required");
    return from_flag("--t", [&] { return parse_real_list(rc.t_text); });
}

OracleMethod oracle_method(const std::string& name)
{
    if (name == "exact2d" || name == "exact")
        return OracleMethod::Exact2D;
    if (name == "mc")
        return OracleMethod::MonteCarlo;
    if (name == "auto")
        return OracleMethod::Auto;
    usage("--method must be exact2d, mc or auto");
}

Eigen::MatrixXd parse_generators(const std::string& text)
{
    std::vector<std::vector<double>> rows;
    std::stringstream in(text);
    std::string row;
    while (std::getline(in, row, ';'))
        rows.push_back(from_flag("--generators", [&] { return parse_real_list(row); }));
    if (rows.empty())
        usage("--generators is empty");
    const std::size_t d = rows.front().size();
    Eigen::MatrixXd g(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (rows[j].size() != d)
            throw Error(ErrorCode::DimensionMismatch, "generators differ in length");
        for (std::size_t k = 0; k < d; ++k)
            g(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = rows[j][k];
    }
    return g;
}

json verdict(const json& body, bool pass)
{
    json out = body;
    out["pass"] = pass;
    return out;
}

struct Outcome {
    json document;
    std::optional<std::string> csv;
    bool pass = true;
};

Outcome run_oracle(const RunConfig& rc, std::ostream& err)
{
    const PolytopeFile file = require_polytope(rc, err);
    OracleOptions options;
    options.p = rc.p;
    options.method = oracle_method(rc.method);
    options.n_samples = rc.samples;
    options.seed = rc.seed;
    json results = json::array();
    for (double t : t_values(rc)) {
        json entry = to_json(A_t_oracle(file.polytope, t, options));
        entry["t"] = t;
        results.push_back(entry);
    }
    return {{{"command", "oracle"}, {"p", rc.p}, {"method", rc.method}, {"results", results}}, {}, true};
}

Outcome run_solid_angle(const RunConfig& rc, std::ostream& err)
{
    const PolytopeFile file = require_polytope(rc, err);
    const Point x = require_point(rc.point_text, "--point", file.polytope.dim());
    SolidAngleEstimate est;
    if (rc.method == "auto" || rc.method == "exact" || rc.method == "exact2d") {
        est = polytope_solid_angle(file.polytope, x, rc.p, true, rc.samples, rc.seed);
    } else if (rc.method == "mc") {
        est = solid_angle_mc(file.polytope, x, rc.p, std::nullopt, rc.samples, rc.seed);
    } else if (rc.method == "gaussian") {
        const DampedSumConfig cfg = damped_config(rc);
        est = solid_angle_gaussian(file.polytope.halfspaces(), x, rc.p, cfg.eps_schedule,
                                   rc.samples, rc.seed);
    } else {
        usage("--method must be auto, exact, mc or gaussian");
    }
    return {{{"command", "solid-angle"},
             {"point", to_json(x)},
             {"p", rc.p},
             {"value", est.value},
             {"std_error", est.std_error},
             {"method", to_string(est.method)}},
            {},
            true};
}

Outcome run_alpha(const RunConfig& rc, std::ostream& err)
{
    const PolytopeFile file = require_polytope(rc, err);
    const ComplexPoint s = require_s(rc, file.polytope.dim());
    const Estimate<Complex> direct = alpha_polytope_direct(file.polytope, s, rc.p, rc.samples, rc.seed);
    return {{{"command", "alpha"},
             {"s", to_json(s)},
             {"p", rc.p},
             {"value", to_json(direct.value)},
             {"error", direct.error},
             {"provenance", to_string(direct.provenance)}},
            {},
            true};
}

Outcome run_macdonald(const RunConfig& rc, std::ostream& err)
{
    const PolytopeFile file = require_polytope(rc, err);
    const DampedSumConfig cfg = damped_config(rc);
    json results = json::array();
    for (double t : t_values(rc)) {
        if (!rc.s_text.empty())
            results.push_back(to_json(A_of_t_s(file.polytope, t, require_s(rc, file.polytope.dim()), cfg)));
        else
            results.push_back(to_json(A_of_t(file.polytope, t, limit_config(rc), cfg)));
    }
    return {{{"command", "macdonald"}, {"p", rc.p}, {"results", results}}, {}, true};
}

std::string csv_number(double v)
{
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

Outcome run_series(const RunConfig& rc, std::ostream& err)
{
    const PolytopeFile file = require_polytope(rc, err);
    const DampedSumConfig cfg = damped_config(rc);
    std::string csv = "t,value,error\n";
    json rows = json::array();
    for (double t : t_values(rc)) {
        const LimitResult r = A_of_t(file.polytope, t, limit_config(rc), cfg);
        csv += csv_number(t) + "," + csv_number(r.value) + "," + csv_number(r.error) + "\n";
        rows.push_back({{"t", t}, {"value", r.value}, {"error", r.error}});
    }
    return {{{"command", "macdonald-series"}, {"rows", rows}}, csv, true};
}

Outcome report_outcome(const VerificationReport& report)
{
    return {to_json(report), {}, report.pass};
}

Outcome run_verify_reciprocity(const RunConfig& rc, std::ostream& err)
{
    std::optional<SimpleCone> cone;
    if (!rc.generators_text.empty()) {
        const Eigen::MatrixXd g = parse_generators(rc.generators_text);
        const int d = static_cast<int>(g.rows());
        const Point apex = rc.apex_text.empty() ? Point::Zero(d) : require_point(rc.apex_text, "--apex", d);
        cone.emplace(apex, g);
    } else {
        const PolytopeFile file = require_polytope(rc, err);
        if (rc.vertex < 0)
            usage("--vertex or --generators is required");
        const Cone tangent = normalized(vertex_tangent_cone(file.polytope, rc.vertex));
        const auto pieces = triangulate_cone(tangent);
        if (pieces.size() != 1)
            usage("vertex cone is not simple; pass --generators for one simple piece");
        cone.emplace(pieces.front().with_apex(Point::Zero(file.polytope.dim())));
    }
    const int d = cone->dim();
    const Point shift = rc.shift_text.empty() ? Point::Zero(d) : require_point(rc.shift_text, "--shift", d);
    const ComplexPoint s = require_s(rc, d);
    return report_outcome(verify_cone_reciprocity(*cone, shift, s, damped_config(rc), rc.tolerance));
}

Outcome run_verify_brion(const RunConfig& rc, std::ostream& err)
{
    const PolytopeFile file = require_polytope(rc, err);
    const ComplexPoint s = require_s(rc, file.polytope.dim());
    return report_outcome(verify_brion(file.polytope, s, damped_config(rc), rc.tolerance));
}

Outcome run_verify_macdonald(const RunConfig& rc, std::ostream& err)
{
    const PolytopeFile file = require_polytope(rc, err);
    const ComplexPoint s = require_s(rc, file.polytope.dim());
    const DampedSumConfig cfg = damped_config(rc);
    json reports = json::array();
    bool pass = true;
    for (double t : t_values(rc)) {
        const VerificationReport report = verify_macdonald(file.polytope, t, s, cfg, rc.tolerance);
        pass = pass && report.pass;
        reports.push_back(to_json(report));
    }
    return {{{"command", "verify-macdonald"}, {"reports", reports}, {"pass", pass}}, {}, pass};
}

Outcome run_brianchon_gram(const RunConfig& rc, std::ostream& err)
{
    const PolytopeFile file = require_polytope(rc, err);
    const BrianchonGramReport report = brianchon_gram_check(file.polytope, rc.n_points, rc.seed);
    json doc = to_json(report);
    doc["identity"] = "brianchon_gram";
    return {doc, {}, report.pass};
}

Outcome run_conjecture(const RunConfig& rc, std::ostream& err)
{
    const PolytopeFile file = require_polytope(rc, err);
    const double tolerance = rc.tolerance;
    const ConjectureResult result =
        conjecture_check(file.polytope, damped_config(rc), limit_config(rc), tolerance);
    json doc = {{"identity", "A(0) = 0"},
                {"dim", file.polytope.dim()},
                {"odd_dimension", result.odd_dimension},
                {"residual", std::abs(result.limit.value)},
                {"tolerance", result.tolerance},
                {"limit", to_json(result.limit)}};
    return {verdict(doc, result.pass), {}, result.pass};
}

Outcome run_triangle_example(const RunConfig& rc)
{
    const std::vector<double> ts = rc.t_text.empty() && rc.t_range.empty()
                                       ? std::vector<double>{0.5, 1.0, 1.5}
                                       : t_values(rc);
    const TriangleReport report = triangle_example(ts, damped_config(rc), limit_config(rc));
    json rows = json::array();
    bool pass = report.determinants_ok;
    for (const auto& row : report.rows) {
        rows.push_back({{"t", row.t},
                        {"value", row.value},
                        {"error", row.error},
                        {"oracle", row.oracle},
                        {"oracle_error", row.oracle_error},
                        {"tolerance", row.tolerance},
                        {"pass", row.pass}});
        pass = pass && row.pass;
    }
    json limits = json::array();
    for (const auto& d : report.limits)
        limits.push_back({{"m", to_json(d.m)},
                          {"t", d.t},
                          {"closed_form", to_json(d.closed_form)},
                          {"second_derivative_ratio", to_json(d.second_derivative_ratio)},
                          {"small_sigma_limit", to_json(d.small_sigma_limit)},
                          {"f0", to_json(d.f0)},
                          {"g0", to_json(d.g0)},
                          {"vanishing_to_second_order", d.vanishing_to_second_order},
                          {"algebra_gap", d.algebra_gap},
                          {"limit_gap", d.limit_gap},
                          {"limit_matches", d.limit_matches}});
    json series = json::array();
    for (const auto& s : report.series) {
        json values = json::array();
        for (std::size_t k = 0; k < s.eps.size(); ++k)
            values.push_back({{"eps", s.eps[k]}, {"value", to_json(s.values[k])}});
        series.push_back({{"t", s.t}, {"levels", values}, {"extrapolated", to_json(s.extrapolated)}});
    }
    json doc = {{"command", "triangle-example"},
                {"determinants", report.determinants},
                {"determinant_error", report.determinant_error},
                {"determinants_ok", report.determinants_ok},
                {"rows", rows},
                {"limit_diagnostics", limits},
                {"series_diagnostics", series}};
    return {verdict(doc, pass), {}, pass};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig rc;
    CLI::App app{"Solid-angle lattice sums of real polytopes"};
    app.fallthrough();
    app.require_subcommand(1);

    app.add_option("--threads", rc.threads, "worker count (default: SOLIDSUM_THREADS or 1)");
    app.add_option("--format", rc.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", rc.output, "write results here instead of stdout");
    app.add_option("--seed", rc.seed, "random seed");
    app.add_option("--p", rc.p, "norm exponent p >= 1");
    app.add_option("--eps", rc.eps_text, "explicit eps schedule, comma separated");
    app.add_option("--eps0", rc.eps0, "first eps level (default 0.5)");
    app.add_option("--levels", rc.levels, "number of halving eps levels (default 6)");
    app.add_option("--R", rc.radius, "lattice truncation radius (0: automatic)");
    app.add_option("--tolerance", rc.tolerance, "verification tolerance (default 1e-4)");
    app.add_option("--samples", rc.samples, "Monte Carlo samples");
    app.add_option("--direction", rc.direction_text, "generic direction for s -> 0");
    app.add_option("--sigma", rc.sigma_text, "sigma schedule for s -> 0");

    struct Spec {
        const char* name;
        const char* help;
    };
    const std::vector<Spec> specs = {
        {"solid-angle", "solid angle of a polytope at a point"},
        {"alpha", "solid-angle generating function by direct enumeration"},
        {"macdonald", "A(t, s) or A(t) through vertex cones"},
        {"macdonald-series", "A(t) over a range of t"},
        {"verify-reciprocity", "alpha_{v+K}(-s) = (-1)^d alpha_{-v+K}(s)"},
        {"verify-brion", "alpha_P(s) = sum of vertex-cone series"},
        {"verify-macdonald", "A(-t, s) = (-1)^d A(t, -s)"},
        {"brianchon-gram", "signed tangent-cone decomposition at random points"},
        {"conjecture", "A(0) = 0"},
        {"triangle-example", "the sqrt(3) triangle walkthrough"},
        {"oracle", "A(t) by lattice enumeration"},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& spec : specs) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.help);
        subs[spec.name] = sub;
    }
    for (const char* name : {"solid-angle", "alpha", "macdonald", "macdonald-series",
                             "verify-reciprocity", "verify-brion", "verify-macdonald",
                             "brianchon-gram", "conjecture", "oracle"})
        subs[name]->add_option("--polytope", rc.polytope_path, "polytope JSON file");
    for (const char* name : {"macdonald", "macdonald-series", "verify-macdonald", "triangle-example", "oracle"})
        subs[name]->add_option("--t", rc.t_text, "dilation(s), comma separated");
    for (const char* name : {"macdonald-series", "oracle", "macdonald"})
        subs[name]->add_option("--t-range", rc.t_range, "start:stop:step");
    for (const char* name : {"alpha", "macdonald", "verify-reciprocity", "verify-brion", "verify-macdonald"})
        subs[name]->add_option("--s", rc.s_text, "complex point, e.g. \"0.3+0.2i,-0.1+0.4i\"");
    for (const char* name : {"solid-angle", "oracle"})
        subs[name]->add_option("--method", rc.method, "evaluator");
    subs["solid-angle"]->add_option("--point", rc.point_text, "point, comma separated");
    subs["verify-reciprocity"]->add_option("--generators", rc.generators_text, "generators, rows split by ';'");
    subs["verify-reciprocity"]->add_option("--apex", rc.apex_text, "apex of the cone");
    subs["verify-reciprocity"]->add_option("--shift", rc.shift_text, "shift v");
    subs["verify-reciprocity"]->add_option("--vertex", rc.vertex, "use this vertex cone of --polytope");
    subs["brianchon-gram"]->add_option("--points", rc.n_points, "number of random points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (rc.threads > 0)
            set_thread_count(rc.threads);
        const std::string name = app.get_subcommands().front()->get_name();
        Outcome outcome;
        if (name == "oracle")
            outcome = run_oracle(rc, err);
        else if (name == "solid-angle")
            outcome = run_solid_angle(rc, err);
        else if (name == "alpha")
            outcome = run_alpha(rc, err);
        else if (name == "macdonald")
            outcome = run_macdonald(rc, err);
        else if (name == "macdonald-series")
            outcome = run_series(rc, err);
        else if (name == "verify-reciprocity")
            outcome = run_verify_reciprocity(rc, err);
        else if (name == "verify-brion")
            outcome = run_verify_brion(rc, err);
        else if (name == "verify-macdonald")
            outcome = run_verify_macdonald(rc, err);
        else if (name == "brianchon-gram")
            outcome = run_brianchon_gram(rc, err);
        else if (name == "conjecture")
            outcome = run_conjecture(rc, err);
        else
            outcome = run_triangle_example(rc);

        std::string text;
        if (rc.format == "csv") {
            if (!outcome.csv)
                usage("--format csv is only available for macdonald-series");
            text = *outcome.csv;
        } else {
            text = outcome.document.dump(2) + "\n";
        }
        if (rc.output.empty()) {
            out << text;
        } else {
            std::ofstream file(rc.output);
            if (!file)
                usage("cannot write --output " + rc.output);
            file << text;
        }
        return outcome.pass ? kExitOk : kExitFailed;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return input_error(e.code()) ? kExitInput : kExitFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailed;
    }
}

}  // namespace solidsum::cli
