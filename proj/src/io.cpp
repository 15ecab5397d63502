#include "solidsum/io.hpp"

#include <fstream>

#include "solidsum/error.hpp"
#include "solidsum/expression.hpp"

namespace solidsum {

using nlohmann::json;

namespace {

std::string trim(std::string_view text)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> split_commas(std::string_view text)
{
    std::vector<std::string> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '(')
            ++depth;
        else if (text[i] == ')')
            --depth;
        else if (text[i] == ',' && depth == 0) {
            parts.push_back(trim(text.substr(start, i - start)));
            start = i + 1;
        }
    }
    parts.push_back(trim(text.substr(start)));
    return parts;
}

}  // namespace

PolytopeFile parse_polytope_json(const json& doc)
{
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("vertices"))
        throw Error(ErrorCode::ParseError, "polytope JSON needs \"dim\" and \"vertices\"");
    if (!doc["dim"].is_number_integer() || doc["dim"].get<int>() < 1)
        throw Error(ErrorCode::ParseError, "\"dim\" must be a positive integer");
    if (!doc["vertices"].is_array())
        throw Error(ErrorCode::ParseError, "\"vertices\" must be an array");
    const int dim = doc["dim"].get<int>();

    std::vector<std::vector<double>> rows;
    std::vector<std::vector<std::string>> source;
    for (const auto& row : doc["vertices"]) {
        if (!row.is_array())
            throw Error(ErrorCode::ParseError, "each vertex must be an array");
        std::vector<double> values;
        std::vector<std::string> texts;
        for (const auto& entry : row) {
            if (entry.is_number()) {
                values.push_back(entry.get<double>());
                texts.push_back(entry.dump());
            } else if (entry.is_string()) {
                const std::string text = entry.get<std::string>();
                values.push_back(parse_real_expression(text));
                texts.push_back(text);
            } else {
                throw Error(ErrorCode::ParseError, "coordinates must be numbers or strings");
            }
        }
        rows.push_back(std::move(values));
        source.push_back(std::move(texts));
    }
    Polytope polytope = load_polytope(dim, rows);
    PolytopeFile out{std::move(polytope), std::move(source), {}};
    for (const auto& p : out.polytope.discarded_points()) {
        std::string text = "dropped non-extreme or repeated point (";
        for (Eigen::Index k = 0; k < p.size(); ++k)
            text += (k ? ", " : "") + std::to_string(p(k));
        out.warnings.push_back(text + ")");
    }
    return out;
}

PolytopeFile load_polytope_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::InvalidArgument, "cannot open polytope file " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
    return parse_polytope_json(doc);
}

Complex parse_complex(std::string_view raw)
{
    const std::string text = trim(raw);
    if (text.empty())
        throw Error(ErrorCode::ParseError, "empty complex number");
    if (text.back() != 'i')
        return {parse_real_expression(text), 0.0};

    const std::string body = text.substr(0, text.size() - 1);
    // Split at the last top-level sign that is not an exponent sign.
    int depth = 0;
    std::size_t split = std::string::npos;
    for (std::size_t k = 0; k < body.size(); ++k) {
        const char c = body[k];
        if (c == '(')
            ++depth;
        else if (c == ')')
            --depth;
        else if ((c == '+' || c == '-') && depth == 0 && k > 0 && body[k - 1] != 'e' &&
                 body[k - 1] != 'E')
            split = k;
    }
    auto coefficient = [](const std::string& part) {
        const std::string t = trim(part);
        if (t.empty() || t == "+")
            return 1.0;
        if (t == "-")
            return -1.0;
        return parse_real_expression(t);
    };
    if (split == std::string::npos)
        return {0.0, coefficient(body)};
    return {parse_real_expression(body.substr(0, split)), coefficient(body.substr(split))};
}

ComplexPoint parse_complex_list(std::string_view text)
{
    const auto parts = split_commas(text);
    ComplexPoint out(static_cast<Eigen::Index>(parts.size()));
    for (std::size_t k = 0; k < parts.size(); ++k)
        out(static_cast<Eigen::Index>(k)) = parse_complex(parts[k]);
    return out;
}

std::vector<double> parse_real_list(std::string_view text)
{
    std::vector<double> out;
    for (const auto& part : split_commas(text))
        out.push_back(parse_real_expression(part));
    return out;
}

json to_json(Complex z)
{
    return {{"re", z.real()}, {"im", z.imag()}};
}

json to_json(const ComplexPoint& z)
{
    json out = json::array();
    for (Eigen::Index k = 0; k < z.size(); ++k)
        out.push_back(to_json(z(k)));
    return out;
}

json to_json(const Point& x)
{
    json out = json::array();
    for (Eigen::Index k = 0; k < x.size(); ++k)
        out.push_back(x(k));
    return out;
}

json to_json(const LatticePoint& m)
{
    json out = json::array();
    for (Eigen::Index k = 0; k < m.size(); ++k)
        out.push_back(m(k));
    return out;
}

json to_json(const VerificationReport& report)
{
    json inputs = json::object();
    for (const auto& [key, value] : report.inputs)
        inputs[key] = value;
    json diagnostics = json::object();
    for (const auto& [key, value] : report.diagnostics)
        diagnostics[key] = value;
    json partials = json::array();
    for (const auto& z : report.partials)
        partials.push_back(to_json(z));
    return {{"identity", report.identity},
            {"inputs", inputs},
            {"residual", report.residual},
            {"tolerance", report.tolerance},
            {"pass", report.pass},
            {"lhs", to_json(report.lhs)},
            {"rhs", to_json(report.rhs)},
            {"diagnostics", diagnostics},
            {"partials", partials}};
}

json to_json(const Extrapolation& extrapolation)
{
    json levels = json::array();
    for (std::size_t k = 0; k < extrapolation.eps.size(); ++k)
        levels.push_back({{"eps", extrapolation.eps[k]}, {"value", to_json(extrapolation.levels[k])}});
    return {{"value", to_json(extrapolation.value)},
            {"error", extrapolation.error},
            {"levels", levels}};
}

json to_json(const MacdonaldEvaluation& eval)
{
    json partials = json::array();
    for (const auto& partial : eval.per_vertex)
        partials.push_back({{"vertex", to_json(partial.vertex)}, {"value", to_json(partial.value)}});
    return {{"t", eval.t},
            {"s", to_json(eval.s)},
            {"value", to_json(eval.value)},
            {"error", eval.error},
            {"per_vertex", partials},
            {"extrapolation", to_json(eval.extrapolation)}};
}

json to_json(const LimitResult& limit)
{
    json samples = json::array();
    for (std::size_t k = 0; k < limit.sigmas.size(); ++k)
        samples.push_back({{"sigma", limit.sigmas[k]},
                           {"value", to_json(limit.values[k])},
                           {"error", limit.errors[k]}});
    return {{"t", limit.t},
            {"value", limit.value},
            {"error", limit.error},
            {"imaginary_intercept", limit.imaginary},
            {"fit_residual", limit.fit_residual},
            {"swapped_order_value", limit.swapped_order_value},
            {"direction", to_json(limit.direction)},
            {"samples", samples}};
}

json to_json(const OracleResult& result)
{
    json weights = json::array();
    for (const auto& w : result.per_point_weights)
        weights.push_back({{"point", to_json(w.point)},
                           {"weight", w.weight},
                           {"std_error", w.std_error},
                           {"method", to_string(w.method)}});
    return {{"value", result.value},
            {"std_error", result.std_error},
            {"n_lattice_points", result.n_lattice_points},
            {"per_point_weights", weights}};
}

json to_json(const BrianchonGramReport& report)
{
    json bad = json::array();
    for (const auto& x : report.counterexamples)
        bad.push_back(to_json(x));
    return {{"n_points", report.n_points},
            {"n_inside", report.n_inside},
            {"n_failures", report.n_failures},
            {"counterexamples", bad},
            {"pass", report.pass}};
}

}  // namespace solidsum
