#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "solidsum/error.hpp"
#include "solidsum/expression.hpp"
#include "solidsum/io.hpp"

using namespace solidsum;
using nlohmann::json;

namespace {

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::InvalidArgument;
}

std::string data_file(const char* name)
{
    return std::string(SOLIDSUM_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("real expressions")
{
    CHECK(parse_real_expression("sqrt(3)") == std::sqrt(3.0));
    CHECK(parse_real_expression("-sqrt(3)/2") == -std::sqrt(3.0) / 2.0);
    CHECK(parse_real_expression("(1+sqrt(5))/2") == (1.0 + std::sqrt(5.0)) / 2.0);
    CHECK(parse_real_expression("1/3") == 1.0 / 3.0);
    CHECK(parse_real_expression("2*3-4") == 2.0);
    CHECK(parse_real_expression(" 1e-2 ") == 0.01);
    CHECK(parse_real_expression("-(2)") == -2.0);
    CHECK(parse_real_expression("+4") == 4.0);

    for (const char* bad : {"", "x", "sqrt(", "1/", "2 3", "3sqrt(2)", "sqrt(-1)", "1/0"}) {
        INFO(bad);
        CHECK(code_of([&] { parse_real_expression(bad); }) == ErrorCode::ParseError);
    }
    try {
        parse_real_expression("2 3");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("position 2") != std::string::npos);
    }
}

TEST_CASE("complex numbers")
{
    CHECK(parse_complex("0.3+0.2i") == Complex(0.3, 0.2));
    CHECK(parse_complex("-0.1+0.4i") == Complex(-0.1, 0.4));
    CHECK(parse_complex("2") == Complex(2.0, 0.0));
    CHECK(parse_complex("0.5i") == Complex(0.0, 0.5));
    CHECK(parse_complex("i") == Complex(0.0, 1.0));
    CHECK(parse_complex("-i") == Complex(0.0, -1.0));
    CHECK(parse_complex("1-i") == Complex(1.0, -1.0));
    CHECK(parse_complex("1e-3-2e-2i") == Complex(1e-3, -2e-2));
    CHECK(parse_complex(" sqrt(3)/2+0.5i ") == Complex(std::sqrt(3.0) / 2.0, 0.5));
    CHECK(parse_complex("(1+2)i") == Complex(0.0, 3.0));

    for (const char* bad : {"", "abc", "1+2j", "1+2ii"}) {
        INFO(bad);
        CHECK(code_of([&] { parse_complex(bad); }) == ErrorCode::ParseError);
    }
}

TEST_CASE("lists")
{
    const ComplexPoint s = parse_complex_list("0.3+0.2i,-0.1+0.4i");
    REQUIRE(s.size() == 2);
    CHECK(s(0) == Complex(0.3, 0.2));
    CHECK(s(1) == Complex(-0.1, 0.4));

    const auto reals = parse_real_list("0.5, sqrt(3), (1+sqrt(5))/2");
    REQUIRE(reals.size() == 3);
    CHECK(reals[1] == std::sqrt(3.0));
    CHECK(reals[2] == (1.0 + std::sqrt(5.0)) / 2.0);

    // Commas inside parentheses do not split.
    CHECK(code_of([] { parse_real_list("1, (2, 3)"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_complex_list("0.1i,"); }) == ErrorCode::ParseError);
}

TEST_CASE("polytope JSON")
{
    const auto file = parse_polytope_json(
        json::parse(R"j({"dim": 2, "vertices": [[0, 0], ["0", "1"], ["sqrt(3)", 0]]})j"));
    CHECK(file.polytope.dim() == 2);
    CHECK(file.polytope.num_vertices() == 3);
    REQUIRE(file.source.size() == 3);
    CHECK(file.source[2][0] == "sqrt(3)");
    CHECK(file.warnings.empty());

    bool found = false;
    for (Eigen::Index v = 0; v < file.polytope.num_vertices(); ++v)
        found = found || (file.polytope.vertex(v) - Point(Eigen::Vector2d(std::sqrt(3.0), 0.0))).norm() == 0.0;
    CHECK(found);

    const auto repeated = parse_polytope_json(
        json::parse(R"j({"dim": 2, "vertices": [[0, 0], [1, 0], [0, 1], [1, 0], [0.2, 0.2]]})j"));
    CHECK(repeated.polytope.num_vertices() == 3);
    CHECK(repeated.warnings.size() == 2);

    auto code = [](const char* text) { return code_of([&] { parse_polytope_json(json::parse(text)); }); };
    CHECK(code(R"j({"vertices": [[0, 0]]})j") == ErrorCode::ParseError);
    CHECK(code(R"j({"dim": 0, "vertices": []})j") == ErrorCode::ParseError);
    CHECK(code(R"j({"dim": 2, "vertices": 3})j") == ErrorCode::ParseError);
    CHECK(code(R"j({"dim": 2, "vertices": [[0, true]]})j") == ErrorCode::ParseError);
    CHECK(code(R"j({"dim": 2, "vertices": [[0, "sqrt(x)"]]})j") == ErrorCode::ParseError);
    CHECK(code(R"j({"dim": 2, "vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0]]})j") ==
          ErrorCode::DimensionMismatch);
    CHECK(code(R"j({"dim": 2, "vertices": [[0, 0], [1, 1], [2, 2]]})j") == ErrorCode::DegenerateInput);
}

TEST_CASE("polytope files")
{
    const auto tri = load_polytope_file(data_file("triangle.json"));
    CHECK(tri.polytope.num_vertices() == 3);
    CHECK(load_polytope_file(data_file("simplex3.json")).polytope.dim() == 3);
    CHECK(load_polytope_file(data_file("golden_segment.json")).polytope.dim() == 1);

    CHECK(code_of([] { load_polytope_file(data_file("no_such_file.json")); }) ==
          ErrorCode::InvalidArgument);

    const auto path = std::filesystem::temp_directory_path() / "solidsum_broken.json";
    std::ofstream(path) << "{\"dim\": 2, \"vertices\": [[0, 0],";
    CHECK(code_of([&] { load_polytope_file(path.string()); }) == ErrorCode::ParseError);
    std::filesystem::remove(path);
}

TEST_CASE("JSON output")
{
    CHECK(to_json(Complex(1.5, -2.0)) == json({{"re", 1.5}, {"im", -2.0}}));

    VerificationReport report;
    report.identity = "brion";
    report.inputs = {{"s", "(0.3+0.2i)"}};
    report.lhs = Complex(1.0, 0.0);
    report.rhs = Complex(1.0, 1e-6);
    report.residual = 1e-6;
    report.tolerance = 1e-4;
    report.pass = true;
    report.diagnostics = {{"rhs_error", 2e-7}};
    report.partials = {Complex(0.5), Complex(0.5, 1e-6)};
    const json doc = to_json(report);
    for (const char* key : {"identity", "inputs", "residual", "tolerance", "pass", "lhs", "rhs",
                            "diagnostics", "partials"})
        CHECK(doc.contains(key));
    CHECK(doc["identity"] == "brion");
    CHECK(doc["inputs"]["s"] == "(0.3+0.2i)");
    CHECK(doc["partials"].size() == 2);
    CHECK(doc["diagnostics"]["rhs_error"] == 2e-7);

    Extrapolation e;
    e.eps = {0.5, 0.25};
    e.levels = {Complex(1.0), Complex(2.0)};
    e.value = Complex(3.0);
    e.error = 0.1;
    const json ej = to_json(e);
    CHECK(ej["levels"].size() == 2);
    CHECK(ej["levels"][1]["eps"] == 0.25);
    CHECK(ej["value"]["re"] == 3.0);
}
