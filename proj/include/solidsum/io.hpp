#ifndef SOLIDSUM_IO_HPP
#define SOLIDSUM_IO_HPP

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "solidsum/macdonald.hpp"
#include "solidsum/oracle.hpp"

namespace solidsum {

struct PolytopeFile {
    Polytope polytope;
    std::vector<std::vector<std::string>> source;  // coordinates as written
    std::vector<std::string> warnings;
};

/// {"dim": d, "vertices": [[x1, ..., xd], ...]}; entries are numbers or expression strings.
PolytopeFile parse_polytope_json(const nlohmann::json& doc);
PolytopeFile load_polytope_file(const std::string& path);

/// "re+imi", "re", "imi" or "-i"; throws ParseError.
Complex parse_complex(std::string_view text);

/// Comma separated list of parse_complex entries.
ComplexPoint parse_complex_list(std::string_view text);

/// Comma separated reals (expressions allowed).
std::vector<double> parse_real_list(std::string_view text);

nlohmann::json to_json(Complex z);
nlohmann::json to_json(const ComplexPoint& z);
nlohmann::json to_json(const Point& x);
nlohmann::json to_json(const LatticePoint& m);
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const MacdonaldEvaluation& eval);
nlohmann::json to_json(const LimitResult& limit);
nlohmann::json to_json(const OracleResult& result);
nlohmann::json to_json(const BrianchonGramReport& report);
nlohmann::json to_json(const Extrapolation& extrapolation);

}  // namespace solidsum

#endif
