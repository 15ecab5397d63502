#include "solidsum/oracle.hpp"

#include <cmath>

#include "solidsum/error.hpp"

namespace solidsum {

const char* to_string(OracleMethod method)
{
    switch (method) {
    case OracleMethod::Exact2D: return "exact2d";
    case OracleMethod::MonteCarlo: return "mc";
    case OracleMethod::Auto: return "auto";
    }
    return "unknown";
}

namespace {

void check_options(const Polytope& polytope, const OracleOptions& options)
{
    if (options.method == OracleMethod::Exact2D &&
        (polytope.dim() != 2 || (options.p != 1.0 && options.p != 2.0)))
        throw Error(ErrorCode::UnsupportedCombination,
                    "exact weights need d = 2 and p in {1, 2}");
}

std::uint64_t point_seed(std::uint64_t seed, std::size_t index)
{
    // splitmix64 step so neighbouring indices get unrelated streams
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<PointWeight> weigh(const Polytope& dilate, const std::vector<LatticePoint>& points,
                               const OracleOptions& options)
{
    const bool prefer_exact = options.method != OracleMethod::MonteCarlo;
    std::vector<PointWeight> out;
    out.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Point x = points[i].cast<double>();
        const SolidAngleEstimate w =
            polytope_solid_angle(dilate, x, options.p, prefer_exact, options.n_samples,
                                 point_seed(options.seed, i));
        out.push_back({points[i], w.value, w.std_error, w.method});
    }
    return out;
}

}  // namespace

OracleResult A_t_oracle(const Polytope& polytope, double t, const OracleOptions& options)
{
    check_options(polytope, options);
    if (!(t >= 0.0) || !std::isfinite(t))
        throw Error(ErrorCode::InvalidArgument, "dilation t must be >= 0");

    OracleResult result;
    if (t == 0.0) {
        result.n_lattice_points = 1;
        if (options.keep_weights)
            result.per_point_weights.push_back(
                {LatticePoint::Zero(polytope.dim()), 0.0, 0.0, SolidAngleMethod::Exact});
        return result;
    }
    const Polytope dilate = polytope.dilated(t);
    const auto weights = weigh(dilate, lattice_points(polytope, t), options);
    double variance = 0.0;
    for (const auto& w : weights) {
        result.value += w.weight;
        variance += w.std_error * w.std_error;
    }
    result.std_error = std::sqrt(variance);
    result.n_lattice_points = weights.size();
    if (options.keep_weights)
        result.per_point_weights = weights;
    return result;
}

Estimate<Complex> alpha_oracle(const Polytope& polytope, const ComplexPoint& s,
                               const OracleOptions& options)
{
    check_options(polytope, options);
    if (s.size() != polytope.dim())
        throw Error(ErrorCode::DimensionMismatch, "s and polytope dimensions differ");
    const auto weights = weigh(polytope, lattice_points(polytope, 1.0), options);
    Estimate<Complex> out;
    double variance = 0.0;
    bool sampled = false;
    for (const auto& w : weights) {
        const Complex phase = std::exp(2.0 * kPi * kI * bilinear(s, w.point.cast<double>()));
        out.value += w.weight * phase;
        variance += std::norm(phase) * w.std_error * w.std_error;
        sampled = sampled || w.method != SolidAngleMethod::Exact;
    }
    out.error = std::sqrt(variance);
    out.provenance = sampled ? Provenance::MonteCarlo : Provenance::Exact;
    return out;
}

}  // namespace solidsum
