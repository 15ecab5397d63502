#include "solidsum/extrapolation.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "solidsum/error.hpp"

namespace solidsum {

namespace {

std::string scientific(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

void check_schedule(std::span<const double> eps)
{
    if (eps.size() < 2)
        throw Error(ErrorCode::ScheduleTooShort, "need at least two eps levels, got " +
                                                     std::to_string(eps.size()));
    for (std::size_t k = 0; k < eps.size(); ++k) {
        if (!(eps[k] > 0.0))
            throw Error(ErrorCode::BadEpsilon, "eps levels must be positive");
        if (k > 0 && !(eps[k] < eps[k - 1]))
            throw Error(ErrorCode::InvalidArgument, "eps schedule must be strictly decreasing");
    }
}

}  // namespace

Extrapolation richardson(std::span<const double> eps, std::span<const Complex> values,
                         bool check_convergence, double noise_floor)
{
    check_schedule(eps);
    if (values.size() != eps.size())
        throw Error(ErrorCode::DimensionMismatch, "one value per eps level required");

    Extrapolation out;
    out.eps.assign(eps.begin(), eps.end());
    out.levels.assign(values.begin(), values.end());
    for (std::size_t k = 1; k < eps.size(); ++k) {
        const double r = eps[k - 1] / eps[k];
        out.extrapolants.push_back((r * values[k] - values[k - 1]) / (r - 1.0));
    }
    const std::size_t n = out.extrapolants.size();
    out.value = out.extrapolants.back();
    out.error = n >= 2 ? std::abs(out.extrapolants[n - 1] - out.extrapolants[n - 2])
                       : std::abs(out.extrapolants[0] - values.back());

    if (check_convergence && n >= 3) {
        const double last = std::abs(out.extrapolants[n - 1] - out.extrapolants[n - 2]);
        const double prev = std::abs(out.extrapolants[n - 2] - out.extrapolants[n - 3]);
        const double floor = std::max(1e-8 * std::max(1.0, std::abs(out.value)), noise_floor);
        if (last > prev && last > floor)
            throw Error(ErrorCode::NonConvergent,
                        "successive extrapolants diverge (" + scientific(prev) + " -> " +
                            scientific(last) + ")");
    }
    return out;
}

std::vector<double> richardson_weights(std::span<const double> eps)
{
    check_schedule(eps);
    std::vector<double> w(eps.size(), 0.0);
    const std::size_t n = eps.size();
    const double r = eps[n - 2] / eps[n - 1];
    w[n - 1] = r / (r - 1.0);
    w[n - 2] = -1.0 / (r - 1.0);
    return w;
}

}  // namespace solidsum
