#ifndef SOLIDSUM_TYPES_HPP
#define SOLIDSUM_TYPES_HPP

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace solidsum {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Complex = std::complex<double>;
using Point = Vector<double>;
using ComplexPoint = Vector<Complex>;
using LatticePoint = Vector<std::int64_t>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr Complex kI{0.0, 1.0};

/**
 * Bilinear pairing sum_k a_k b_k.  Never conjugates either argument, unlike
 * Eigen's dot(), so <s, m> stays holomorphic in s.
 */
template <typename DerivedA, typename DerivedB>
auto bilinear(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b)
{
    using ScalarA = typename DerivedA::Scalar;
    using ScalarB = typename DerivedB::Scalar;
    using Result = decltype(ScalarA{} * ScalarB{});
    Result acc{};
    for (Eigen::Index k = 0; k < a.size(); ++k)
        acc += a(k) * b(k);
    return acc;
}

/// Lift a real point into complex space.
inline ComplexPoint complexify(const Point& x)
{
    return x.cast<Complex>();
}

/// Where a number came from.
enum class Provenance { Exact, Quadrature, MonteCarlo, Extrapolated };

const char* to_string(Provenance provenance);

/// Uniform return type for numeric evaluators: value plus an error estimate.
template <typename Scalar>
struct Estimate {
    Scalar value{};
    double error = 0.0;
    Provenance provenance = Provenance::Exact;
};

}  // namespace solidsum

#endif  // SOLIDSUM_TYPES_HPP
