#ifndef POLYFLOW_RATIONAL_HPP
#define POLYFLOW_RATIONAL_HPP

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace polyflow {

/// Exact arbitrary-precision rational. GMP keeps values canonical
/// (positive denominator, reduced fraction) after every operation,
/// so equality is structural and no rounding ever occurs.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

using RVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

/// Parses "p/q", "p", or a plain decimal such as "0.25" / "-1.5".
/// Decimals convert exactly (no binary rounding). Throws Error on junk.
Rational parse_rational(std::string_view text);

/// Canonical rendering: "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Nearest double.
double to_double(const Rational& value);

/// Decimal rendering with 17 significant digits, for plot-ready output.
std::string to_decimal_string(const Rational& value);

/// Exact rational equal to the given double (doubles are binary rationals).
Rational rational_from_double(double value);

/// Smallest integer >= value.
Integer rational_ceil(const Rational& value);

/// Smallest nonnegative integer k with k*k >= value. Requires value >= 0.
Integer ceil_sqrt(const Rational& value);

std::string to_string(const RVector& v);

inline Rational squared_norm(const RVector& v) { return v.dot(v); }

RVector make_rvector(std::initializer_list<Rational> values);
RMatrix make_rmatrix(std::initializer_list<std::initializer_list<Rational>> rows);

/// Deterministic sampler used by every randomized check. Built on
/// std::mt19937_64, whose output sequence is pinned by the standard, so a
/// (seed, input) pair reproduces bit-identical results on any platform.
class Sampler {
  public:
    explicit Sampler(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [lo, hi], inclusive, via rejection.
    std::int64_t int_in(std::int64_t lo, std::int64_t hi);

    /// Uniform rational on the grid lo + k*(hi-lo)/denominator.
    Rational rational_in(const Rational& lo, const Rational& hi,
                         std::int64_t denominator = 10007);

    /// Componentwise-uniform point in [-half_width, half_width]^dim.
    RVector point_in_box(int dim, const Rational& half_width,
                         std::int64_t denominator = 10007);

  private:
    std::mt19937_64 engine_;
};

}  // namespace polyflow

#endif  // POLYFLOW_RATIONAL_HPP
