#pragma once

// Scalar types shared by every module.
//
// Two arithmetic modes are supported: exact rationals (GMP) whenever the input
// spectrum is rational, and 113-bit binary floating point otherwise.  All
// algorithms are templates over the scalar and are explicitly instantiated for
// both types.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include <boost/multiprecision/float128.hpp>

namespace classicality {

using Rational = mpq_class;
using Real = boost::multiprecision::float128;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr std::string_view name = "rational";
};

template <>
struct ScalarTraits<Real> {
  static constexpr bool exact = false;
  static constexpr std::string_view name = "real";
};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

/// Relative tolerance used for sign decisions on extended-precision reals.
/// Exact arithmetic always decides signs exactly.
inline constexpr double kRealSignTolerance = 1e-24;

/// Two kernel eigenvalues closer than this (relative) are considered equal.
inline constexpr double kDegeneracyTolerance = 1e-10;

/// Vertex deduplication distance in the chart metric.
inline constexpr double kVertexMergeTolerance = 1e-10;

inline double to_double(const Rational& x) { return x.get_d(); }
inline double to_double(const Real& x) { return x.convert_to<double>(); }

inline Real to_real(const Rational& x) {
  return Real(x.get_num().get_str().c_str()) / Real(x.get_den().get_str().c_str());
}
inline Real to_real(const Real& x) { return x; }

template <class T>
T from_rational(const Rational& x);
template <>
inline Rational from_rational<Rational>(const Rational& x) { return x; }
template <>
inline Real from_rational<Real>(const Rational& x) { return to_real(x); }

template <class T>
T abs_value(const T& x) {
  if constexpr (is_exact_v<T>) {
    return Rational(::abs(x));
  } else {
    return boost::multiprecision::abs(x);
  }
}

/// Sign of x with a tolerance relative to `scale` (ignored in exact mode).
template <class T>
int sign_of(const T& x, const T& scale = T(1)) {
  if constexpr (is_exact_v<T>) {
    return ::sgn(x);
  } else {
    const Real bound = kRealSignTolerance * std::max(Real(1), boost::multiprecision::abs(scale));
    if (boost::multiprecision::abs(x) <= bound) return 0;
    return x > 0 ? 1 : -1;
  }
}

template <class T>
bool is_zero(const T& x, const T& scale = T(1)) {
  return sign_of(x, scale) == 0;
}

/// n! as a scalar.
template <class T>
T factorial(int n) {
  T result(1);
  for (int i = 2; i <= n; ++i) result *= T(i);
  return result;
}

/// Binomial coefficient C(n, k) as an unsigned 64-bit integer.
std::uint64_t binomial(int n, int k);

/// Parses "p/q", integers, and decimals ("-1.25", "3e-2") exactly.
Rational parse_rational(std::string_view text);

/// Parses the same grammar into an extended-precision real.
Real parse_real(std::string_view text);

template <class T>
T parse_scalar(std::string_view text);
template <>
inline Rational parse_scalar<Rational>(std::string_view text) { return parse_rational(text); }
template <>
inline Real parse_scalar<Real>(std::string_view text) { return parse_real(text); }

/// Decimal rendering with `digits` significant digits.
std::string to_decimal(const Rational& x, int digits = 17);
std::string to_decimal(const Real& x, int digits = 17);

/// "p/q" (or "p" for integers) for exact values, nullopt otherwise.
inline std::optional<std::string> to_exact_string(const Rational& x) {
  Rational q(x);
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}
inline std::optional<std::string> to_exact_string(const Real&) { return std::nullopt; }

/// Exact string when available, else a full-precision decimal.
template <class T>
std::string to_string(const T& x) {
  if (auto exact = to_exact_string(x)) return *exact;
  return to_decimal(x, 36);
}

template <class T>
std::vector<double> to_doubles(const std::vector<T>& xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(to_double(x));
  return out;
}

}  // namespace classicality
