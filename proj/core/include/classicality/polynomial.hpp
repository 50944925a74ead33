#pragma once

// Sparse multivariate polynomials, affine pullbacks, the Bombieri transform,
// and products of linear forms.

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "classicality/numeric.hpp"

namespace classicality {

using Exponent = std::vector<int>;

int total_degree(const Exponent& e);

/// Graded lexicographic order: lower total degree first, then larger
/// exponent vectors first (x^2 < xy < y^2 within degree 2).
struct GradedLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

template <class T>
class SparsePolynomial {
 public:
  using TermMap = std::map<Exponent, T, GradedLexLess>;

  SparsePolynomial() = default;
  explicit SparsePolynomial(std::size_t nvars) : nvars_(nvars) {}

  static SparsePolynomial constant(std::size_t nvars, const T& c);
  static SparsePolynomial variable(std::size_t nvars, std::size_t index);
  static SparsePolynomial monomial(Exponent exponent, const T& c);
  /// c0 + sum_i c[i] x_i
  static SparsePolynomial affine(const T& c0, std::span<const T> coefficients);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int total_degree() const;
  bool is_homogeneous() const;
  T coefficient(const Exponent& exponent) const;

  /// Adds c to the coefficient of x^exponent, erasing it if it cancels.
  void add_term(const Exponent& exponent, const T& c);

  SparsePolynomial& operator+=(const SparsePolynomial& other);
  SparsePolynomial& operator-=(const SparsePolynomial& other);
  SparsePolynomial& operator*=(const T& scalar);
  SparsePolynomial& operator*=(const SparsePolynomial& other) { return *this = *this * other; }

  friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) { return a += b; }
  friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) { return a -= b; }
  friend SparsePolynomial operator*(SparsePolynomial a, const T& s) { return a *= s; }
  friend SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) { return a.times(b); }

  SparsePolynomial pow(int k) const;

  T evaluate(std::span<const T> x) const;
  double evaluate(std::span<const double> x) const;

  /// Coefficient-wise equality (exact) or within `tolerance` (real mode).
  bool approx_equal(const SparsePolynomial& other, double tolerance = 0.0) const;
  bool operator==(const SparsePolynomial& other) const { return approx_equal(other, 0.0); }

 private:
  SparsePolynomial times(const SparsePolynomial& other) const;
  void check_compatible(const SparsePolynomial& other) const;

  std::size_t nvars_ = 0;
  TermMap terms_;
};

/// Terms grouped by total degree, ascending.
template <class T>
std::vector<std::pair<int, SparsePolynomial<T>>> homogeneous_parts(const SparsePolynomial<T>& p);

/// Multiplies each coefficient p_a by a_1! ... a_n!.
template <class T>
SparsePolynomial<T> bombieri(const SparsePolynomial<T>& p);

/// Affine map u -> base + sum_a directions[a] * u_a from R^m into R^d.
template <class T>
struct AffineChartMap {
  std::vector<T> base;
  std::vector<std::vector<T>> directions;

  std::size_t source_dim() const { return directions.size(); }
  std::size_t target_dim() const { return base.size(); }
  std::vector<T> apply(std::span<const T> u) const;

  /// The map sending the canonical simplex K_m onto conv(vertices), with
  /// vertices[0] as the image of the origin.
  static AffineChartMap from_vertices(const std::vector<std::vector<T>>& vertices);
  static AffineChartMap identity(std::size_t dim);
};

/// p(base + sum directions[a] u_a), expanded in the m source variables.
template <class T>
SparsePolynomial<T> pullback(const SparsePolynomial<T>& p, const AffineChartMap<T>& map);

/// prod_s (a_s . x + c_s)^{m_s}. Constant terms are zero for the
/// Vandermonde-type forms used by the integration engines.
template <class T>
struct LinearFormProduct {
  struct Factor {
    std::vector<T> coefficients;
    T constant{0};
    int multiplicity = 1;
  };

  std::size_t nvars = 0;
  std::vector<Factor> factors;

  int degree() const;
  bool is_homogeneous() const;
  /// The q linear forms with repeats, in factor order.
  std::vector<std::vector<T>> expanded_rows() const;
  SparsePolynomial<T> expand() const;
  T evaluate(std::span<const T> x) const;
  double evaluate(std::span<const double> x) const;
};

/// Composes every form with an affine map (result is over map.source_dim()).
template <class T>
LinearFormProduct<T> compose(const LinearFormProduct<T>& forms, const AffineChartMap<T>& map);

/// prod_{i<j} (y_i - y_j)^{2 k_i k_j} over the s distinct eigenvalues of a
/// degeneracy pattern k (ordered blocks).
template <class T>
LinearFormProduct<T> vandermonde_forms(std::span<const int> multiplicities);

/// The difference forms (e_i - e_j), each repeated 2 k_i k_j times, composed
/// with the chart map.  The chart origin must have equal distinct-eigenvalue
/// coordinates so that the result is homogeneous.
template <class T>
LinearFormProduct<T> as_linear_form_product(std::span<const int> multiplicities, const AffineChartMap<T>& map);

#define CLASSICALITY_EXTERN_POLY(T)                                                                     \
  extern template class SparsePolynomial<T>;                                                            \
  extern template struct AffineChartMap<T>;                                                             \
  extern template struct LinearFormProduct<T>;                                                          \
  extern template std::vector<std::pair<int, SparsePolynomial<T>>> homogeneous_parts(const SparsePolynomial<T>&); \
  extern template SparsePolynomial<T> bombieri(const SparsePolynomial<T>&);                            \
  extern template SparsePolynomial<T> pullback(const SparsePolynomial<T>&, const AffineChartMap<T>&);  \
  extern template LinearFormProduct<T> compose(const LinearFormProduct<T>&, const AffineChartMap<T>&); \
  extern template LinearFormProduct<T> vandermonde_forms(std::span<const int>);                       \
  extern template LinearFormProduct<T> as_linear_form_product(std::span<const int>, const AffineChartMap<T>&);

CLASSICALITY_EXTERN_POLY(Rational)
CLASSICALITY_EXTERN_POLY(Real)
#undef CLASSICALITY_EXTERN_POLY

}  // namespace classicality
