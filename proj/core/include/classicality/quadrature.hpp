#pragma once

// Exact and stochastic integration of polynomials over simplices.
//
//  * integrate_la: polarization of a product of linear forms, evaluated at
//    the simplex vertices through matrix permanents (Ryser).
//  * integrate_lasserre: Bombieri transform of each homogeneous part,
//    evaluated at one point per degree.
//  * integrate_dirichlet: monomial-wise a!/(n+|a|)! on the canonical simplex.
//  * integrate_mc: uniform sampling with a counter-based generator.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "classicality/geometry.hpp"
#include "classicality/numeric.hpp"
#include "classicality/polynomial.hpp"

namespace classicality {

enum class Method { Auto, LA, Lasserre, MonteCarlo, Dirichlet };

std::string to_string(Method m);
/// Accepts "auto", "la", "lasserre", "mc", "dirichlet" (case-insensitive).
Method parse_method(std::string_view text);

/// Auto resolves to LA up to this density degree, Lasserre above it.
inline constexpr int kLaDefaultMaxDegree = 14;
/// Largest permanent order accepted by the LA engine.
inline constexpr int kMaxPermanentOrder = 24;

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

template <class T>
class SquareMatrix {
 public:
  explicit SquareMatrix(std::size_t n = 0) : n_(n), data_(n * n, T(0)) {}
  static SquareMatrix from_rows(const std::vector<std::vector<T>>& rows);

  std::size_t size() const { return n_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

 private:
  std::size_t n_;
  std::vector<T> data_;
};

/// Ryser inclusion-exclusion over column subsets in Gray-code order,
/// O(2^n n).  Throws CapacityError above kMaxPermanentOrder.
template <class T>
T permanent(const SquareMatrix<T>& m);

/// Permanent of the q x q matrix whose rows are `rows[s]` repeated
/// row_multiplicity[s] times and whose columns are `columns[t]` repeated
/// column_multiplicity[t] times, with entries rows[s] . columns[t].  Ryser's
/// sum grouped by how many copies of each column are chosen.
template <class T>
T permanent_repeated(const std::vector<std::vector<T>>& rows, std::span<const int> row_multiplicity,
                     const std::vector<std::vector<T>>& columns, std::span<const int> column_multiplicity);

/// Calls visit(a) for every (a_1..a_parts) of non-negative integers summing
/// to q, in reverse lexicographic order.
void for_each_composition(int q, int parts, const std::function<void(const std::vector<int>&)>& visit);
std::uint64_t composition_count(int q, int parts);

template <class T>
struct QuadratureResult {
  T value{0};
  Method method = Method::LA;
  /// Standard error, Monte Carlo only.
  std::optional<double> stderr_estimate;
  std::size_t samples = 0;
};

enum class PermanentKernel { Grouped, GrayCode };

/// Integral of a homogeneous product of linear forms (in the simplex's
/// ambient coordinates) over the simplex, w.r.t. its chart measure.
template <class T>
QuadratureResult<T> integrate_la(const LinearFormProduct<T>& forms, const Simplex<T>& simplex,
                                 PermanentKernel kernel = PermanentKernel::Grouped);

/// s_j = (1,...,1) / ((n+1)...(n+j))^{1/j}.
std::vector<Real> lasserre_point(int n, int j);

/// Integral over the canonical simplex K_n = {x >= 0, sum x <= 1} from the
/// Bombieri transform of each homogeneous part evaluated at its point s_j.
template <class T>
QuadratureResult<T> integrate_lasserre(const SparsePolynomial<T>& p, int n);

/// Pulls the forms back to K_dim and applies the Lasserre formula.
template <class T>
QuadratureResult<T> integrate_lasserre(const LinearFormProduct<T>& forms, const Simplex<T>& simplex);

/// Integral over K_n from prod a_i! / (n + |a|)! per monomial.
template <class T>
QuadratureResult<T> integrate_dirichlet(const SparsePolynomial<T>& p, int n);

template <class T>
QuadratureResult<T> integrate_dirichlet(const LinearFormProduct<T>& forms, const Simplex<T>& simplex);

using Integrand = std::function<double(std::span<const double>)>;

/// Monte Carlo over the simplex (uniform via sorted-uniform spacings) in
/// double precision.  Deterministic per seed for any thread count.
template <class T>
QuadratureResult<T> integrate_mc(const Integrand& f, const Simplex<T>& simplex, std::size_t samples,
                                 std::uint64_t seed = kDefaultSeed);

template <class T>
QuadratureResult<T> integrate_mc(const SparsePolynomial<T>& p, const Simplex<T>& simplex, std::size_t samples,
                                 std::uint64_t seed = kDefaultSeed);

template <class T>
QuadratureResult<T> integrate_mc(const LinearFormProduct<T>& forms, const Simplex<T>& simplex, std::size_t samples,
                                 std::uint64_t seed = kDefaultSeed);

/// Uniform double in (0, 1) from (seed, stream, index); pure function.
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

#define CLASSICALITY_EXTERN_QUAD(T)                                                                          \
  extern template class SquareMatrix<T>;                                                                     \
  extern template T permanent(const SquareMatrix<T>&);                                                       \
  extern template T permanent_repeated(const std::vector<std::vector<T>>&, std::span<const int>,            \
                                       const std::vector<std::vector<T>>&, std::span<const int>);           \
  extern template QuadratureResult<T> integrate_la(const LinearFormProduct<T>&, const Simplex<T>&, PermanentKernel); \
  extern template QuadratureResult<T> integrate_lasserre(const SparsePolynomial<T>&, int);                   \
  extern template QuadratureResult<T> integrate_lasserre(const LinearFormProduct<T>&, const Simplex<T>&);    \
  extern template QuadratureResult<T> integrate_dirichlet(const SparsePolynomial<T>&, int);                  \
  extern template QuadratureResult<T> integrate_dirichlet(const LinearFormProduct<T>&, const Simplex<T>&);   \
  extern template QuadratureResult<T> integrate_mc(const Integrand&, const Simplex<T>&, std::size_t, std::uint64_t); \
  extern template QuadratureResult<T> integrate_mc(const SparsePolynomial<T>&, const Simplex<T>&, std::size_t, std::uint64_t); \
  extern template QuadratureResult<T> integrate_mc(const LinearFormProduct<T>&, const Simplex<T>&, std::size_t, std::uint64_t);

CLASSICALITY_EXTERN_QUAD(Rational)
CLASSICALITY_EXTERN_QUAD(Real)
#undef CLASSICALITY_EXTERN_QUAD

}  // namespace classicality
