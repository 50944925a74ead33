#pragma once

// Kernel and state spectra, degeneracy types (partitions of N) with their
// refinement order, and Hilbert-Schmidt densities on each stratum.

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "classicality/numeric.hpp"
#include "classicality/polynomial.hpp"

namespace classicality {

/// A multiplicity pattern k_1..k_s of eigenvalue blocks.  As a stratum label
/// the blocks are sorted non-increasingly; as a degeneracy face of the ordered
/// simplex the order is significant ((2,1) and (1,2) are different faces).
class DegeneracyType {
 public:
  DegeneracyType() = default;
  /// Throws DomainError on empty input or non-positive blocks.
  explicit DegeneracyType(std::vector<int> multiplicities);

  /// Parses "2,1,1".
  static DegeneracyType parse(std::string_view text);

  const std::vector<int>& multiplicities() const { return k_; }
  int n() const;
  std::size_t blocks() const { return k_.size(); }
  bool is_regular() const;  // (1,...,1)
  bool is_maximal() const;  // (N)

  /// Sorted non-increasing copy.
  DegeneracyType canonical() const;
  bool is_canonical() const;

  /// Isotropy-class name: "T^4", "SU(3)", "S(U(2)xU(1)^2)" (with a
  /// multiplication sign), collapsing consecutive equal blocks.
  std::string label() const;
  /// "2,1,1"
  std::string to_string() const;

  /// Total degree 2 * sum_{i<j} k_i k_j of the stratum density.
  int density_degree() const;

  auto operator<=>(const DegeneracyType&) const = default;

 private:
  std::vector<int> k_;
};

/// True if the blocks of `fine` can be grouped so that the group sums are the
/// blocks of `coarse` (both as multisets).  Reflexive.
bool refines(const DegeneracyType& fine, const DegeneracyType& coarse);

/// All partitions of n with the refinement order: (H) < (K) iff H is a strict
/// refinement of K, so (1^N) is the minimum and (N) the maximum.
class StrataPoset {
 public:
  explicit StrataPoset(int n);

  int n() const { return n_; }
  const std::vector<DegeneracyType>& strata() const { return strata_; }
  std::size_t size() const { return strata_.size(); }
  std::size_t index_of(const DegeneracyType& d) const;

  /// Strict order.
  bool less(std::size_t a, std::size_t b) const { return less_[a][b]; }
  /// a < b with nothing in between.
  bool covers(std::size_t a, std::size_t b) const;
  std::vector<std::pair<std::size_t, std::size_t>> hasse_edges() const;
  /// Every maximal chain from (1^N) to (N), as index lists.
  std::vector<std::vector<std::size_t>> maximal_chains() const;

 private:
  int n_;
  std::vector<DegeneracyType> strata_;
  std::vector<std::vector<bool>> less_;
};

StrataPoset enumerate_strata(int n);

/// Distinct reorderings of the block multiplicities, starting from the
/// non-increasing one and proceeding in decreasing lexicographic order.
std::vector<DegeneracyType> degeneracy_orbit(const DegeneracyType& deg);

/// Eigenvalues of a Stratonovich-Weyl kernel, non-increasing, with
/// sum = 1 and sum of squares = N.
template <class T>
class KernelSpectrum {
 public:
  KernelSpectrum() = default;

  /// Validates ordering and both moment constraints (exactly for rationals,
  /// to `tolerance` otherwise).  Throws DomainError naming the residuals.
  static KernelSpectrum create(std::vector<T> pi, double tolerance = 1e-12);

  int n() const { return static_cast<int>(pi_.size()); }
  const std::vector<T>& values() const { return pi_; }
  const T& operator[](std::size_t i) const { return pi_[i]; }
  /// pi in increasing order (pi_N, ..., pi_1).
  std::vector<T> ascending() const;
  /// (sum - 1, sum of squares - N).
  std::pair<T, T> residuals() const;
  /// Degeneracy pattern of the kernel itself, with the relative tolerance
  /// used to call two eigenvalues equal.
  DegeneracyType degeneracy() const;

 private:
  explicit KernelSpectrum(std::vector<T> pi) : pi_(std::move(pi)) {}
  std::vector<T> pi_;
};

/// Eigenvalues of a density matrix: 1 >= r_1 >= ... >= r_N >= 0, sum 1.
template <class T>
class StateSpectrum {
 public:
  static StateSpectrum create(std::vector<T> r);
  const std::vector<T>& values() const { return r_; }
  int n() const { return static_cast<int>(r_.size()); }

 private:
  explicit StateSpectrum(std::vector<T> r) : r_(std::move(r)) {}
  std::vector<T> r_;
};

/// Upper bound of each chart angle at the given leading angles; see
/// spectrum_from_moduli.  Returns one bound per angle.
std::vector<Real> moduli_angle_bounds(int n, std::span<const Real> angles);

/// Kernel spectrum from N-2 chart angles.
///
/// The constraint set {sum = 1, sum of squares = N} is the sphere of radius
/// sqrt(N - 1/N) about (1/N,...,1/N) in the trace hyperplane; the ordering
/// chamber on it is the spherical simplex spanned by the directions f_m of the
/// ordered-simplex vertices (1/m,..,1/m,0,..) - (1/N,..).  The chart walks
/// geodesically: q_1 = f_1, and q_{m+1} is q_m rotated from f_{m+1} towards
/// q_m by angle psi_m.  For N = 3 this is the zeta parameterization with
/// zeta = psi_1 in [0, pi/3]:
///   pi = (1/3 + 4/3 sin(zeta + pi/6), 1/3 + 4/3 sin(pi/6 - zeta), 1/3 - 4/3 cos zeta).
/// Throws DomainError when an angle leaves [0, bound] or the result is not
/// sorted, naming the violated ordering.
KernelSpectrum<Real> spectrum_from_moduli(int n, std::span<const Real> angles);

/// Same chart driven by fractions t_m in [0,1] of each angle's admissible
/// range.  Also returns the angles.  Used by grid scans.
std::pair<KernelSpectrum<Real>, std::vector<Real>> spectrum_from_chamber_fractions(int n, std::span<const Real> fractions);

/// Hilbert-Schmidt eigenvalue density on a degeneracy face k (ordered blocks):
/// prod_{i<j} (y_i - y_j)^{2 k_i k_j} in the s distinct eigenvalues, subject to
/// sum_i k_i y_i = 1.
template <class T>
struct StratumDensity {
  DegeneracyType degeneracy;
  SparsePolynomial<T> polynomial;
  std::vector<int> weight_constraint;

  /// The density with y_s eliminated by the weight constraint, over s-1
  /// variables.
  SparsePolynomial<T> eliminated() const;
};

template <class T>
StratumDensity<T> stratum_density(const DegeneracyType& deg);

extern template class KernelSpectrum<Rational>;
extern template class KernelSpectrum<Real>;
extern template class StateSpectrum<Rational>;
extern template class StateSpectrum<Real>;
extern template struct StratumDensity<Rational>;
extern template struct StratumDensity<Real>;
extern template StratumDensity<Rational> stratum_density(const DegeneracyType&);
extern template StratumDensity<Real> stratum_density(const DegeneracyType&);

}  // namespace classicality
