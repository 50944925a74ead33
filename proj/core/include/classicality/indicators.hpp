#pragma once

// Classicality indicators per unitary stratum, closed-form references for
// N = 2, 3, 4, and the stratum-order (hierarchy) check.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "classicality/geometry.hpp"
#include "classicality/numeric.hpp"
#include "classicality/quadrature.hpp"
#include "classicality/strata.hpp"

namespace classicality {

struct IndicatorOptions {
  Method method = Method::Auto;
  std::size_t mc_samples = 1'000'000;
  std::uint64_t seed = kDefaultSeed;
  /// Auto picks LA up to this density degree and Lasserre above it.
  int la_max_degree = kLaDefaultMaxDegree;
  /// Route B-type quatrit regular strata through the two-simplex signed
  /// decomposition instead of the generic triangulation.
  bool signed_b_type = true;
};

template <class T>
struct IndicatorResult {
  int n = 0;
  DegeneracyType stratum;
  KernelSpectrum<T> spectrum;
  T value{0};
  T numerator{0};
  T denominator{0};
  Method requested = Method::Auto;
  /// Engine actually used for the numerator.
  Method method = Method::Auto;
  /// "trivial", "triangulation", "signed-decomposition" or "sampling".
  std::string decomposition;
  std::optional<double> stderr_estimate;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 0;
  std::vector<std::string> notes;
};

/// Q_N for the stratum at kernel spectrum pi:  the Hilbert-Schmidt integral
/// over the positivity polytope restricted to each face in the degeneracy
/// orbit, over the same integral on the full faces.  Each face is weighted
/// by 1/k_s from the trace constraint.  Q = 1 for the stratum (N).
template <class T>
IndicatorResult<T> indicator(int n, const DegeneracyType& stratum, const KernelSpectrum<T>& pi,
                             const IndicatorOptions& options = {});

/// Numerator and denominator of one face (ordered blocks), unweighted.
template <class T>
std::pair<T, T> face_integrals(const DegeneracyType& face, const KernelSpectrum<T>& pi, Method method,
                               bool signed_b_type = true);

/// (3pi_1-1)^-3 (1-3pi_3)^-3 [4 (3pi_1-1)^-2 + 4 (1-3pi_3)^-2 + 6 ((3pi_1-1)(1-3pi_3))^-1].
template <class T>
T q3_regular_closed_form(const KernelSpectrum<T>& pi);

/// (32/33) [(3pi_1-1)^-5 + (1-3pi_3)^-5] for pi_1 >= 1 and pi_3 <= 0;
/// nullopt outside that window.
template <class T>
std::optional<T> q3_degenerate_closed_form(const KernelSpectrum<T>& pi);

/// The 22-term Lasserre bracket for the A-type tetrahedron conv(O, P_OA,
/// P_OB, P_OC), over a^3 b^3 D^3 with a = 4pi_1-1, b = 1-4pi_4,
/// D = pi_1+pi_2-pi_3-pi_4; unnormalized.
template <class T>
T q4_a_type_bracket(const T& a, const T& b, const T& d);

/// Q_[T^4] for A-type spectra: the bracket divided by its value at
/// a = 3, b = 1, D = 1, where the tetrahedron is the whole ordered simplex.
/// Throws DomainError for B-type spectra.
template <class T>
T q4_a_type_closed_form(const KernelSpectrum<T>& pi);

template <class T>
struct HierarchyReport {
  struct Entry {
    DegeneracyType stratum;
    T value{0};
  };
  struct Violation {
    DegeneracyType lower, upper;
    double margin = 0.0;
  };
  struct Margin {
    DegeneracyType lower, upper;
    double margin = 0.0;
  };
  int n = 0;
  KernelSpectrum<T> spectrum;
  /// In the poset's order (finest stratum first).
  std::vector<Entry> entries;
  /// Q_upper - Q_lower for every cover relation.
  std::vector<Margin> margins;
  std::vector<Violation> violations;
  bool conjecture_holds = true;
};

/// Computes Q for every stratum of n and checks Q_lower < Q_upper along each
/// cover relation of the Hasse diagram (which covers every maximal chain).
template <class T>
HierarchyReport<T> hierarchy_check(int n, const KernelSpectrum<T>& pi, const IndicatorOptions& options = {});

#define CLASSICALITY_EXTERN_INDICATORS(T)                                                                     \
  extern template IndicatorResult<T> indicator(int, const DegeneracyType&, const KernelSpectrum<T>&,         \
                                               const IndicatorOptions&);                                     \
  extern template std::pair<T, T> face_integrals(const DegeneracyType&, const KernelSpectrum<T>&, Method, bool); \
  extern template T q3_regular_closed_form(const KernelSpectrum<T>&);                                       \
  extern template std::optional<T> q3_degenerate_closed_form(const KernelSpectrum<T>&);                     \
  extern template T q4_a_type_bracket(const T&, const T&, const T&);                                        \
  extern template T q4_a_type_closed_form(const KernelSpectrum<T>&);                                        \
  extern template HierarchyReport<T> hierarchy_check(int, const KernelSpectrum<T>&, const IndicatorOptions&);

CLASSICALITY_EXTERN_INDICATORS(Rational)
CLASSICALITY_EXTERN_INDICATORS(Real)
#undef CLASSICALITY_EXTERN_INDICATORS

}  // namespace classicality
