#pragma once

// Ordered eigenvalue simplices, the supporting hyperplane of classical
// states, half-space clipping, and (signed) simplicial decompositions.
//
// Points on a degeneracy face with ordered blocks k_1..k_s are stored in
// reduced coordinates y_1..y_s (one value per block); the full spectrum
// repeats y_b k_b times.  For the regular face the two coincide.  Every
// simplex is measured in the chart formed by its first `dim` coordinates.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "classicality/numeric.hpp"
#include "classicality/polynomial.hpp"
#include "classicality/strata.hpp"

namespace classicality {

template <class T>
using Point = std::vector<T>;

template <class T>
class Simplex {
 public:
  Simplex() = default;
  /// Throws ContractViolation if the vertices have different lengths or
  /// there are more vertices than coordinates + 1.
  explicit Simplex(std::vector<Point<T>> vertices);

  const std::vector<Point<T>>& vertices() const { return vertices_; }
  const Point<T>& vertex(std::size_t i) const { return vertices_[i]; }
  int dim() const { return static_cast<int>(vertices_.size()) - 1; }
  std::size_t ambient() const { return vertices_.empty() ? 0 : vertices_.front().size(); }

  /// Signed det of [v_a - v_0] restricted to the chart coordinates.
  T chart_determinant() const;
  bool is_degenerate() const { return is_zero(chart_determinant()); }
  /// u in K_dim -> v_0 + sum (v_a - v_0) u_a, in ambient coordinates.
  AffineChartMap<T> chart_map() const { return AffineChartMap<T>::from_vertices(vertices_); }

 private:
  std::vector<Point<T>> vertices_;
};

/// |det[v_a - v_0]| / m! in the chart of the first m coordinates.
template <class T>
T euclidean_volume(const Simplex<T>& s);

/// The chain (1/N,...,1/N), (1/(N-1),...,0), ..., (1,0,...,0) in N coordinates;
/// vertex 0 is the maximally mixed state.
template <class T>
Simplex<T> ordered_simplex(int n);

/// The degeneracy face of the ordered simplex for ordered blocks k, in
/// reduced coordinates.  Vertex t holds 1/K in the first blocks whose sizes
/// sum to K, for K running over the partial sums from N downwards; vertex 0
/// is the maximally mixed state.
template <class T>
Simplex<T> face_simplex(const DegeneracyType& face);

/// Repeats each reduced coordinate by its block multiplicity.
template <class T>
Point<T> expand_point(const Point<T>& reduced, const DegeneracyType& face);

/// (r decreasing, pi increasing) = sum_i r_i pi_{N+1-i}.  Throws
/// ContractViolation if r is not sorted non-increasingly.
template <class T>
T classicality_margin(const std::vector<T>& r, const KernelSpectrum<T>& pi);

/// The supporting hyperplane restricted to a degeneracy face:
/// margin(y) = sum_b coefficients[b] * y_b, where coefficients[b] sums the
/// increasing kernel eigenvalues paired with block b.
template <class T>
struct Hyperplane {
  std::vector<T> coefficients;
  T evaluate(const Point<T>& y) const;
};

template <class T>
Hyperplane<T> supporting_hyperplane(const KernelSpectrum<T>& pi, const DegeneracyType& face);

/// Intersection of a degeneracy face of the ordered simplex with the
/// half-space margin >= 0.
template <class T>
class Polytope {
 public:
  /// How a vertex arises: the simplex vertices (one bit) or edges (two bits)
  /// it lies on, and whether it lies on the cutting hyperplane.
  struct VertexOrigin {
    std::vector<std::uint32_t> supports;
    bool on_cut = false;
  };

  const std::vector<Point<T>>& vertices() const { return vertices_; }
  std::vector<Point<T>> expanded_vertices() const;
  const std::vector<std::string>& tags() const { return tags_; }
  const std::vector<VertexOrigin>& origins() const { return origins_; }
  const DegeneracyType& face() const { return face_; }
  const Simplex<T>& source() const { return source_; }
  const Hyperplane<T>& hyperplane() const { return hyperplane_; }
  /// Affine dimension of the vertex set.
  int dim() const { return dim_; }
  bool is_full_dimensional() const { return dim_ == source_.dim(); }

 private:
  template <class U>
  friend Polytope<U> positivity_polytope(const KernelSpectrum<U>&, const DegeneracyType&);

  DegeneracyType face_;
  Simplex<T> source_;
  Hyperplane<T> hyperplane_;
  std::vector<Point<T>> vertices_;
  std::vector<VertexOrigin> origins_;
  std::vector<std::string> tags_;
  int dim_ = 0;
};

/// Clips the degeneracy face `face` (ordered blocks summing to N; (1,..,1) is
/// the full simplex) by the supporting half-space and collects the surviving
/// simplex vertices plus all edge crossings.
template <class T>
Polytope<T> positivity_polytope(const KernelSpectrum<T>& pi, const DegeneracyType& face);

template <class T>
struct SignedSimplexList {
  struct Term {
    int sign = 1;
    Simplex<T> simplex;
  };
  std::vector<Term> terms;
  /// Set when the polytope is lower-dimensional (zero volume).
  bool degenerate = false;

  T signed_volume() const;
};

/// Pulling triangulation from the maximally mixed vertex: cones over every
/// facet not containing it, recursively.  All signs +1.
template <class T>
SignedSimplexList<T> triangulate(const Polytope<T>& p);

enum class CrossSection { A_type, B_type };
std::string to_string(CrossSection c);

/// Quatrit only: A-type (triangular cross-section) iff pi_1 >= 1.
template <class T>
CrossSection classify_cross_section(const KernelSpectrum<T>& pi);

/// Closed-form crossings of the quatrit hyperplane with the lines through
/// the edges of the ordered tetrahedron O, C, B, A.  P_AB is absent when
/// pi_3 == pi_4.
template <class T>
struct QuatritCrossings {
  Point<T> oc, ac, oa, ob, bc;
  std::optional<Point<T>> ab;
};

template <class T>
QuatritCrossings<T> quatrit_crossings(const KernelSpectrum<T>& pi);

/// B-type quatrit: +conv(O, P_OC, P_OA, P_OB) - conv(C, P_OC, P_AC, P_BC),
/// with P_OC on the extension of edge OC.  Throws DomainError for A-type.
template <class T>
SignedSimplexList<T> signed_decomposition_b_type(const KernelSpectrum<T>& pi);

#define CLASSICALITY_EXTERN_GEOMETRY(T)                                                          \
  extern template class Simplex<T>;                                                              \
  extern template class Polytope<T>;                                                             \
  extern template struct Hyperplane<T>;                                                          \
  extern template struct SignedSimplexList<T>;                                                   \
  extern template T euclidean_volume(const Simplex<T>&);                                         \
  extern template Simplex<T> ordered_simplex(int);                                               \
  extern template Simplex<T> face_simplex(const DegeneracyType&);                                \
  extern template Point<T> expand_point(const Point<T>&, const DegeneracyType&);                 \
  extern template T classicality_margin(const std::vector<T>&, const KernelSpectrum<T>&);       \
  extern template Hyperplane<T> supporting_hyperplane(const KernelSpectrum<T>&, const DegeneracyType&); \
  extern template Polytope<T> positivity_polytope(const KernelSpectrum<T>&, const DegeneracyType&);     \
  extern template SignedSimplexList<T> triangulate(const Polytope<T>&);                          \
  extern template CrossSection classify_cross_section(const KernelSpectrum<T>&);                 \
  extern template QuatritCrossings<T> quatrit_crossings(const KernelSpectrum<T>&);               \
  extern template SignedSimplexList<T> signed_decomposition_b_type(const KernelSpectrum<T>&);

CLASSICALITY_EXTERN_GEOMETRY(Rational)
CLASSICALITY_EXTERN_GEOMETRY(Real)
#undef CLASSICALITY_EXTERN_GEOMETRY

}  // namespace classicality
