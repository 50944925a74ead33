#include "classicality/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "classicality/errors.hpp"

namespace classicality {

namespace {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Row echelon reduction in place; returns (rank, signed determinant when square).
template <class T>
std::pair<int, T> eliminate(Matrix<T> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a.front().size() : 0;
  T det(1);
  T scale(0);
  for (const auto& row : a) {
    for (const auto& x : row) scale = std::max(scale, abs_value(x));
  }
  const T pivot_floor = is_exact_v<T> ? T(0) : T(kRealSignTolerance) * std::max(T(1), scale);
  int rank = 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = r;
    for (std::size_t i = r; i < rows; ++i) {
      if (abs_value(a[i][c]) > abs_value(a[best][c])) best = i;
      if constexpr (is_exact_v<T>) {
        if (a[best][c] != 0) break;
      }
    }
    if (abs_value(a[best][c]) <= pivot_floor) {
      det = 0;
      continue;
    }
    if (best != r) {
      std::swap(a[best], a[r]);
      det = -det;
    }
    det *= a[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const T f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
    ++rank;
  }
  if (rank < static_cast<int>(rows) || rows != cols) det = 0;
  return {rank, det};
}

/// Affine rank of points using their first `chart` coordinates.
template <class T>
int affine_rank(const std::vector<const Point<T>*>& points, std::size_t chart) {
  if (points.size() <= 1) return 0;
  Matrix<T> rows;
  for (std::size_t i = 1; i < points.size(); ++i) {
    std::vector<T> row(chart);
    for (std::size_t c = 0; c < chart; ++c) row[c] = (*points[i])[c] - (*points.front())[c];
    rows.push_back(std::move(row));
  }
  return eliminate(std::move(rows)).first;
}

template <class T>
bool same_point(const Point<T>& a, const Point<T>& b) {
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (abs_value(T(a[i] - b[i])) > T(kVertexMergeTolerance)) return false;
    }
    return true;
  }
}

template <class T>
std::string isotropy_tag(const Point<T>& full) {
  std::vector<int> k{1};
  for (std::size_t i = 1; i < full.size(); ++i) {
    const T scale = std::max(T(1), abs_value(full[i - 1]));
    if (abs_value(T(full[i - 1] - full[i])) <= T(kDegeneracyTolerance) * scale) {
      ++k.back();
    } else {
      k.push_back(1);
    }
  }
  return DegeneracyType(std::move(k)).label();
}

}  // namespace

// ---------------------------------------------------------------------------
// Simplex

template <class T>
Simplex<T>::Simplex(std::vector<Point<T>> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw ContractViolation("simplex needs at least one vertex");
  for (const auto& v : vertices_) {
    if (v.size() != vertices_.front().size()) throw ContractViolation("simplex vertices of different dimensions");
  }
  if (vertices_.size() > vertices_.front().size() + 1) throw ContractViolation("too many vertices for the ambient space");
}

template <class T>
T Simplex<T>::chart_determinant() const {
  const std::size_t m = static_cast<std::size_t>(dim());
  if (m == 0) return T(1);
  Matrix<T> a(m, std::vector<T>(m));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) a[r][c] = vertices_[r + 1][c] - vertices_[0][c];
  }
  return eliminate(std::move(a)).second;
}

template <class T>
T euclidean_volume(const Simplex<T>& s) {
  return abs_value(s.chart_determinant()) / factorial<T>(s.dim());
}

template <class T>
Simplex<T> ordered_simplex(int n) {
  return face_simplex<T>(DegeneracyType(std::vector<int>(static_cast<std::size_t>(n), 1)));
}

template <class T>
Simplex<T> face_simplex(const DegeneracyType& face) {
  const auto& k = face.multiplicities();
  const std::size_t s = k.size();
  std::vector<int> partial(s);
  std::partial_sum(k.begin(), k.end(), partial.begin());
  std::vector<Point<T>> vertices;
  for (std::size_t t = s; t >= 1; --t) {
    Point<T> v(s, T(0));
    for (std::size_t b = 0; b < t; ++b) v[b] = T(1) / T(partial[t - 1]);
    vertices.push_back(std::move(v));
  }
  return Simplex<T>(std::move(vertices));
}

template <class T>
Point<T> expand_point(const Point<T>& reduced, const DegeneracyType& face) {
  const auto& k = face.multiplicities();
  if (reduced.size() != k.size()) throw ContractViolation("reduced point does not match the degeneracy face");
  Point<T> full;
  for (std::size_t b = 0; b < k.size(); ++b) full.insert(full.end(), static_cast<std::size_t>(k[b]), reduced[b]);
  return full;
}

template <class T>
T classicality_margin(const std::vector<T>& r, const KernelSpectrum<T>& pi) {
  if (static_cast<int>(r.size()) != pi.n()) throw ContractViolation("state and kernel spectra differ in dimension");
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    if (sign_of(T(r[i] - r[i + 1])) < 0) throw ContractViolation("state spectrum must be sorted non-increasingly");
  }
  T margin(0);
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i) margin += r[i] * pi[n - 1 - i];
  return margin;
}

template <class T>
T Hyperplane<T>::evaluate(const Point<T>& y) const {
  T value(0);
  for (std::size_t b = 0; b < coefficients.size(); ++b) value += coefficients[b] * y[b];
  return value;
}

template <class T>
Hyperplane<T> supporting_hyperplane(const KernelSpectrum<T>& pi, const DegeneracyType& face) {
  if (face.n() != pi.n()) throw ContractViolation("degeneracy face does not match the kernel dimension");
  const std::vector<T> up = pi.ascending();
  Hyperplane<T> h;
  std::size_t pos = 0;
  for (int k : face.multiplicities()) {
    T c(0);
    for (int j = 0; j < k; ++j) c += up[pos++];
    h.coefficients.push_back(c);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Clipping

template <class T>
std::vector<Point<T>> Polytope<T>::expanded_vertices() const {
  std::vector<Point<T>> out;
  for (const auto& v : vertices_) out.push_back(expand_point(v, face_));
  return out;
}

template <class T>
Polytope<T> positivity_polytope(const KernelSpectrum<T>& pi, const DegeneracyType& face) {
  Polytope<T> p;
  p.face_ = face;
  p.source_ = face_simplex<T>(face);
  p.hyperplane_ = supporting_hyperplane(pi, face);

  const auto& sv = p.source_.vertices();
  std::vector<T> margins;
  std::vector<int> signs;
  for (const auto& v : sv) {
    margins.push_back(p.hyperplane_.evaluate(v));
    signs.push_back(sign_of(margins.back()));
  }

  auto add_vertex = [&](Point<T> point, std::uint32_t support, bool on_cut) {
    for (std::size_t i = 0; i < p.vertices_.size(); ++i) {
      if (same_point(p.vertices_[i], point)) {
        p.origins_[i].supports.push_back(support);
        p.origins_[i].on_cut = p.origins_[i].on_cut || on_cut;
        return;
      }
    }
    p.vertices_.push_back(std::move(point));
    p.origins_.push_back({{support}, on_cut});
  };

  for (std::size_t i = 0; i < sv.size(); ++i) {
    if (signs[i] >= 0) add_vertex(sv[i], 1u << i, signs[i] == 0);
  }
  for (std::size_t i = 0; i < sv.size(); ++i) {
    for (std::size_t j = 0; j < sv.size(); ++j) {
      if (signs[i] <= 0 || signs[j] >= 0) continue;
      const T t = margins[i] / (margins[i] - margins[j]);
      Point<T> x(sv[i].size());
      for (std::size_t c = 0; c < x.size(); ++c) x[c] = sv[i][c] + t * (sv[j][c] - sv[i][c]);
      add_vertex(std::move(x), (1u << i) | (1u << j), true);
    }
  }
  if (p.vertices_.empty()) throw std::logic_error("positivity polytope is empty; the maximally mixed state must survive");

  std::vector<const Point<T>*> ptrs;
  for (const auto& v : p.vertices_) ptrs.push_back(&v);
  p.dim_ = affine_rank(ptrs, static_cast<std::size_t>(p.source_.dim()));
  for (const auto& v : p.expanded_vertices()) p.tags_.push_back(isotropy_tag(v));
  return p;
}

template <class T>
T SignedSimplexList<T>::signed_volume() const {
  T total(0);
  for (const auto& term : terms) total += T(term.sign) * euclidean_volume(term.simplex);
  return total;
}

namespace {

template <class T>
class PullingTriangulator {
 public:
  explicit PullingTriangulator(const Polytope<T>& p)
      : p_(p), chart_(static_cast<std::size_t>(p.source().dim())) {}

  std::vector<std::vector<std::size_t>> run() {
    const std::uint32_t all = (1u << p_.source().vertices().size()) - 1u;
    return face(all, false, p_.source().dim());
  }

 private:
  std::vector<std::size_t> face_vertices(std::uint32_t mask, bool cut) const {
    std::vector<std::size_t> out;
    const auto& origins = p_.origins();
    for (std::size_t v = 0; v < origins.size(); ++v) {
      if (cut && !origins[v].on_cut) continue;
      for (std::uint32_t s : origins[v].supports) {
        if ((s & ~mask) == 0) {
          out.push_back(v);
          break;
        }
      }
    }
    return out;
  }

  int rank(const std::vector<std::size_t>& idx) const {
    std::vector<const Point<T>*> pts;
    for (std::size_t i : idx) pts.push_back(&p_.vertices()[i]);
    return affine_rank(pts, chart_);
  }

  std::vector<std::vector<std::size_t>> face(std::uint32_t mask, bool cut, int dim) const {
    const auto verts = face_vertices(mask, cut);
    if (verts.empty()) return {};
    if (dim == 0) return {{verts.front()}};
    if (rank(verts) < dim) return {};
    const std::size_t apex = verts.front();

    std::vector<std::pair<std::uint32_t, bool>> candidates;
    for (std::size_t t = 0; t < 32; ++t) {
      if (mask & (1u << t)) candidates.emplace_back(mask & ~(1u << t), cut);
    }
    if (!cut) candidates.emplace_back(mask, true);

    std::set<std::vector<std::size_t>> seen;
    std::vector<std::vector<std::size_t>> out;
    for (const auto& [sub, sub_cut] : candidates) {
      auto fv = face_vertices(sub, sub_cut);
      if (std::find(fv.begin(), fv.end(), apex) != fv.end()) continue;
      if (fv.size() < static_cast<std::size_t>(dim) || rank(fv) != dim - 1) continue;
      if (!seen.insert(fv).second) continue;
      for (auto& simplex : face(sub, sub_cut, dim - 1)) {
        simplex.insert(simplex.begin(), apex);
        out.push_back(std::move(simplex));
      }
    }
    return out;
  }

  const Polytope<T>& p_;
  std::size_t chart_;
};

}  // namespace

template <class T>
SignedSimplexList<T> triangulate(const Polytope<T>& p) {
  SignedSimplexList<T> list;
  if (!p.is_full_dimensional()) {
    list.degenerate = true;
    return list;
  }
  for (const auto& idx : PullingTriangulator<T>(p).run()) {
    std::vector<Point<T>> vertices;
    for (std::size_t i : idx) vertices.push_back(p.vertices()[i]);
    list.terms.push_back({1, Simplex<T>(std::move(vertices))});
  }
  return list;
}

std::string to_string(CrossSection c) { return c == CrossSection::A_type ? "A" : "B"; }

template <class T>
CrossSection classify_cross_section(const KernelSpectrum<T>& pi) {
  if (pi.n() != 4) throw DomainError("cross-section classification is defined for N = 4 only");
  return sign_of(T(pi[0] - 1)) >= 0 ? CrossSection::A_type : CrossSection::B_type;
}

template <class T>
QuatritCrossings<T> quatrit_crossings(const KernelSpectrum<T>& pi) {
  if (pi.n() != 4) throw DomainError("quatrit crossings need N = 4");
  const T p1 = pi[0], p2 = pi[1], p3 = pi[2], p4 = pi[3];
  QuatritCrossings<T> x;
  {
    const T d = 4 * p1 - 1;
    x.oc = {p1 / d, p1 / d, p1 / d, T(p1 - 1) / d};
  }
  {
    const T d = 1 - p1 - 3 * p4;
    x.ac = {T(1 - (p1 + p4)) / d, T(-p4) / d, T(-p4) / d, T(0)};
  }
  {
    const T d = 1 - 4 * p4;
    x.oa = {T(1 - p4) / d, T(-p4) / d, T(-p4) / d, T(-p4) / d};
  }
  {
    const T d = 2 * ((p1 + p2) - (p3 + p4));
    x.ob = {T(p1 + p2) / d, T(p1 + p2) / d, T(-(p3 + p4)) / d, T(-(p3 + p4)) / d};
  }
  {
    const T d = p1 + 3 * p2 - 1;
    x.bc = {p2 / d, p2 / d, T(p1 + p2 - 1) / d, T(0)};
  }
  if (!is_zero(T(p3 - p4))) {
    const T d = p3 - p4;
    x.ab = Point<T>{p3 / d, T(-p4) / d, T(0), T(0)};
  }
  return x;
}

template <class T>
SignedSimplexList<T> signed_decomposition_b_type(const KernelSpectrum<T>& pi) {
  if (classify_cross_section(pi) != CrossSection::B_type) {
    throw DomainError("signed decomposition applies to B-type (pi_1 < 1) quatrit kernels only");
  }
  const auto x = quatrit_crossings(pi);
  const Point<T> o(4, T(1) / 4);
  const Point<T> c{T(1) / 3, T(1) / 3, T(1) / 3, T(0)};
  SignedSimplexList<T> list;
  list.terms.push_back({+1, Simplex<T>({o, x.oc, x.oa, x.ob})});
  list.terms.push_back({-1, Simplex<T>({c, x.oc, x.ac, x.bc})});
  return list;
}

#define CLASSICALITY_INSTANTIATE_GEOMETRY(T)                                                \
  template class Simplex<T>;                                                                \
  template class Polytope<T>;                                                               \
  template struct Hyperplane<T>;                                                            \
  template struct SignedSimplexList<T>;                                                     \
  template T euclidean_volume(const Simplex<T>&);                                           \
  template Simplex<T> ordered_simplex(int);                                                 \
  template Simplex<T> face_simplex(const DegeneracyType&);                                  \
  template Point<T> expand_point(const Point<T>&, const DegeneracyType&);                   \
  template T classicality_margin(const std::vector<T>&, const KernelSpectrum<T>&);         \
  template Hyperplane<T> supporting_hyperplane(const KernelSpectrum<T>&, const DegeneracyType&); \
  template Polytope<T> positivity_polytope(const KernelSpectrum<T>&, const DegeneracyType&);     \
  template SignedSimplexList<T> triangulate(const Polytope<T>&);                            \
  template CrossSection classify_cross_section(const KernelSpectrum<T>&);                   \
  template QuatritCrossings<T> quatrit_crossings(const KernelSpectrum<T>&);                 \
  template SignedSimplexList<T> signed_decomposition_b_type(const KernelSpectrum<T>&);

CLASSICALITY_INSTANTIATE_GEOMETRY(Rational)
CLASSICALITY_INSTANTIATE_GEOMETRY(Real)

}  // namespace classicality
