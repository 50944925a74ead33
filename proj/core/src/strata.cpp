#include "classicality/strata.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "classicality/errors.hpp"

namespace classicality {

// ---------------------------------------------------------------------------
// DegeneracyType

DegeneracyType::DegeneracyType(std::vector<int> multiplicities) : k_(std::move(multiplicities)) {
  if (k_.empty()) throw DomainError("degeneracy type needs at least one block");
  for (int k : k_) {
    if (k <= 0) throw DomainError("degeneracy multiplicities must be positive");
  }
}

DegeneracyType DegeneracyType::parse(std::string_view text) {
  std::vector<int> k;
  std::string item;
  std::istringstream is{std::string(text)};
  while (std::getline(is, item, ',')) {
    try {
      std::size_t used = 0;
      const int value = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      k.push_back(value);
    } catch (const std::exception&) {
      throw DomainError("bad stratum '" + std::string(text) + "'; expected e.g. 2,1,1");
    }
  }
  return DegeneracyType(std::move(k));
}

int DegeneracyType::n() const { return std::accumulate(k_.begin(), k_.end(), 0); }

bool DegeneracyType::is_regular() const {
  return std::all_of(k_.begin(), k_.end(), [](int k) { return k == 1; });
}

bool DegeneracyType::is_maximal() const { return k_.size() == 1; }

DegeneracyType DegeneracyType::canonical() const {
  std::vector<int> k = k_;
  std::sort(k.begin(), k.end(), std::greater<>());
  return DegeneracyType(std::move(k));
}

bool DegeneracyType::is_canonical() const { return std::is_sorted(k_.begin(), k_.end(), std::greater<>()); }

std::string DegeneracyType::label() const {
  const int n = this->n();
  if (is_maximal()) return "SU(" + std::to_string(n) + ")";
  if (is_regular()) return "T^" + std::to_string(n);
  std::string out = "S(";
  for (std::size_t i = 0; i < k_.size();) {
    std::size_t j = i;
    while (j < k_.size() && k_[j] == k_[i]) ++j;
    if (i > 0) out += "×";
    out += "U(" + std::to_string(k_[i]) + ")";
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out + ")";
}

std::string DegeneracyType::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < k_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(k_[i]);
  }
  return out;
}

int DegeneracyType::density_degree() const {
  int q = 0;
  for (std::size_t i = 0; i < k_.size(); ++i) {
    for (std::size_t j = i + 1; j < k_.size(); ++j) q += 2 * k_[i] * k_[j];
  }
  return q;
}

bool refines(const DegeneracyType& fine, const DegeneracyType& coarse) {
  if (fine.n() != coarse.n() || fine.blocks() < coarse.blocks()) return false;
  std::vector<int> parts = fine.canonical().multiplicities();
  std::vector<int> room = coarse.canonical().multiplicities();
  // Exact bin packing; n is small.
  std::function<bool(std::size_t)> place = [&](std::size_t idx) {
    if (idx == parts.size()) return std::all_of(room.begin(), room.end(), [](int r) { return r == 0; });
    for (std::size_t b = 0; b < room.size(); ++b) {
      if (room[b] < parts[idx]) continue;
      if (b > 0 && room[b] == room[b - 1]) continue;
      room[b] -= parts[idx];
      if (place(idx + 1)) return true;
      room[b] += parts[idx];
    }
    return false;
  };
  return place(0);
}

// ---------------------------------------------------------------------------
// StrataPoset

namespace {

void partitions_into(int remaining, int max_part, std::vector<int>& current, std::vector<DegeneracyType>& out) {
  if (remaining == 0) {
    out.emplace_back(current);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    current.push_back(part);
    partitions_into(remaining - part, part, current, out);
    current.pop_back();
  }
}

}  // namespace

StrataPoset::StrataPoset(int n) : n_(n) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  std::vector<int> current;
  partitions_into(n, n, current, strata_);
  std::sort(strata_.begin(), strata_.end(), [](const DegeneracyType& a, const DegeneracyType& b) {
    if (a.blocks() != b.blocks()) return a.blocks() > b.blocks();
    return a.multiplicities() < b.multiplicities();
  });
  less_.assign(strata_.size(), std::vector<bool>(strata_.size(), false));
  for (std::size_t a = 0; a < strata_.size(); ++a) {
    for (std::size_t b = 0; b < strata_.size(); ++b) {
      less_[a][b] = a != b && refines(strata_[a], strata_[b]);
    }
  }
}

std::size_t StrataPoset::index_of(const DegeneracyType& d) const {
  const DegeneracyType c = d.canonical();
  for (std::size_t i = 0; i < strata_.size(); ++i) {
    if (strata_[i] == c) return i;
  }
  throw DomainError("'" + d.to_string() + "' is not a partition of " + std::to_string(n_));
}

bool StrataPoset::covers(std::size_t a, std::size_t b) const {
  if (!less_[a][b]) return false;
  for (std::size_t c = 0; c < strata_.size(); ++c) {
    if (less_[a][c] && less_[c][b]) return false;
  }
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> StrataPoset::hasse_edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < strata_.size(); ++a) {
    for (std::size_t b = 0; b < strata_.size(); ++b) {
      if (covers(a, b)) edges.emplace_back(a, b);
    }
  }
  return edges;
}

std::vector<std::vector<std::size_t>> StrataPoset::maximal_chains() const {
  std::vector<std::vector<std::size_t>> chains;
  std::vector<std::size_t> path{0};
  const std::size_t top = strata_.size() - 1;
  std::function<void()> extend = [&] {
    if (path.back() == top) {
      chains.push_back(path);
      return;
    }
    for (std::size_t b = 0; b < strata_.size(); ++b) {
      if (covers(path.back(), b)) {
        path.push_back(b);
        extend();
        path.pop_back();
      }
    }
  };
  extend();
  return chains;
}

StrataPoset enumerate_strata(int n) { return StrataPoset(n); }

std::vector<DegeneracyType> degeneracy_orbit(const DegeneracyType& deg) {
  std::vector<int> k = deg.canonical().multiplicities();
  std::vector<DegeneracyType> orbit;
  do {
    orbit.emplace_back(k);
  } while (std::prev_permutation(k.begin(), k.end()));
  return orbit;
}

// ---------------------------------------------------------------------------
// Spectra

template <class T>
KernelSpectrum<T> KernelSpectrum<T>::create(std::vector<T> pi, double tolerance) {
  const int n = static_cast<int>(pi.size());
  if (n < 2) throw DomainError("kernel spectrum needs at least two eigenvalues");
  for (int i = 0; i + 1 < n; ++i) {
    if (sign_of(T(pi[i] - pi[i + 1]), pi[i]) < 0) {
      throw DomainError("kernel spectrum not sorted: pi_" + std::to_string(i + 1) + " < pi_" + std::to_string(i + 2));
    }
  }
  std::sort(pi.begin(), pi.end(), std::greater<>());
  KernelSpectrum spectrum(std::move(pi));
  const auto [r1, r2] = spectrum.residuals();
  bool ok = true;
  if constexpr (is_exact_v<T>) {
    ok = r1 == 0 && r2 == 0;
  } else {
    ok = abs_value(r1) <= T(tolerance) && abs_value(r2) <= T(tolerance);
  }
  if (!ok) {
    throw DomainError("kernel spectrum violates the moment constraints: sum-1 = " + to_decimal(r1, 6) +
                      ", sum of squares-" + std::to_string(n) + " = " + to_decimal(r2, 6));
  }
  return spectrum;
}

template <class T>
std::vector<T> KernelSpectrum<T>::ascending() const {
  return std::vector<T>(pi_.rbegin(), pi_.rend());
}

template <class T>
std::pair<T, T> KernelSpectrum<T>::residuals() const {
  T sum(0), sum_sq(0);
  for (const auto& p : pi_) {
    sum += p;
    sum_sq += p * p;
  }
  return {T(sum - 1), T(sum_sq - n())};
}

template <class T>
DegeneracyType KernelSpectrum<T>::degeneracy() const {
  std::vector<int> k{1};
  for (std::size_t i = 1; i < pi_.size(); ++i) {
    const T scale = std::max(T(1), abs_value(pi_[i - 1]));
    if (abs_value(T(pi_[i - 1] - pi_[i])) <= T(kDegeneracyTolerance) * scale) {
      ++k.back();
    } else {
      k.push_back(1);
    }
  }
  return DegeneracyType(std::move(k));
}

template <class T>
StateSpectrum<T> StateSpectrum<T>::create(std::vector<T> r) {
  if (r.empty()) throw DomainError("empty state spectrum");
  T sum(0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (sign_of(r[i]) < 0) throw DomainError("state eigenvalue r_" + std::to_string(i + 1) + " is negative");
    if (i + 1 < r.size() && sign_of(T(r[i] - r[i + 1])) < 0) {
      throw ContractViolation("state spectrum not sorted at r_" + std::to_string(i + 1));
    }
    sum += r[i];
  }
  if (!is_zero(T(sum - 1))) throw DomainError("state eigenvalues must sum to 1");
  return StateSpectrum(std::move(r));
}

template class KernelSpectrum<Rational>;
template class KernelSpectrum<Real>;
template class StateSpectrum<Rational>;
template class StateSpectrum<Real>;

// ---------------------------------------------------------------------------
// Moduli chart

namespace {

using Vec = std::vector<Real>;

Real dot(const Vec& a, const Vec& b) {
  Real s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec normalized(Vec v) {
  const Real norm = sqrt(dot(v, v));
  for (auto& x : v) x /= norm;
  return v;
}

/// Unit direction of (1/m,...,1/m,0,...,0) - (1/n,...,1/n).
Vec chamber_vertex(int n, int m) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = (i < m ? Real(1) / m : Real(0)) - Real(1) / n;
  return normalized(std::move(v));
}

Real angle_between(const Vec& a, const Vec& b) {
  Real c = dot(a, b);
  if (c > 1) c = 1;
  if (c < -1) c = -1;
  return acos(c);
}

/// Point on the great circle from `from` towards `to` at angle psi.
Vec rotate_towards(const Vec& from, const Vec& to, const Real& psi, const Real& theta) {
  Vec out(from.size());
  const Real s = sin(theta);
  const Real a = sin(theta - psi) / s;
  const Real b = sin(psi) / s;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * from[i] + b * to[i];
  return out;
}

struct ChartWalk {
  Vec direction;
  std::vector<Real> bounds;
};

template <class AngleFor>
ChartWalk walk_chart(int n, std::size_t count, AngleFor angle_for) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  if (count != static_cast<std::size_t>(n - 2)) {
    throw DomainError("dimension " + std::to_string(n) + " needs " + std::to_string(n - 2) + " moduli angles, got " +
                      std::to_string(count));
  }
  ChartWalk walk;
  walk.direction = chamber_vertex(n, 1);
  for (int m = 1; m <= n - 2; ++m) {
    const Vec from = chamber_vertex(n, m + 1);
    const Real theta = angle_between(from, walk.direction);
    walk.bounds.push_back(theta);
    const Real psi = angle_for(static_cast<std::size_t>(m - 1), theta);
    walk.direction = rotate_towards(from, walk.direction, psi, theta);
  }
  return walk;
}

KernelSpectrum<Real> spectrum_on_sphere(int n, const Vec& direction) {
  const Real radius = sqrt(Real(n) - Real(1) / n);
  std::vector<Real> pi(n);
  for (int i = 0; i < n; ++i) pi[i] = Real(1) / n + radius * direction[i];
  for (int i = 0; i + 1 < n; ++i) {
    if (sign_of(Real(pi[i] - pi[i + 1])) < 0) {
      throw DomainError("moduli outside the ordering chamber: pi_" + std::to_string(i + 1) + " >= pi_" +
                        std::to_string(i + 2) + " violated");
    }
  }
  return KernelSpectrum<Real>::create(std::move(pi), 1e-24);
}

constexpr double kAngleSlack = 1e-12;

}  // namespace

std::vector<Real> moduli_angle_bounds(int n, std::span<const Real> angles) {
  return walk_chart(n, angles.size(), [&](std::size_t i, const Real&) { return angles[i]; }).bounds;
}

KernelSpectrum<Real> spectrum_from_moduli(int n, std::span<const Real> angles) {
  std::string violation;
  ChartWalk walk = walk_chart(n, angles.size(), [&](std::size_t i, const Real& bound) {
    Real psi = angles[i];
    if (psi < -kAngleSlack || psi > bound + kAngleSlack) {
      if (violation.empty()) {
        violation = "angle " + std::to_string(i + 1) + " = " + to_decimal(psi, 12) + " outside [0, " +
                    to_decimal(bound, 12) + "]";
      }
    } else {
      psi = std::clamp(psi, Real(0), bound);
    }
    return psi;
  });
  if (!violation.empty()) {
    try {
      (void)spectrum_on_sphere(n, walk.direction);
    } catch (const DomainError& e) {
      throw DomainError(violation + "; " + e.what());
    }
    throw DomainError(violation + "; outside the ordering chamber");
  }
  return spectrum_on_sphere(n, walk.direction);
}

std::pair<KernelSpectrum<Real>, std::vector<Real>> spectrum_from_chamber_fractions(int n, std::span<const Real> fractions) {
  std::vector<Real> angles;
  ChartWalk walk = walk_chart(n, fractions.size(), [&](std::size_t i, const Real& bound) {
    if (fractions[i] < 0 || fractions[i] > 1) throw DomainError("chamber fraction outside [0,1]");
    angles.push_back(fractions[i] * bound);
    return angles.back();
  });
  return {spectrum_on_sphere(n, walk.direction), std::move(angles)};
}

// ---------------------------------------------------------------------------
// Densities

template <class T>
SparsePolynomial<T> StratumDensity<T>::eliminated() const {
  const std::size_t s = weight_constraint.size();
  if (s == 1) return SparsePolynomial<T>::constant(0, polynomial.evaluate(std::vector<T>{T(1) / weight_constraint[0]}));
  const T ks(weight_constraint.back());
  AffineChartMap<T> map;
  map.base.assign(s, T(0));
  map.base.back() = T(1) / ks;
  for (std::size_t a = 0; a + 1 < s; ++a) {
    std::vector<T> d(s, T(0));
    d[a] = T(1);
    d.back() = T(-weight_constraint[a]) / ks;
    map.directions.push_back(std::move(d));
  }
  return pullback(polynomial, map);
}

template <class T>
StratumDensity<T> stratum_density(const DegeneracyType& deg) {
  StratumDensity<T> density;
  density.degeneracy = deg;
  density.weight_constraint = deg.multiplicities();
  density.polynomial = vandermonde_forms<T>(deg.multiplicities()).expand();
  return density;
}

template struct StratumDensity<Rational>;
template struct StratumDensity<Real>;
template StratumDensity<Rational> stratum_density(const DegeneracyType&);
template StratumDensity<Real> stratum_density(const DegeneracyType&);

}  // namespace classicality
