#include "classicality/polynomial.hpp"

#include <numeric>
#include <set>
#include <string>

#include "classicality/errors.hpp"

namespace classicality {

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool GradedLexLess::operator()(const Exponent& a, const Exponent& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return b < a;
}

template <class T>
SparsePolynomial<T> SparsePolynomial<T>::constant(std::size_t nvars, const T& c) {
  SparsePolynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

template <class T>
SparsePolynomial<T> SparsePolynomial<T>::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw ContractViolation("variable index out of range");
  Exponent e(nvars, 0);
  e[index] = 1;
  SparsePolynomial p(nvars);
  p.add_term(e, T(1));
  return p;
}

template <class T>
SparsePolynomial<T> SparsePolynomial<T>::monomial(Exponent exponent, const T& c) {
  SparsePolynomial p(exponent.size());
  p.add_term(exponent, c);
  return p;
}

template <class T>
SparsePolynomial<T> SparsePolynomial<T>::affine(const T& c0, std::span<const T> coefficients) {
  const std::size_t n = coefficients.size();
  SparsePolynomial p = constant(n, c0);
  for (std::size_t i = 0; i < n; ++i) {
    Exponent e(n, 0);
    e[i] = 1;
    p.add_term(e, coefficients[i]);
  }
  return p;
}

template <class T>
int SparsePolynomial<T>::total_degree() const {
  if (terms_.empty()) return -1;
  return classicality::total_degree(terms_.rbegin()->first);
}

template <class T>
bool SparsePolynomial<T>::is_homogeneous() const {
  if (terms_.empty()) return true;
  return classicality::total_degree(terms_.begin()->first) == classicality::total_degree(terms_.rbegin()->first);
}

template <class T>
T SparsePolynomial<T>::coefficient(const Exponent& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? T(0) : it->second;
}

template <class T>
void SparsePolynomial<T>::add_term(const Exponent& exponent, const T& c) {
  if (exponent.size() != nvars_) throw ContractViolation("exponent length does not match variable count");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

template <class T>
void SparsePolynomial<T>::check_compatible(const SparsePolynomial& other) const {
  if (other.nvars_ != nvars_) {
    throw ContractViolation("polynomials over different variable counts (" + std::to_string(nvars_) + " vs " +
                            std::to_string(other.nvars_) + ")");
  }
}

template <class T>
SparsePolynomial<T>& SparsePolynomial<T>::operator+=(const SparsePolynomial& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

template <class T>
SparsePolynomial<T>& SparsePolynomial<T>::operator-=(const SparsePolynomial& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, T(-c));
  return *this;
}

template <class T>
SparsePolynomial<T>& SparsePolynomial<T>::operator*=(const T& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

template <class T>
SparsePolynomial<T> SparsePolynomial<T>::times(const SparsePolynomial& other) const {
  check_compatible(other);
  SparsePolynomial out(nvars_);
  Exponent e(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, T(ca * cb));
    }
  }
  return out;
}

template <class T>
SparsePolynomial<T> SparsePolynomial<T>::pow(int k) const {
  if (k < 0) throw ContractViolation("negative polynomial power");
  SparsePolynomial result = constant(nvars_, T(1));
  SparsePolynomial base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

template <class T>
T SparsePolynomial<T>::evaluate(std::span<const T> x) const {
  if (x.size() != nvars_) throw ContractViolation("evaluation point has wrong dimension");
  T sum(0);
  for (const auto& [e, c] : terms_) {
    T term = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (int k = 0; k < e[i]; ++k) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

template <class T>
double SparsePolynomial<T>::evaluate(std::span<const double> x) const {
  if (x.size() != nvars_) throw ContractViolation("evaluation point has wrong dimension");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = to_double(c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (int k = 0; k < e[i]; ++k) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

template <class T>
bool SparsePolynomial<T>::approx_equal(const SparsePolynomial& other, double tolerance) const {
  if (nvars_ != other.nvars_) return false;
  if constexpr (is_exact_v<T>) {
    return terms_ == other.terms_;
  } else {
    std::set<Exponent, GradedLexLess> keys;
    for (const auto& [e, c] : terms_) keys.insert(e);
    for (const auto& [e, c] : other.terms_) keys.insert(e);
    for (const auto& e : keys) {
      const T a = coefficient(e);
      const T b = other.coefficient(e);
      const T scale = std::max({T(1), abs_value(a), abs_value(b)});
      if (abs_value(T(a - b)) > T(tolerance) * scale) return false;
    }
    return true;
  }
}

template <class T>
std::vector<std::pair<int, SparsePolynomial<T>>> homogeneous_parts(const SparsePolynomial<T>& p) {
  std::vector<std::pair<int, SparsePolynomial<T>>> parts;
  for (const auto& [e, c] : p.terms()) {
    const int d = total_degree(e);
    if (parts.empty() || parts.back().first != d) parts.emplace_back(d, SparsePolynomial<T>(p.nvars()));
    parts.back().second.add_term(e, c);
  }
  return parts;
}

template <class T>
SparsePolynomial<T> bombieri(const SparsePolynomial<T>& p) {
  SparsePolynomial<T> out(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    T weight(1);
    for (int a : e) weight *= factorial<T>(a);
    out.add_term(e, T(c * weight));
  }
  return out;
}

template <class T>
std::vector<T> AffineChartMap<T>::apply(std::span<const T> u) const {
  if (u.size() != source_dim()) throw ContractViolation("chart argument has wrong dimension");
  std::vector<T> r = base;
  for (std::size_t a = 0; a < directions.size(); ++a) {
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += directions[a][i] * u[a];
  }
  return r;
}

template <class T>
AffineChartMap<T> AffineChartMap<T>::from_vertices(const std::vector<std::vector<T>>& vertices) {
  if (vertices.empty()) throw ContractViolation("chart map needs at least one vertex");
  AffineChartMap map;
  map.base = vertices.front();
  for (std::size_t a = 1; a < vertices.size(); ++a) {
    if (vertices[a].size() != map.base.size()) throw ContractViolation("vertices of different dimensions");
    std::vector<T> d(map.base.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = vertices[a][i] - map.base[i];
    map.directions.push_back(std::move(d));
  }
  return map;
}

template <class T>
AffineChartMap<T> AffineChartMap<T>::identity(std::size_t dim) {
  AffineChartMap map;
  map.base.assign(dim, T(0));
  for (std::size_t a = 0; a < dim; ++a) {
    std::vector<T> d(dim, T(0));
    d[a] = T(1);
    map.directions.push_back(std::move(d));
  }
  return map;
}

template <class T>
SparsePolynomial<T> pullback(const SparsePolynomial<T>& p, const AffineChartMap<T>& map) {
  if (p.nvars() != map.target_dim()) {
    throw ContractViolation("pullback: polynomial has " + std::to_string(p.nvars()) + " variables, map targets R^" +
                            std::to_string(map.target_dim()));
  }
  const std::size_t m = map.source_dim();
  const std::size_t d = map.target_dim();

  // Substituted coordinates x_i(u) and a cache of their powers.
  std::vector<std::vector<SparsePolynomial<T>>> powers(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<T> coeffs(m);
    for (std::size_t a = 0; a < m; ++a) coeffs[a] = map.directions[a][i];
    powers[i].push_back(SparsePolynomial<T>::constant(m, T(1)));
    powers[i].push_back(SparsePolynomial<T>::affine(map.base[i], coeffs));
  }
  auto power = [&](std::size_t i, int k) -> const SparsePolynomial<T>& {
    while (static_cast<int>(powers[i].size()) <= k) powers[i].push_back(powers[i].back() * powers[i][1]);
    return powers[i][k];
  };

  SparsePolynomial<T> out(m);
  for (const auto& [e, c] : p.terms()) {
    SparsePolynomial<T> term = SparsePolynomial<T>::constant(m, c);
    for (std::size_t i = 0; i < d; ++i) {
      if (e[i] > 0) term = term * power(i, e[i]);
    }
    out += term;
  }
  return out;
}

template <class T>
int LinearFormProduct<T>::degree() const {
  int q = 0;
  for (const auto& f : factors) q += f.multiplicity;
  return q;
}

template <class T>
bool LinearFormProduct<T>::is_homogeneous() const {
  for (const auto& f : factors) {
    if (f.constant != 0) return false;
  }
  return true;
}

template <class T>
std::vector<std::vector<T>> LinearFormProduct<T>::expanded_rows() const {
  std::vector<std::vector<T>> rows;
  for (const auto& f : factors) {
    for (int k = 0; k < f.multiplicity; ++k) rows.push_back(f.coefficients);
  }
  return rows;
}

template <class T>
SparsePolynomial<T> LinearFormProduct<T>::expand() const {
  SparsePolynomial<T> result = SparsePolynomial<T>::constant(nvars, T(1));
  for (const auto& f : factors) {
    result = result * SparsePolynomial<T>::affine(f.constant, f.coefficients).pow(f.multiplicity);
  }
  return result;
}

template <class T>
T LinearFormProduct<T>::evaluate(std::span<const T> x) const {
  if (x.size() != nvars) throw ContractViolation("evaluation point has wrong dimension");
  T result(1);
  for (const auto& f : factors) {
    T value = f.constant;
    for (std::size_t i = 0; i < nvars; ++i) value += f.coefficients[i] * x[i];
    for (int k = 0; k < f.multiplicity; ++k) result *= value;
  }
  return result;
}

template <class T>
double LinearFormProduct<T>::evaluate(std::span<const double> x) const {
  if (x.size() != nvars) throw ContractViolation("evaluation point has wrong dimension");
  double result = 1.0;
  for (const auto& f : factors) {
    double value = to_double(f.constant);
    for (std::size_t i = 0; i < nvars; ++i) value += to_double(f.coefficients[i]) * x[i];
    for (int k = 0; k < f.multiplicity; ++k) result *= value;
  }
  return result;
}

template <class T>
LinearFormProduct<T> compose(const LinearFormProduct<T>& forms, const AffineChartMap<T>& map) {
  if (forms.nvars != map.target_dim()) throw ContractViolation("compose: form dimension does not match chart target");
  LinearFormProduct<T> out;
  out.nvars = map.source_dim();
  for (const auto& f : forms.factors) {
    typename LinearFormProduct<T>::Factor g;
    g.multiplicity = f.multiplicity;
    g.constant = f.constant;
    for (std::size_t i = 0; i < map.target_dim(); ++i) g.constant += f.coefficients[i] * map.base[i];
    g.coefficients.assign(out.nvars, T(0));
    for (std::size_t a = 0; a < out.nvars; ++a) {
      for (std::size_t i = 0; i < map.target_dim(); ++i) g.coefficients[a] += f.coefficients[i] * map.directions[a][i];
    }
    out.factors.push_back(std::move(g));
  }
  return out;
}

template <class T>
LinearFormProduct<T> vandermonde_forms(std::span<const int> multiplicities) {
  const std::size_t s = multiplicities.size();
  LinearFormProduct<T> forms;
  forms.nvars = s;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j) {
      typename LinearFormProduct<T>::Factor f;
      f.coefficients.assign(s, T(0));
      f.coefficients[i] = T(1);
      f.coefficients[j] = T(-1);
      f.multiplicity = 2 * multiplicities[i] * multiplicities[j];
      forms.factors.push_back(std::move(f));
    }
  }
  return forms;
}

template <class T>
LinearFormProduct<T> as_linear_form_product(std::span<const int> multiplicities, const AffineChartMap<T>& map) {
  LinearFormProduct<T> forms = compose(vandermonde_forms<T>(multiplicities), map);
  for (const auto& f : forms.factors) {
    if (!is_zero(f.constant)) {
      throw ContractViolation("chart origin is not on the fully degenerate locus; difference forms are not homogeneous");
    }
  }
  for (auto& f : forms.factors) f.constant = T(0);
  return forms;
}

#define CLASSICALITY_INSTANTIATE_POLY(T)                                                                 \
  template class SparsePolynomial<T>;                                                                    \
  template struct AffineChartMap<T>;                                                                     \
  template struct LinearFormProduct<T>;                                                                  \
  template std::vector<std::pair<int, SparsePolynomial<T>>> homogeneous_parts(const SparsePolynomial<T>&); \
  template SparsePolynomial<T> bombieri(const SparsePolynomial<T>&);                                    \
  template SparsePolynomial<T> pullback(const SparsePolynomial<T>&, const AffineChartMap<T>&);          \
  template LinearFormProduct<T> compose(const LinearFormProduct<T>&, const AffineChartMap<T>&);         \
  template LinearFormProduct<T> vandermonde_forms(std::span<const int>);                               \
  template LinearFormProduct<T> as_linear_form_product(std::span<const int>, const AffineChartMap<T>&);

CLASSICALITY_INSTANTIATE_POLY(Rational)
CLASSICALITY_INSTANTIATE_POLY(Real)

}  // namespace classicality
