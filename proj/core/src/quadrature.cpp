#include "classicality/quadrature.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>

#include "classicality/errors.hpp"
#include "classicality/parallel.hpp"

namespace classicality {

std::string to_string(Method m) {
  switch (m) {
    case Method::Auto: return "auto";
    case Method::LA: return "la";
    case Method::Lasserre: return "lasserre";
    case Method::MonteCarlo: return "mc";
    case Method::Dirichlet: return "dirichlet";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "auto") return Method::Auto;
  if (s == "la") return Method::LA;
  if (s == "lasserre") return Method::Lasserre;
  if (s == "mc" || s == "montecarlo") return Method::MonteCarlo;
  if (s == "dirichlet") return Method::Dirichlet;
  throw DomainError("unknown method '" + std::string(text) + "' (expected la, lasserre, mc, dirichlet or auto)");
}

// ---------------------------------------------------------------------------
// Permanents

template <class T>
SquareMatrix<T> SquareMatrix<T>::from_rows(const std::vector<std::vector<T>>& rows) {
  SquareMatrix m(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) throw ContractViolation("matrix is not square");
    for (std::size_t c = 0; c < rows.size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

template <class T>
T permanent(const SquareMatrix<T>& m) {
  const std::size_t n = m.size();
  if (n > static_cast<std::size_t>(kMaxPermanentOrder)) {
    throw CapacityError("permanent of order " + std::to_string(n) + " exceeds the limit of " +
                        std::to_string(kMaxPermanentOrder) + "; use the Lasserre method");
  }
  if (n == 0) return T(1);
  std::vector<T> row_sums(n, T(0));
  T total(0);
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const int j = std::countr_zero(k);
    gray ^= std::uint64_t{1} << j;
    if (gray & (std::uint64_t{1} << j)) {
      for (std::size_t i = 0; i < n; ++i) row_sums[i] += m(i, static_cast<std::size_t>(j));
    } else {
      for (std::size_t i = 0; i < n; ++i) row_sums[i] -= m(i, static_cast<std::size_t>(j));
    }
    T product = row_sums[0];
    for (std::size_t i = 1; i < n; ++i) product *= row_sums[i];
    if ((n - static_cast<std::size_t>(std::popcount(gray))) % 2 == 0) {
      total += product;
    } else {
      total -= product;
    }
  }
  return total;
}

template <class T>
T permanent_repeated(const std::vector<std::vector<T>>& rows, std::span<const int> row_multiplicity,
                     const std::vector<std::vector<T>>& columns, std::span<const int> column_multiplicity) {
  if (rows.size() != row_multiplicity.size() || columns.size() != column_multiplicity.size()) {
    throw ContractViolation("multiplicity lists do not match rows/columns");
  }
  int q_rows = 0, q_cols = 0;
  for (int m : row_multiplicity) q_rows += m;
  for (int m : column_multiplicity) q_cols += m;
  if (q_rows != q_cols) throw ContractViolation("repeated matrix is not square");
  const int q = q_rows;
  if (q == 0) return T(1);

  const std::size_t g = columns.size();
  // entries[s][t] = rows[s] . columns[t]
  std::vector<std::vector<T>> entries(rows.size(), std::vector<T>(g, T(0)));
  for (std::size_t s = 0; s < rows.size(); ++s) {
    for (std::size_t t = 0; t < g; ++t) {
      for (std::size_t i = 0; i < rows[s].size(); ++i) entries[s][t] += rows[s][i] * columns[t][i];
    }
  }

  std::vector<std::vector<T>> choose(g);
  for (std::size_t t = 0; t < g; ++t) {
    for (int b = 0; b <= column_multiplicity[t]; ++b) choose[t].push_back(T(static_cast<long>(binomial(column_multiplicity[t], b))));
  }

  T total(0);
  std::vector<int> b(g, 0);
  while (true) {
    int chosen = 0;
    T weight(1);
    for (std::size_t t = 0; t < g; ++t) {
      chosen += b[t];
      weight *= choose[t][static_cast<std::size_t>(b[t])];
    }
    T product(1);
    for (std::size_t s = 0; s < rows.size() && product != 0; ++s) {
      T sum(0);
      for (std::size_t t = 0; t < g; ++t) {
        if (b[t]) sum += T(b[t]) * entries[s][t];
      }
      for (int k = 0; k < row_multiplicity[s]; ++k) product *= sum;
    }
    if (product != 0) {
      if ((q - chosen) % 2 == 0) {
        total += weight * product;
      } else {
        total -= weight * product;
      }
    }
    std::size_t t = 0;
    while (t < g && b[t] == column_multiplicity[t]) b[t++] = 0;
    if (t == g) break;
    ++b[t];
  }
  return total;
}

void for_each_composition(int q, int parts, const std::function<void(const std::vector<int>&)>& visit) {
  if (parts <= 0) {
    if (q == 0) visit({});
    return;
  }
  std::vector<int> a(static_cast<std::size_t>(parts), 0);
  std::function<void(std::size_t, int)> fill = [&](std::size_t i, int remaining) {
    if (i + 1 == a.size()) {
      a[i] = remaining;
      visit(a);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      a[i] = v;
      fill(i + 1, remaining - v);
    }
  };
  fill(0, q);
}

std::uint64_t composition_count(int q, int parts) {
  if (parts <= 0) return q == 0 ? 1 : 0;
  return binomial(q + parts - 1, parts - 1);
}

// ---------------------------------------------------------------------------
// LA

template <class T>
QuadratureResult<T> integrate_la(const LinearFormProduct<T>& forms, const Simplex<T>& simplex, PermanentKernel kernel) {
  if (!forms.is_homogeneous()) throw ContractViolation("LA integration needs homogeneous linear forms");
  if (forms.nvars != simplex.ambient()) throw ContractViolation("linear forms and simplex differ in dimension");
  const int q = forms.degree();
  if (q > kMaxPermanentOrder) {
    throw CapacityError("LA integration needs permanents of order " + std::to_string(q) + " > " +
                        std::to_string(kMaxPermanentOrder) + "; use the Lasserre method");
  }
  QuadratureResult<T> result;
  result.method = Method::LA;
  const T volume = euclidean_volume(simplex);
  if (volume == 0) return result;

  std::vector<std::vector<T>> rows;
  std::vector<int> row_mult;
  for (const auto& f : forms.factors) {
    rows.push_back(f.coefficients);
    row_mult.push_back(f.multiplicity);
  }

  // Vertices on which every form vanishes contribute nothing (zero columns).
  std::vector<std::vector<T>> active;
  for (const auto& v : simplex.vertices()) {
    bool zero = true;
    for (const auto& row : rows) {
      T value(0);
      for (std::size_t i = 0; i < v.size(); ++i) value += row[i] * v[i];
      if (value != 0) {
        zero = false;
        break;
      }
    }
    if (!zero || rows.empty()) active.push_back(v);
  }

  T total(0);
  for_each_composition(q, static_cast<int>(active.size()), [&](const std::vector<int>& a) {
    if (kernel == PermanentKernel::Grouped) {
      total += permanent_repeated(rows, row_mult, active, a);
    } else {
      SquareMatrix<T> m(static_cast<std::size_t>(q));
      const auto expanded = forms.expanded_rows();
      std::size_t col = 0;
      for (std::size_t t = 0; t < active.size(); ++t) {
        for (int k = 0; k < a[t]; ++k, ++col) {
          for (std::size_t s = 0; s < expanded.size(); ++s) {
            T value(0);
            for (std::size_t i = 0; i < active[t].size(); ++i) value += expanded[s][i] * active[t][i];
            m(s, col) = value;
          }
        }
      }
      total += permanent(m);
    }
  });
  if (active.empty() && q > 0) total = 0;

  const T normaliser = T(static_cast<long>(binomial(simplex.dim() + q, q))) * factorial<T>(q);
  result.value = volume * total / normaliser;
  return result;
}

// ---------------------------------------------------------------------------
// Lasserre and Dirichlet

std::vector<Real> lasserre_point(int n, int j) {
  Real rising(1);
  for (int i = 1; i <= j; ++i) rising *= Real(n + i);
  const Real coordinate = 1 / pow(rising, Real(1) / j);
  return std::vector<Real>(static_cast<std::size_t>(n), coordinate);
}

template <class T>
QuadratureResult<T> integrate_lasserre(const SparsePolynomial<T>& p, int n) {
  if (static_cast<int>(p.nvars()) != n) throw ContractViolation("polynomial is not over the canonical simplex dimension");
  QuadratureResult<T> result;
  result.method = Method::Lasserre;
  T sum(0);
  for (const auto& [degree, part] : homogeneous_parts(p)) {
    // For |a| = j, s_j^a = 1 / ((n+1)...(n+j)) exactly, so p^_j(s_j) is the
    // Bombieri coefficient sum over that rising product.
    T at_point(0);
    const auto transformed = bombieri(part);
    for (const auto& [e, c] : transformed.terms()) at_point += c;
    T rising(1);
    for (int i = 1; i <= degree; ++i) rising *= T(n + i);
    sum += at_point / rising;
  }
  result.value = sum / factorial<T>(n);
  return result;
}

template <class T>
QuadratureResult<T> integrate_lasserre(const LinearFormProduct<T>& forms, const Simplex<T>& simplex) {
  const T det = abs_value(simplex.chart_determinant());
  QuadratureResult<T> result;
  result.method = Method::Lasserre;
  if (det == 0) return result;
  const auto pulled = compose(forms, simplex.chart_map()).expand();
  result.value = det * integrate_lasserre(pulled, simplex.dim()).value;
  return result;
}

template <class T>
QuadratureResult<T> integrate_dirichlet(const SparsePolynomial<T>& p, int n) {
  if (static_cast<int>(p.nvars()) != n) throw ContractViolation("polynomial is not over the canonical simplex dimension");
  QuadratureResult<T> result;
  result.method = Method::Dirichlet;
  for (const auto& [e, c] : p.terms()) {
    T weight(1);
    int degree = 0;
    for (int a : e) {
      weight *= factorial<T>(a);
      degree += a;
    }
    result.value += c * weight / factorial<T>(n + degree);
  }
  return result;
}

template <class T>
QuadratureResult<T> integrate_dirichlet(const LinearFormProduct<T>& forms, const Simplex<T>& simplex) {
  const T det = abs_value(simplex.chart_determinant());
  QuadratureResult<T> result;
  result.method = Method::Dirichlet;
  if (det == 0) return result;
  const auto pulled = compose(forms, simplex.chart_map()).expand();
  result.value = det * integrate_dirichlet(pulled, simplex.dim()).value;
  return result;
}

// ---------------------------------------------------------------------------
// Monte Carlo

namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::size_t kMcChunk = 1 << 14;

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const std::uint64_t h = splitmix(splitmix(seed) ^ (stream * 0xD1B54A32D192ED03ull + index * 0x9E3779B97F4A7C15ull + 1));
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

template <class T>
QuadratureResult<T> integrate_mc(const Integrand& f, const Simplex<T>& simplex, std::size_t samples, std::uint64_t seed) {
  QuadratureResult<T> result;
  result.method = Method::MonteCarlo;
  result.samples = samples;
  if (samples == 0) throw ContractViolation("Monte Carlo needs at least one sample");
  const double volume = to_double(euclidean_volume(simplex));
  const std::size_t m = static_cast<std::size_t>(simplex.dim());
  const std::size_t d = simplex.ambient();
  std::vector<std::vector<double>> vertices;
  for (const auto& v : simplex.vertices()) vertices.push_back(to_doubles(v));

  const std::size_t chunks = (samples + kMcChunk - 1) / kMcChunk;
  std::vector<long double> sums(chunks, 0.0L), squares(chunks, 0.0L);
  parallel_for(chunks, [&](std::size_t c) {
    std::vector<double> u(m), point(d);
    const std::size_t begin = c * kMcChunk;
    const std::size_t end = std::min(samples, begin + kMcChunk);
    long double s = 0.0L, s2 = 0.0L;
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = 0; j < m; ++j) u[j] = counter_uniform(seed, i, j);
      std::sort(u.begin(), u.end());
      std::fill(point.begin(), point.end(), 0.0);
      double previous = 0.0;
      for (std::size_t t = 0; t <= m; ++t) {
        const double next = t < m ? u[t] : 1.0;
        const double weight = next - previous;
        previous = next;
        for (std::size_t k = 0; k < d; ++k) point[k] += weight * vertices[t][k];
      }
      const double value = f(point);
      s += value;
      s2 += static_cast<long double>(value) * value;
    }
    sums[c] = s;
    squares[c] = s2;
  });
  long double s = 0.0L, s2 = 0.0L;
  for (std::size_t c = 0; c < chunks; ++c) {
    s += sums[c];
    s2 += squares[c];
  }
  const long double n = static_cast<long double>(samples);
  const long double mean = s / n;
  const long double variance = samples > 1 ? std::max(0.0L, (s2 - n * mean * mean) / (n - 1)) : 0.0L;
  result.value = T(static_cast<double>(mean * volume));
  result.stderr_estimate = static_cast<double>(volume * std::sqrt(variance / n));
  return result;
}

template <class T>
QuadratureResult<T> integrate_mc(const SparsePolynomial<T>& p, const Simplex<T>& simplex, std::size_t samples,
                                 std::uint64_t seed) {
  if (p.nvars() != simplex.ambient()) throw ContractViolation("polynomial and simplex differ in dimension");
  return integrate_mc<T>([&p](std::span<const double> x) { return p.evaluate(x); }, simplex, samples, seed);
}

template <class T>
QuadratureResult<T> integrate_mc(const LinearFormProduct<T>& forms, const Simplex<T>& simplex, std::size_t samples,
                                 std::uint64_t seed) {
  if (forms.nvars != simplex.ambient()) throw ContractViolation("linear forms and simplex differ in dimension");
  return integrate_mc<T>([&forms](std::span<const double> x) { return forms.evaluate(x); }, simplex, samples, seed);
}

#define CLASSICALITY_INSTANTIATE_QUAD(T)                                                                        \
  template class SquareMatrix<T>;                                                                               \
  template T permanent(const SquareMatrix<T>&);                                                                 \
  template T permanent_repeated(const std::vector<std::vector<T>>&, std::span<const int>,                      \
                                const std::vector<std::vector<T>>&, std::span<const int>);                     \
  template QuadratureResult<T> integrate_la(const LinearFormProduct<T>&, const Simplex<T>&, PermanentKernel);  \
  template QuadratureResult<T> integrate_lasserre(const SparsePolynomial<T>&, int);                             \
  template QuadratureResult<T> integrate_lasserre(const LinearFormProduct<T>&, const Simplex<T>&);              \
  template QuadratureResult<T> integrate_dirichlet(const SparsePolynomial<T>&, int);                            \
  template QuadratureResult<T> integrate_dirichlet(const LinearFormProduct<T>&, const Simplex<T>&);             \
  template QuadratureResult<T> integrate_mc(const Integrand&, const Simplex<T>&, std::size_t, std::uint64_t);   \
  template QuadratureResult<T> integrate_mc(const SparsePolynomial<T>&, const Simplex<T>&, std::size_t, std::uint64_t); \
  template QuadratureResult<T> integrate_mc(const LinearFormProduct<T>&, const Simplex<T>&, std::size_t, std::uint64_t);

CLASSICALITY_INSTANTIATE_QUAD(Rational)
CLASSICALITY_INSTANTIATE_QUAD(Real)

}  // namespace classicality
