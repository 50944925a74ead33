#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "classicality/errors.hpp"
#include "classicality/quadrature.hpp"

using namespace classicality;
using P = SparsePolynomial<Rational>;

namespace {

Simplex<Rational> canonical(int n) {
  std::vector<Point<Rational>> v(1, Point<Rational>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) {
    v.emplace_back(static_cast<std::size_t>(n), 0);
    v.back()[static_cast<std::size_t>(i)] = 1;
  }
  return Simplex<Rational>(v);
}

Rational small(std::uint64_t stream, std::uint64_t index) {
  const int num = static_cast<int>(counter_uniform(11, stream, 2 * index) * 9) - 4;
  const int den = 1 + static_cast<int>(counter_uniform(11, stream, 2 * index + 1) * 3);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

LinearFormProduct<Rational> random_forms(std::size_t nvars, int factors, std::uint64_t stream) {
  LinearFormProduct<Rational> f;
  f.nvars = nvars;
  for (int k = 0; k < factors; ++k) {
    typename LinearFormProduct<Rational>::Factor factor;
    for (std::size_t i = 0; i < nvars; ++i) factor.coefficients.push_back(small(stream, static_cast<std::uint64_t>(k * 10) + i));
    factor.multiplicity = 1 + k % 2;
    f.factors.push_back(factor);
  }
  return f;
}

Simplex<Rational> random_simplex(int dim, std::uint64_t stream) {
  while (true) {
    std::vector<Point<Rational>> v;
    for (int a = 0; a <= dim; ++a) {
      Point<Rational> p;
      for (int i = 0; i < dim; ++i) p.push_back(small(stream + 1000, static_cast<std::uint64_t>(a * 10 + i)));
      v.push_back(p);
    }
    Simplex<Rational> s(v);
    if (!s.is_degenerate()) return s;
    stream += 7919;
  }
}

/// Linear forms composed with an affine map pick up constant terms; the LA
/// engine needs homogeneous forms, so lift to d+1 coordinates with the
/// simplex on the hyperplane x_0 = 1.
std::pair<LinearFormProduct<Rational>, Simplex<Rational>> homogenize(const LinearFormProduct<Rational>& forms, const Simplex<Rational>& s) {
  LinearFormProduct<Rational> h;
  h.nvars = forms.nvars + 1;
  for (const auto& f : forms.factors) {
    auto g = f;
    g.coefficients.push_back(f.constant);
    g.constant = 0;
    h.factors.push_back(g);
  }
  std::vector<Point<Rational>> v;
  for (auto p : s.vertices()) {
    p.push_back(1);
    v.push_back(p);
  }
  return {h, Simplex<Rational>(v)};
}

}  // namespace

TEST_CASE("permanent examples") {
  SquareMatrix<Rational> id(3), ones(3);
  for (std::size_t i = 0; i < 3; ++i) {
    id(i, i) = 1;
    for (std::size_t j = 0; j < 3; ++j) ones(i, j) = 1;
  }
  CHECK(permanent(id) == 1);
  CHECK(permanent(ones) == 6);
  CHECK(permanent(SquareMatrix<Rational>::from_rows({{1, 2}, {3, 4}})) == 10);
  CHECK(permanent(SquareMatrix<Rational>(0)) == 1);
  CHECK_THROWS_AS(permanent(SquareMatrix<Rational>(25)), CapacityError);
  CHECK_THROWS_AS(SquareMatrix<Rational>::from_rows({{1, 2}}), ContractViolation);
}

TEST_CASE("grouped permanent equals the expanded matrix permanent") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const std::size_t d = 2 + s % 3;
    std::vector<std::vector<Rational>> rows, cols;
    std::vector<int> rm, cm;
    int q_rows = 0;
    for (int r = 0; r < 3; ++r) {
      std::vector<Rational> row;
      for (std::size_t i = 0; i < d; ++i) row.push_back(small(s, static_cast<std::uint64_t>(r * 10) + i));
      rows.push_back(row);
      rm.push_back(1 + static_cast<int>((s + r) % 3));
      q_rows += rm.back();
    }
    int q_cols = 0;
    for (int c = 0; q_cols < q_rows; ++c) {
      std::vector<Rational> col;
      for (std::size_t i = 0; i < d; ++i) col.push_back(small(s + 500, static_cast<std::uint64_t>(c * 10) + i));
      cols.push_back(col);
      cm.push_back(std::min(q_rows - q_cols, 1 + c % 3));
      q_cols += cm.back();
    }
    SquareMatrix<Rational> full(static_cast<std::size_t>(q_rows));
    std::size_t r = 0;
    for (std::size_t a = 0; a < rows.size(); ++a) {
      for (int ra = 0; ra < rm[a]; ++ra, ++r) {
        std::size_t c = 0;
        for (std::size_t b = 0; b < cols.size(); ++b) {
          for (int cb = 0; cb < cm[b]; ++cb, ++c) {
            Rational dot(0);
            for (std::size_t i = 0; i < d; ++i) dot += rows[a][i] * cols[b][i];
            full(r, c) = dot;
          }
        }
      }
    }
    CHECK(permanent_repeated(rows, rm, cols, cm) == permanent(full));
  }
}

TEST_CASE("compositions") {
  int count = 0;
  std::vector<std::vector<int>> seen;
  for_each_composition(3, 3, [&](const std::vector<int>& a) {
    CHECK(std::accumulate(a.begin(), a.end(), 0) == 3);
    seen.push_back(a);
    ++count;
  });
  CHECK(count == 10);
  CHECK(composition_count(3, 3) == 10);
  CHECK(seen.front() == std::vector<int>{3, 0, 0});
  CHECK(seen.back() == std::vector<int>{0, 0, 3});
  CHECK(composition_count(12, 4) == 455);
}

TEST_CASE("Dirichlet examples") {
  CHECK(integrate_dirichlet(P::monomial({2, 2}, 1), 2).value == Rational(1, 180));
  CHECK(integrate_dirichlet(P::monomial({4, 2}, 1), 2).value == Rational(1, 840));
  CHECK(integrate_dirichlet(P::monomial({3, 3}, 1), 2).value == Rational(1, 1120));
}

TEST_CASE("LA examples") {
  LinearFormProduct<Rational> uv;
  uv.nvars = 2;
  uv.factors.push_back({{1, 0}, 0, 2});
  uv.factors.push_back({{0, 1}, 0, 2});
  CHECK(integrate_la(uv, canonical(2)).value == Rational(1, 180));
  CHECK(integrate_la(uv, canonical(2), PermanentKernel::GrayCode).value == Rational(1, 180));

  const Simplex<Rational> flat({{0, 0}, {1, 1}, {2, 2}});
  CHECK(integrate_la(uv, flat).value == 0);

  // qubit numerator: (r1 - r2)^2 over r1 in [1/2, 1/2 + 1/(2 sqrt3)]
  LinearFormProduct<Real> diff;
  diff.nvars = 2;
  diff.factors.push_back({{Real(1), Real(-1)}, Real(0), 2});
  const Real h = 1 / (2 * sqrt(Real(3)));
  const Simplex<Real> segment({{Real(1) / 2, Real(1) / 2}, {Real(1) / 2 + h, Real(1) / 2 - h}});
  const Real expected = pow(1 / sqrt(Real(3)), 3) / 6;
  CHECK(abs(integrate_la(diff, segment).value - expected) < Real(1e-33));

  LinearFormProduct<Rational> nonhom = uv;
  nonhom.factors[0].constant = 1;
  CHECK_THROWS_AS(integrate_la(nonhom, canonical(2)), ContractViolation);

  LinearFormProduct<Rational> big;
  big.nvars = 2;
  big.factors.push_back({{1, 1}, 0, 25});
  CHECK_THROWS_AS(integrate_la(big, canonical(2)), CapacityError);
}

TEST_CASE("Lasserre examples") {
  CHECK(integrate_lasserre(P::monomial({2, 2}, 1), 2).value == Rational(1, 180));
  for (int n = 1; n <= 5; ++n) {
    CHECK(integrate_lasserre(P::constant(static_cast<std::size_t>(n), 1), n).value == Rational(1) / factorial<Rational>(n));
  }
  const auto s = lasserre_point(2, 4);
  CHECK(abs(pow(s[0], 4) * 360 - 1) < Real(1e-30));
  CHECK_THROWS_AS(integrate_lasserre(P::monomial({1, 1}, 1), 3), ContractViolation);
}

TEST_CASE("LA, Lasserre and Dirichlet agree on random simplices") {
  for (std::uint64_t s = 0; s < 25; ++s) {
    const int dim = 1 + static_cast<int>(s % 3);
    const auto simplex = random_simplex(dim, s);
    const auto forms = random_forms(static_cast<std::size_t>(dim), 3, s);
    const auto [hforms, hsimplex] = homogenize(forms, simplex);
    const Rational la = integrate_la(hforms, hsimplex).value;
    CHECK(la == integrate_la(hforms, hsimplex, PermanentKernel::GrayCode).value);
    CHECK(la == integrate_lasserre(forms, simplex).value);
    CHECK(la == integrate_dirichlet(forms, simplex).value);
    CHECK(la == integrate_lasserre(hforms, hsimplex).value);
  }
}

TEST_CASE("Monte Carlo") {
  const auto k2 = canonical(2);
  const auto c = integrate_mc(P::constant(2, 1), k2, 1000);
  CHECK(to_double(c.value) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(*c.stderr_estimate == doctest::Approx(0.0));

  const auto r = integrate_mc(P::monomial({2, 2}, 1), k2, 1'000'000, 42);
  CHECK(std::abs(to_double(r.value) - 1.0 / 180) <= 3 * *r.stderr_estimate);
  CHECK(r.samples == 1'000'000);
  CHECK_THROWS_AS(integrate_mc(P::constant(2, 1), k2, 0), ContractViolation);
}

TEST_CASE("Monte Carlo is deterministic across thread counts") {
  const auto k3 = canonical(3);
  const auto p = P::monomial({1, 2, 0}, 1) + P::monomial({0, 0, 3}, 2);
  ::setenv("CLASSICALITY_THREADS", "1", 1);
  const auto a = integrate_mc(p, k3, 100'000, 7);
  ::setenv("CLASSICALITY_THREADS", "4", 1);
  const auto b = integrate_mc(p, k3, 100'000, 7);
  ::unsetenv("CLASSICALITY_THREADS");
  CHECK(a.value == b.value);
  CHECK(*a.stderr_estimate == *b.stderr_estimate);
  const auto other = integrate_mc(p, k3, 100'000, 8);
  CHECK(other.value != a.value);
}

TEST_CASE("counter-based uniforms") {
  double sum = 0;
  for (std::uint64_t i = 0; i < 100000; ++i) {
    const double u = counter_uniform(1, 0, i);
    CHECK((u > 0.0 && u < 1.0));
    sum += u;
  }
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
  CHECK(counter_uniform(1, 2, 3) == counter_uniform(1, 2, 3));
  CHECK(counter_uniform(1, 2, 3) != counter_uniform(1, 3, 2));
}

TEST_CASE("method names") {
  CHECK(parse_method("LA") == Method::LA);
  CHECK(parse_method("lasserre") == Method::Lasserre);
  CHECK(parse_method("mc") == Method::MonteCarlo);
  CHECK(to_string(Method::Dirichlet) == "dirichlet");
  CHECK_THROWS_AS(parse_method("simpson"), DomainError);
}
