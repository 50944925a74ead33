#include <doctest.h>

#include "classicality/errors.hpp"
#include "classicality/polynomial.hpp"
#include "classicality/quadrature.hpp"

using namespace classicality;
using P = SparsePolynomial<Rational>;

namespace {

Rational small_rational(std::uint64_t stream, std::uint64_t index) {
  const int num = static_cast<int>(counter_uniform(3, stream, 2 * index) * 13) - 6;
  const int den = 1 + static_cast<int>(counter_uniform(3, stream, 2 * index + 1) * 5);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

P random_polynomial(std::size_t nvars, int degree, std::uint64_t stream) {
  P p(nvars);
  for (int t = 0; t < 6; ++t) {
    Exponent e(nvars, 0);
    int budget = static_cast<int>(counter_uniform(5, stream, static_cast<std::uint64_t>(t)) * (degree + 1));
    for (std::size_t i = 0; i < nvars && budget > 0; ++i) {
      const int take = i + 1 == nvars ? budget : static_cast<int>(counter_uniform(7, stream, t * 10 + i) * (budget + 1));
      e[i] = take;
      budget -= take;
    }
    p.add_term(e, small_rational(stream, static_cast<std::uint64_t>(t)));
  }
  return p;
}

}  // namespace

TEST_CASE("construction and arithmetic") {
  const auto u = P::variable(2, 0);
  const auto v = P::variable(2, 1);
  const auto p = P::constant(2, 1) + u * v * Rational(2) + u * u;
  CHECK(p.size() == 3);
  CHECK(p.total_degree() == 2);
  CHECK_FALSE(p.is_homogeneous());
  CHECK(p.coefficient({1, 1}) == 2);
  CHECK(p.coefficient({0, 2}) == 0);
  CHECK((p - p).is_zero());
  CHECK((u + v).pow(3) == (u + v) * (u + v) * (u + v));
  CHECK((u + v).pow(0) == P::constant(2, 1));
  CHECK_THROWS_AS(u + P::variable(3, 0), ContractViolation);
}

TEST_CASE("evaluation agrees in both scalar types") {
  const auto p = (P::variable(2, 0) - P::variable(2, 1) * Rational(3)).pow(3) + P::constant(2, Rational(1, 2));
  const std::vector<Rational> x{Rational(1, 3), Rational(-2, 5)};
  const Rational exact = p.evaluate(std::span<const Rational>(x));
  const std::vector<double> xd{1.0 / 3, -0.4};
  CHECK(p.evaluate(std::span<const double>(xd)) == doctest::Approx(exact.get_d()).epsilon(1e-14));
}

TEST_CASE("homogeneous parts") {
  const auto u = P::variable(2, 0);
  const auto v = P::variable(2, 1);
  const auto parts = homogeneous_parts(P::constant(2, 1) + u * v * Rational(2) + u * u);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].first == 0);
  CHECK(parts[0].second == P::constant(2, 1));
  CHECK(parts[1].first == 2);
  CHECK(parts[1].second == u * v * Rational(2) + u * u);
  CHECK(homogeneous_parts((u + v).pow(4)).size() == 1);

  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto p = random_polynomial(3, 5, s);
    P sum(3);
    for (const auto& [d, part] : homogeneous_parts(p)) {
      CHECK(part.is_homogeneous());
      CHECK(part.total_degree() == d);
      sum += part;
    }
    CHECK(sum == p);
  }
}

TEST_CASE("bombieri transform") {
  CHECK(bombieri(P::monomial({2, 2}, 1)) == P::monomial({2, 2}, 4));
  CHECK(bombieri(P::monomial({3, 1}, 1)) == P::monomial({3, 1}, 6));
  CHECK(bombieri(P::constant(2, 7)) == P::constant(2, 7));
}

TEST_CASE("pullback") {
  const auto p = random_polynomial(3, 4, 99);
  CHECK(pullback(p, AffineChartMap<Rational>::identity(3)) == p);

  // qubit density onto the classical segment: (r1 - r2)^2 with
  // r = (1/2, 1/2) + u (1/(2 sqrt3), -1/(2 sqrt3)) gives u^2 / 3
  using R = SparsePolynomial<Real>;
  const auto d = (R::variable(2, 0) - R::variable(2, 1)).pow(2);
  AffineChartMap<Real> map;
  map.base = {Real(1) / 2, Real(1) / 2};
  const Real h = 1 / (2 * sqrt(Real(3)));
  map.directions = {{h, -h}};
  const auto pulled = pullback(d, map);
  CHECK(pulled.size() == 1);
  CHECK(abs(pulled.coefficient({2}) - Real(1) / 3) < Real(1e-32));

  // property: pullback commutes with evaluation
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto q = random_polynomial(3, 4, s);
    AffineChartMap<Rational> m;
    m.base = {small_rational(s, 40), small_rational(s, 41), small_rational(s, 42)};
    for (std::size_t a = 0; a < 2; ++a) {
      m.directions.push_back({small_rational(s, 50 + a), small_rational(s, 60 + a), small_rational(s, 70 + a)});
    }
    const std::vector<Rational> u{small_rational(s, 80), small_rational(s, 81)};
    const auto image = m.apply(u);
    CHECK(pullback(q, m).evaluate(std::span<const Rational>(u)) == q.evaluate(std::span<const Rational>(image)));
  }
}

TEST_CASE("chart maps from vertices") {
  const std::vector<std::vector<Rational>> vertices{{0, 0}, {1, 0}, {0, 1}};
  const auto m = AffineChartMap<Rational>::from_vertices(vertices);
  CHECK(m.source_dim() == 2);
  CHECK(m.target_dim() == 2);
  const std::vector<Rational> u{Rational(1, 4), Rational(1, 2)};
  CHECK(m.apply(u) == u);
}

TEST_CASE("linear form products") {
  const std::vector<int> regular3{1, 1, 1};
  const auto v3 = vandermonde_forms<Rational>(regular3);
  CHECK(v3.factors.size() == 3);
  CHECK(v3.degree() == 6);
  CHECK(v3.is_homogeneous());
  CHECK(v3.expanded_rows().size() == 6);

  const std::vector<int> regular4{1, 1, 1, 1};
  CHECK(vandermonde_forms<Rational>(regular4).factors.size() == 6);
  CHECK(vandermonde_forms<Rational>(regular4).degree() == 12);

  const std::vector<int> qubit{1, 1};
  CHECK(vandermonde_forms<Rational>(qubit).degree() == 2);

  const std::vector<int> degenerate{2, 1};
  const auto v21 = vandermonde_forms<Rational>(degenerate);
  CHECK(v21.factors.size() == 1);
  CHECK(v21.factors[0].multiplicity == 4);

  const std::vector<Rational> x{Rational(1, 2), Rational(1, 3), Rational(1, 6)};
  CHECK(v3.expand().evaluate(std::span<const Rational>(x)) == v3.evaluate(std::span<const Rational>(x)));
}

TEST_CASE("as_linear_form_product needs a chart origin on the degenerate locus") {
  const std::vector<int> k{1, 1, 1};
  const std::vector<std::vector<Rational>> good{
      {Rational(1, 3), Rational(1, 3), Rational(1, 3)}, {Rational(1, 2), Rational(1, 2), 0}, {1, 0, 0}};
  const auto forms = as_linear_form_product(k, AffineChartMap<Rational>::from_vertices(good));
  CHECK(forms.is_homogeneous());
  CHECK(forms.nvars == 2);
  CHECK(forms.degree() == 6);

  const std::vector<std::vector<Rational>> bad{{1, 0, 0}, {Rational(1, 2), Rational(1, 2), 0}, {Rational(1, 3), Rational(1, 3), Rational(1, 3)}};
  CHECK_THROWS_AS(as_linear_form_product(k, AffineChartMap<Rational>::from_vertices(bad)), ContractViolation);
}

TEST_CASE("compose agrees with pullback of the expansion") {
  const std::vector<int> k{1, 2, 1};
  const auto forms = vandermonde_forms<Rational>(k);
  AffineChartMap<Rational> m;
  m.base = {Rational(1, 4), Rational(1, 4), Rational(1, 4)};
  m.directions = {{Rational(1, 2), Rational(-1, 3), 0}, {0, Rational(1, 5), Rational(-1, 7)}};
  CHECK(compose(forms, m).expand() == pullback(forms.expand(), m));
}
