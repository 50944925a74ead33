#include <doctest.h>

#include <algorithm>
#include <boost/math/constants/constants.hpp>

#include "classicality/errors.hpp"
#include "classicality/quadrature.hpp"
#include "classicality/strata.hpp"

using namespace classicality;

namespace {

std::vector<std::string> names(const std::vector<DegeneracyType>& v) {
  std::vector<std::string> out;
  for (const auto& d : v) out.push_back(d.to_string());
  return out;
}

Real pi_real() { return boost::math::constants::pi<Real>(); }

}  // namespace

TEST_CASE("degeneracy types") {
  const auto d = DegeneracyType::parse("1,2,1");
  CHECK(d.n() == 4);
  CHECK(d.blocks() == 3);
  CHECK_FALSE(d.is_canonical());
  CHECK(d.canonical().to_string() == "2,1,1");
  CHECK(d.density_degree() == 2 * (2 + 1 + 2));
  CHECK(DegeneracyType({1, 1, 1, 1}).label() == "T^4");
  CHECK(DegeneracyType({3}).label() == "SU(3)");
  CHECK(DegeneracyType({1, 1, 1, 1}).is_regular());
  CHECK(DegeneracyType({4}).is_maximal());
  CHECK_THROWS_AS(DegeneracyType::parse("2,0"), DomainError);
  CHECK_THROWS_AS(DegeneracyType::parse(""), DomainError);
}

TEST_CASE("refinement order") {
  CHECK(refines(DegeneracyType({1, 1, 1, 1}), DegeneracyType({2, 2})));
  CHECK(refines(DegeneracyType({2, 1, 1}), DegeneracyType({3, 1})));
  CHECK(refines(DegeneracyType({2, 1, 1}), DegeneracyType({2, 2})));
  CHECK_FALSE(refines(DegeneracyType({2, 2}), DegeneracyType({3, 1})));
  CHECK_FALSE(refines(DegeneracyType({3, 1}), DegeneracyType({2, 2})));
  CHECK(refines(DegeneracyType({2, 1}), DegeneracyType({2, 1})));
}

TEST_CASE("strata posets for small N") {
  const auto p2 = enumerate_strata(2);
  CHECK(names(p2.strata()) == std::vector<std::string>{"1,1", "2"});

  const auto p3 = enumerate_strata(3);
  REQUIRE(p3.size() == 3);
  CHECK(names(p3.strata()) == std::vector<std::string>{"1,1,1", "2,1", "3"});
  CHECK(p3.less(0, 1));
  CHECK(p3.less(1, 2));
  CHECK(p3.less(0, 2));
  CHECK_FALSE(p3.covers(0, 2));
  CHECK(p3.maximal_chains().size() == 1);

  const auto p4 = enumerate_strata(4);
  CHECK(p4.size() == 5);
  const auto a = p4.index_of(DegeneracyType({2, 2}));
  const auto b = p4.index_of(DegeneracyType({3, 1}));
  CHECK_FALSE(p4.less(a, b));
  CHECK_FALSE(p4.less(b, a));
  CHECK(p4.maximal_chains().size() == 2);
  CHECK(p4.hasse_edges().size() == 5);

  CHECK(enumerate_strata(5).size() == 7);
  CHECK(enumerate_strata(6).size() == 11);
  CHECK(enumerate_strata(7).size() == 15);
}

TEST_CASE("poset order is a strict partial order") {
  for (int n = 2; n <= 6; ++n) {
    const auto p = enumerate_strata(n);
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK_FALSE(p.less(i, i));
      for (std::size_t j = 0; j < p.size(); ++j) {
        if (p.less(i, j)) CHECK_FALSE(p.less(j, i));
        for (std::size_t k = 0; k < p.size(); ++k) {
          if (p.less(i, j) && p.less(j, k)) CHECK(p.less(i, k));
        }
      }
    }
  }
}

TEST_CASE("degeneracy orbits") {
  CHECK(names(degeneracy_orbit(DegeneracyType({2, 1}))) == std::vector<std::string>{"2,1", "1,2"});
  CHECK(degeneracy_orbit(DegeneracyType({1, 1, 1})).size() == 1);
  CHECK(degeneracy_orbit(DegeneracyType({2, 2})).size() == 1);
  CHECK(degeneracy_orbit(DegeneracyType({2, 1, 1})).size() == 3);
  CHECK(degeneracy_orbit(DegeneracyType({3, 2, 1})).size() == 6);
}

TEST_CASE("kernel spectrum validation") {
  const auto pi = KernelSpectrum<Rational>::create({1, 1, -1});
  CHECK(pi.n() == 3);
  CHECK(pi.ascending() == std::vector<Rational>{-1, 1, 1});
  CHECK(pi.degeneracy().to_string() == "2,1");
  CHECK_THROWS_AS(KernelSpectrum<Rational>::create({-1, 1, 1}), DomainError);
  CHECK_THROWS_AS(KernelSpectrum<Rational>::create({1, 1, 1}), DomainError);
  CHECK_THROWS_AS(KernelSpectrum<Real>::create({Real(1), Real(1), Real(-0.999)}), DomainError);
  CHECK_NOTHROW(KernelSpectrum<Real>::create({Real(1), Real(1), Real(-1) + Real(1e-14)}, 1e-12));
}

TEST_CASE("state spectra") {
  CHECK_NOTHROW(StateSpectrum<Rational>::create({Rational(1, 2), Rational(1, 2)}));
  CHECK_THROWS_AS(StateSpectrum<Rational>::create({Rational(1, 4), Rational(3, 4)}), ContractViolation);
  CHECK_THROWS_AS(StateSpectrum<Rational>::create({Rational(1, 2), Rational(1, 4)}), DomainError);
}

TEST_CASE("moduli chart reproduces the qubit and qutrit endpoints") {
  const auto q2 = spectrum_from_moduli(2, {});
  const Real s3 = sqrt(Real(3));
  CHECK(abs(q2[0] - (1 + s3) / 2) < Real(1e-32));
  CHECK(abs(q2[1] - (1 - s3) / 2) < Real(1e-32));

  const auto z0 = spectrum_from_moduli(3, std::vector<Real>{Real(0)});
  CHECK(abs(z0[0] - 1) < Real(1e-32));
  CHECK(abs(z0[1] - 1) < Real(1e-32));
  CHECK(abs(z0[2] + 1) < Real(1e-32));

  const auto z1 = spectrum_from_moduli(3, std::vector<Real>{pi_real() / 3});
  CHECK(abs(z1[0] - Real(5) / 3) < Real(1e-32));
  CHECK(abs(z1[1] + Real(1) / 3) < Real(1e-32));
  CHECK(abs(z1[2] + Real(1) / 3) < Real(1e-32));
}

TEST_CASE("qutrit chart equals the zeta parameterization") {
  for (int k = 0; k <= 20; ++k) {
    const Real zeta = pi_real() / 3 * k / 20;
    const auto pi = spectrum_from_moduli(3, std::vector<Real>{zeta});
    const Real sixth = pi_real() / 6;
    CHECK(abs(pi[0] - (Real(1) / 3 + Real(4) / 3 * sin(zeta + sixth))) < Real(1e-30));
    CHECK(abs(pi[1] - (Real(1) / 3 + Real(4) / 3 * sin(sixth - zeta))) < Real(1e-30));
    CHECK(abs(pi[2] - (Real(1) / 3 - Real(4) / 3 * cos(zeta))) < Real(1e-30));
  }
}

TEST_CASE("chamber fractions always give valid sorted spectra") {
  for (int n = 3; n <= 6; ++n) {
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
      std::vector<Real> t;
      for (int m = 0; m < n - 2; ++m) t.push_back(Real(counter_uniform(17, trial, static_cast<std::uint64_t>(m))));
      const auto [pi, angles] = spectrum_from_chamber_fractions(n, t);
      const auto [r1, r2] = pi.residuals();
      CHECK(abs(r1) < Real(1e-30));
      CHECK(abs(r2) < Real(1e-30));
      CHECK(std::is_sorted(pi.values().rbegin(), pi.values().rend()));
      const auto bounds = moduli_angle_bounds(n, angles);
      for (std::size_t m = 0; m < angles.size(); ++m) CHECK(angles[m] <= bounds[m] + Real(1e-30));
    }
  }
}

TEST_CASE("moduli outside the chamber are rejected") {
  CHECK_THROWS_AS(spectrum_from_moduli(3, std::vector<Real>{Real(2)}), DomainError);
  CHECK_THROWS_AS(spectrum_from_moduli(3, std::vector<Real>{Real(-0.1)}), DomainError);
  CHECK_THROWS_AS(spectrum_from_moduli(4, std::vector<Real>{Real(0)}), DomainError);
}

TEST_CASE("stratum densities") {
  const auto d11 = stratum_density<Rational>(DegeneracyType({1, 1}));
  // (r1 - r2)^2 = r1^2 - 2 r1 r2 + r2^2
  CHECK(d11.polynomial.coefficient({2, 0}) == 1);
  CHECK(d11.polynomial.coefficient({1, 1}) == -2);
  CHECK(d11.weight_constraint == std::vector<int>{1, 1});
  // eliminating r2 = 1 - r1 gives (2 r1 - 1)^2
  const auto e = d11.eliminated();
  CHECK(e.coefficient({2}) == 4);
  CHECK(e.coefficient({1}) == -4);
  CHECK(e.coefficient({0}) == 1);

  const auto d21 = stratum_density<Rational>(DegeneracyType({2, 1}));
  CHECK(d21.polynomial.total_degree() == 4);
  CHECK(d21.weight_constraint == std::vector<int>{2, 1});
  // r2 = 1 - 2 r1: (3 r1 - 1)^4
  CHECK(d21.eliminated() == SparsePolynomial<Rational>::affine(Rational(-1), std::vector<Rational>{3}).pow(4));

  const auto d4 = stratum_density<Rational>(DegeneracyType({1, 1, 1, 1}));
  CHECK(d4.polynomial.total_degree() == 12);
  CHECK(d4.polynomial.is_homogeneous());
  CHECK(d4.eliminated().nvars() == 3);
}
