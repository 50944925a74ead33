#include "classicality/indicators.hpp"

#include <array>
#include <cmath>

#include "classicality/errors.hpp"

namespace classicality {

namespace {

Method resolve_exact(Method requested, int degree, int la_max_degree) {
  switch (requested) {
    case Method::LA:
    case Method::Lasserre:
    case Method::Dirichlet:
      return requested;
    case Method::Auto:
    case Method::MonteCarlo:
      return degree <= la_max_degree ? Method::LA : Method::Lasserre;
  }
  return Method::LA;
}

template <class T>
T integrate_exact(const LinearFormProduct<T>& forms, const Simplex<T>& simplex, Method method) {
  switch (method) {
    case Method::LA: return integrate_la(forms, simplex).value;
    case Method::Lasserre: return integrate_lasserre(forms, simplex).value;
    case Method::Dirichlet: return integrate_dirichlet(forms, simplex).value;
    default: throw ContractViolation("not an exact integration method: " + to_string(method));
  }
}

template <class T>
T integrate_signed(const LinearFormProduct<T>& forms, const SignedSimplexList<T>& list, Method method) {
  T total(0);
  if (list.degenerate) return total;
  for (const auto& term : list.terms) {
    const T value = integrate_exact(forms, term.simplex, method);
    if (term.sign > 0) {
      total += value;
    } else {
      total -= value;
    }
  }
  return total;
}

template <class T>
bool use_signed_decomposition(const DegeneracyType& face, const KernelSpectrum<T>& pi, bool enabled) {
  if (!enabled || pi.n() != 4 || !face.is_regular()) return false;
  return classify_cross_section(pi) == CrossSection::B_type;
}

template <class T>
struct FaceResult {
  T numerator{0};
  T denominator{0};
  std::string decomposition;
};

template <class T>
FaceResult<T> integrate_face(const DegeneracyType& face, const KernelSpectrum<T>& pi, Method method, bool signed_b_type) {
  const auto forms = vandermonde_forms<T>(face.multiplicities());
  const auto simplex = face_simplex<T>(face);
  FaceResult<T> result;
  result.denominator = integrate_exact(forms, simplex, method);
  if (use_signed_decomposition(face, pi, signed_b_type)) {
    result.numerator = integrate_signed(forms, signed_decomposition_b_type(pi), method);
    result.decomposition = "signed-decomposition";
  } else {
    result.numerator = integrate_signed(forms, triangulate(positivity_polytope(pi, face)), method);
    result.decomposition = "triangulation";
  }
  return result;
}

}  // namespace

template <class T>
std::pair<T, T> face_integrals(const DegeneracyType& face, const KernelSpectrum<T>& pi, Method method,
                               bool signed_b_type) {
  auto r = integrate_face(face, pi, resolve_exact(method, face.density_degree(), kLaDefaultMaxDegree), signed_b_type);
  return {r.numerator, r.denominator};
}

template <class T>
IndicatorResult<T> indicator(int n, const DegeneracyType& stratum, const KernelSpectrum<T>& pi,
                             const IndicatorOptions& options) {
  if (pi.n() != n) {
    throw ContractViolation("spectrum has " + std::to_string(pi.n()) + " eigenvalues, expected " + std::to_string(n));
  }
  if (stratum.n() != n) {
    throw DomainError("stratum " + stratum.to_string() + " is not a partition of " + std::to_string(n));
  }
  IndicatorResult<T> result;
  result.n = n;
  result.stratum = stratum.canonical();
  result.spectrum = pi;
  result.requested = options.method;

  if (stratum.is_maximal()) {
    result.value = result.numerator = result.denominator = T(1);
    result.method = options.method;
    result.decomposition = "trivial";
    result.notes.push_back("maximal stratum: Q = 1 by convention");
    return result;
  }

  const Method exact = resolve_exact(options.method, stratum.density_degree(), options.la_max_degree);
  const auto orbit = degeneracy_orbit(result.stratum);

  if (options.method != Method::MonteCarlo) {
    result.method = exact;
    for (const auto& face : orbit) {
      const T weight = T(1) / T(face.multiplicities().back());
      auto f = integrate_face(face, pi, exact, options.signed_b_type);
      result.numerator += weight * f.numerator;
      result.denominator += weight * f.denominator;
      if (result.decomposition.empty() || f.decomposition == "signed-decomposition") result.decomposition = f.decomposition;
    }
  } else {
    result.method = Method::MonteCarlo;
    result.decomposition = "sampling";
    result.seed = options.seed;
    result.samples = options.mc_samples;
    double variance = 0.0;
    double numerator = 0.0;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      const auto& face = orbit[i];
      const double weight = 1.0 / face.multiplicities().back();
      const auto forms = vandermonde_forms<T>(face.multiplicities());
      const auto simplex = face_simplex<T>(face);
      result.denominator += T(1) / T(face.multiplicities().back()) * integrate_exact(forms, simplex, exact);
      const auto plane = supporting_hyperplane(pi, face);
      const std::vector<double> c = to_doubles(plane.coefficients);
      const Integrand f = [&forms, &c](std::span<const double> y) {
        double margin = 0.0;
        for (std::size_t b = 0; b < c.size(); ++b) margin += c[b] * y[b];
        return margin >= 0.0 ? forms.evaluate(y) : 0.0;
      };
      const auto mc = integrate_mc<T>(f, simplex, options.mc_samples, options.seed ^ (0x9E3779B97F4A7C15ull * i));
      numerator += weight * to_double(mc.value);
      variance += weight * weight * (*mc.stderr_estimate) * (*mc.stderr_estimate);
    }
    result.numerator = T(numerator);
    result.stderr_estimate = std::sqrt(variance) / to_double(result.denominator);
    result.notes.push_back("denominator by " + to_string(exact));
  }
  if (result.denominator <= 0) throw ContractViolation("non-positive stratum volume");
  result.value = result.numerator / result.denominator;
  return result;
}

template <class T>
T q3_regular_closed_form(const KernelSpectrum<T>& pi) {
  if (pi.n() != 3) throw ContractViolation("q3_regular_closed_form needs a qutrit spectrum");
  const T a = 3 * pi[0] - 1;
  const T b = 1 - 3 * pi[2];
  if (a <= 0 || b <= 0) throw DomainError("qutrit closed form is singular at this spectrum");
  const T a3 = a * a * a, b3 = b * b * b;
  return (4 / (a * a) + 4 / (b * b) + 6 / (a * b)) / (a3 * b3);
}

template <class T>
std::optional<T> q3_degenerate_closed_form(const KernelSpectrum<T>& pi) {
  if (pi.n() != 3) throw ContractViolation("q3_degenerate_closed_form needs a qutrit spectrum");
  if (pi[0] < 1 || pi[2] > 0) return std::nullopt;
  const T a = 3 * pi[0] - 1;
  const T b = 1 - 3 * pi[2];
  T a5 = a * a, b5 = b * b;
  a5 = a5 * a5 * a;
  b5 = b5 * b5 * b;
  return T(32) / T(33) * (1 / a5 + 1 / b5);
}

template <class T>
T q4_a_type_bracket(const T& a, const T& b, const T& d) {
  struct Term {
    int coefficient, pa, pb, pd;
  };
  static constexpr std::array<Term, 22> terms{{
      {480, 2, 4, 0}, {480, 4, 2, 0}, {35, 0, 0, 6},  {105, 1, 0, 5}, {105, 0, 1, 5}, {180, 2, 0, 4},
      {180, 0, 2, 4}, {200, 3, 0, 3}, {540, 1, 2, 3}, {540, 2, 1, 3}, {120, 4, 0, 2}, {120, 0, 4, 2},
      {912, 2, 2, 2}, {360, 1, 4, 1}, {960, 2, 3, 1}, {960, 3, 2, 1}, {800, 3, 3, 0}, {600, 1, 3, 2},
      {200, 0, 3, 3}, {315, 1, 1, 4}, {600, 3, 1, 2}, {360, 4, 1, 1},
  }};
  auto power = [](const T& x, int k) {
    T r(1);
    for (int i = 0; i < k; ++i) r *= x;
    return r;
  };
  T bracket(0);
  for (const auto& t : terms) bracket += T(t.coefficient) / (power(a, t.pa) * power(b, t.pb) * power(d, t.pd));
  return bracket / power(a * b * d, 3);
}

template <class T>
T q4_a_type_closed_form(const KernelSpectrum<T>& pi) {
  if (pi.n() != 4) throw ContractViolation("q4_a_type_closed_form needs a quatrit spectrum");
  if (classify_cross_section(pi) != CrossSection::A_type) {
    throw DomainError("q4 closed form applies to A-type spectra (pi_1 >= 1) only");
  }
  const T a = 4 * pi[0] - 1;
  const T b = 1 - 4 * pi[3];
  const T d = pi[0] + pi[1] - pi[2] - pi[3];
  if (a <= 0 || b <= 0 || d <= 0) throw ContractViolation("A-type closed-form denominators must be positive");
  return q4_a_type_bracket(a, b, d) / q4_a_type_bracket(T(3), T(1), T(1));
}

template <class T>
HierarchyReport<T> hierarchy_check(int n, const KernelSpectrum<T>& pi, const IndicatorOptions& options) {
  const StrataPoset poset = enumerate_strata(n);
  HierarchyReport<T> report;
  report.n = n;
  report.spectrum = pi;
  std::vector<T> values;
  for (const auto& s : poset.strata()) {
    values.push_back(indicator(n, s, pi, options).value);
    report.entries.push_back({s, values.back()});
  }
  for (const auto& [lo, hi] : poset.hasse_edges()) {
    const double margin = to_double(T(values[hi] - values[lo]));
    report.margins.push_back({poset.strata()[lo], poset.strata()[hi], margin});
    if (!(values[lo] < values[hi])) {
      report.violations.push_back({poset.strata()[lo], poset.strata()[hi], margin});
    }
  }
  report.conjecture_holds = report.violations.empty();
  return report;
}

#define CLASSICALITY_INSTANTIATE_INDICATORS(T)                                                                 \
  template IndicatorResult<T> indicator(int, const DegeneracyType&, const KernelSpectrum<T>&,                 \
                                        const IndicatorOptions&);                                             \
  template std::pair<T, T> face_integrals(const DegeneracyType&, const KernelSpectrum<T>&, Method, bool);     \
  template T q3_regular_closed_form(const KernelSpectrum<T>&);                                                \
  template std::optional<T> q3_degenerate_closed_form(const KernelSpectrum<T>&);                              \
  template T q4_a_type_bracket(const T&, const T&, const T&);                                                 \
  template T q4_a_type_closed_form(const KernelSpectrum<T>&);                                                 \
  template HierarchyReport<T> hierarchy_check(int, const KernelSpectrum<T>&, const IndicatorOptions&);

CLASSICALITY_INSTANTIATE_INDICATORS(Rational)
CLASSICALITY_INSTANTIATE_INDICATORS(Real)

}  // namespace classicality
