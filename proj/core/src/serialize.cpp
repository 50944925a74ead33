#include "classicality/serialize.hpp"

namespace classicality {

template <class T>
const char* arithmetic_name() {
  return is_exact_v<T> ? "rational" : "float128";
}

template <class T>
Json scalar_json(const T& x) {
  Json j;
  j["decimal"] = to_decimal(x, 17);
  if (auto exact = to_exact_string(x)) {
    j["exact"] = *exact;
  } else {
    j["exact"] = nullptr;
  }
  return j;
}

Json to_json(const DegeneracyType& d) {
  Json j;
  j["blocks"] = d.multiplicities();
  j["label"] = d.label();
  return j;
}

template <class T>
Json to_json(const KernelSpectrum<T>& pi) {
  Json j = Json::array();
  for (const auto& x : pi.values()) j.push_back(to_string(x));
  return j;
}

template <class T>
Json to_json(const SparsePolynomial<T>& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(Json::array({e, to_string(c)}));
  return Json{{"nvars", p.nvars()}, {"terms", terms}};
}

template <class T>
Json to_json(const Polytope<T>& p) {
  Json vertices = Json::array();
  for (const auto& v : p.expanded_vertices()) {
    Json point = Json::array();
    for (const auto& x : v) point.push_back(to_string(x));
    vertices.push_back(point);
  }
  return Json{{"face", to_json(p.face())}, {"dim", p.dim()}, {"vertices", vertices}, {"tags", p.tags()}};
}

namespace {

Json tolerances_json() {
  return Json{{"real_sign", kRealSignTolerance},
              {"degeneracy", kDegeneracyTolerance},
              {"vertex_merge", kVertexMergeTolerance}};
}

}  // namespace

template <class T>
Json to_json(const IndicatorResult<T>& r) {
  Json provenance;
  provenance["version"] = kVersion;
  provenance["arithmetic"] = arithmetic_name<T>();
  provenance["requested_method"] = to_string(r.requested);
  provenance["method"] = to_string(r.method);
  provenance["decomposition"] = r.decomposition;
  if (r.seed) {
    provenance["seed"] = *r.seed;
    provenance["samples"] = r.samples;
  } else {
    provenance["seed"] = nullptr;
  }
  provenance["tolerances"] = tolerances_json();
  provenance["notes"] = r.notes;

  Json j;
  j["n"] = r.n;
  j["stratum"] = to_json(r.stratum);
  j["spectrum"] = to_json(r.spectrum);
  j["value"] = scalar_json(r.value);
  j["numerator"] = scalar_json(r.numerator);
  j["denominator"] = scalar_json(r.denominator);
  j["method"] = to_string(r.method);
  if (r.stderr_estimate) {
    j["stderr"] = *r.stderr_estimate;
  } else {
    j["stderr"] = nullptr;
  }
  j["provenance"] = provenance;
  return j;
}

template <class T>
Json to_json(const HierarchyReport<T>& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) entries.push_back(Json{{"stratum", to_json(e.stratum)}, {"value", scalar_json(e.value)}});
  Json margins = Json::array();
  for (const auto& m : r.margins) {
    margins.push_back(Json{{"lower", m.lower.to_string()}, {"upper", m.upper.to_string()}, {"margin", m.margin}});
  }
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back(Json{{"lower", v.lower.to_string()}, {"upper", v.upper.to_string()}, {"margin", v.margin}});
  }
  Json j;
  j["n"] = r.n;
  j["spectrum"] = to_json(r.spectrum);
  j["entries"] = entries;
  j["margins"] = margins;
  j["violations"] = violations;
  j["conjecture_holds"] = r.conjecture_holds;
  j["provenance"] = Json{{"version", kVersion}, {"arithmetic", arithmetic_name<T>()}, {"tolerances", tolerances_json()}};
  return j;
}

#define CLASSICALITY_INSTANTIATE_SERIALIZE(T)          \
  template Json scalar_json(const T&);                 \
  template Json to_json(const KernelSpectrum<T>&);     \
  template Json to_json(const SparsePolynomial<T>&);   \
  template Json to_json(const Polytope<T>&);           \
  template Json to_json(const IndicatorResult<T>&);    \
  template Json to_json(const HierarchyReport<T>&);    \
  template const char* arithmetic_name<T>();

CLASSICALITY_INSTANTIATE_SERIALIZE(Rational)
CLASSICALITY_INSTANTIATE_SERIALIZE(Real)

}  // namespace classicality
