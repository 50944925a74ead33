#pragma once

// JSON encodings.  Scalars are {"decimal": 17 significant digits, "exact":
// "p/q" or null}; provenance records the arithmetic, engine, seed and the
// tolerances in force.

#include <nlohmann/json.hpp>

#include "classicality/geometry.hpp"
#include "classicality/indicators.hpp"
#include "classicality/polynomial.hpp"
#include "classicality/strata.hpp"

namespace classicality {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

template <class T>
Json scalar_json(const T& x);

Json to_json(const DegeneracyType& d);

template <class T>
Json to_json(const KernelSpectrum<T>& pi);

/// [[exponent...], "coefficient"] per term, graded-lex order.
template <class T>
Json to_json(const SparsePolynomial<T>& p);

template <class T>
Json to_json(const Polytope<T>& p);

template <class T>
Json to_json(const IndicatorResult<T>& r);

template <class T>
Json to_json(const HierarchyReport<T>& r);

template <class T>
const char* arithmetic_name();

#define CLASSICALITY_EXTERN_SERIALIZE(T)                      \
  extern template Json scalar_json(const T&);                 \
  extern template Json to_json(const KernelSpectrum<T>&);     \
  extern template Json to_json(const SparsePolynomial<T>&);   \
  extern template Json to_json(const Polytope<T>&);           \
  extern template Json to_json(const IndicatorResult<T>&);    \
  extern template Json to_json(const HierarchyReport<T>&);    \
  extern template const char* arithmetic_name<T>();

CLASSICALITY_EXTERN_SERIALIZE(Rational)
CLASSICALITY_EXTERN_SERIALIZE(Real)
#undef CLASSICALITY_EXTERN_SERIALIZE

}  // namespace classicality
