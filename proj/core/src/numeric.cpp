#include "classicality/numeric.hpp"

#include <cctype>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "classicality/errors.hpp"

namespace classicality {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return result;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Rational parse_integer(std::string_view s) {
  std::string digits(s);
  if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
  mpz_class z;
  if (digits.empty() || z.set_str(digits, 10) != 0) throw DomainError("not a number: '" + std::string(s) + "'");
  return Rational(z);
}

Rational parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    const std::string exp_text(s.substr(e + 1));
    std::size_t used = 0;
    try {
      exponent = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      throw DomainError("bad exponent in '" + std::string(s) + "'");
    }
    if (used != exp_text.size()) throw DomainError("bad exponent in '" + std::string(s) + "'");
    s = s.substr(0, e);
  }
  std::string mantissa;
  bool seen_point = false;
  for (char c : s) {
    if (c == '.') {
      if (seen_point) throw DomainError("not a number: '" + std::string(s) + "'");
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) throw DomainError("not a number: '" + std::string(s) + "'");
    mantissa.push_back(c);
    if (seen_point) --exponent;
  }
  if (mantissa.empty()) throw DomainError("not a number: '" + std::string(s) + "'");
  mpz_class num(mantissa, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational value = exponent < 0 ? Rational(num, scale) : Rational(num * scale);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const Rational num = parse_integer(trim(s.substr(0, slash)));
    const Rational den = parse_integer(trim(s.substr(slash + 1)));
    if (den == 0) throw DomainError("zero denominator in '" + std::string(s) + "'");
    return Rational(num / den);
  }
  if (s.find_first_of(".eE") != std::string_view::npos) return parse_decimal(s);
  return parse_integer(s);
}

Real parse_real(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.find('/') != std::string_view::npos) return to_real(parse_rational(s));
  try {
    return Real(std::string(s).c_str());
  } catch (const std::exception&) {
    throw DomainError("not a number: '" + std::string(s) + "'");
  }
}

std::string to_decimal(const Real& x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

std::string to_decimal(const Rational& x, int digits) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return to_decimal(to_real(x), digits);
}

}  // namespace classicality
