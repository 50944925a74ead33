#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "classicality/errors.hpp"
#include "classicality/indicators.hpp"
#include "classicality/parallel.hpp"
#include "classicality/serialize.hpp"
#include "classicality/strata.hpp"
#include "verification.hpp"

namespace cl = classicality;
using cl::Json;
using cl::Rational;
using cl::Real;

namespace {

constexpr double kSpectrumTolerance = 1e-9;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

struct SpectrumArgs {
  int n = 0;
  std::string spectrum;
  std::string moduli;
};

/// Exact spectrum when every entry is a rational that meets the constraints
/// exactly; otherwise a float128 spectrum checked to kSpectrumTolerance.
std::variant<cl::KernelSpectrum<Rational>, cl::KernelSpectrum<Real>> resolve_spectrum(const SpectrumArgs& args) {
  if (!args.spectrum.empty()) {
    std::vector<Rational> values;
    for (const auto& item : split(args.spectrum, ',')) values.push_back(cl::parse_rational(item));
    if (static_cast<int>(values.size()) != args.n) {
      throw cl::DomainError("--spectrum has " + std::to_string(values.size()) + " entries, expected " + std::to_string(args.n));
    }
    try {
      return cl::KernelSpectrum<Rational>::create(values);
    } catch (const cl::DomainError&) {
      std::vector<Real> reals;
      for (const auto& item : split(args.spectrum, ',')) reals.push_back(cl::parse_real(item));
      return cl::KernelSpectrum<Real>::create(reals, kSpectrumTolerance);
    }
  }
  std::vector<Real> angles;
  if (!args.moduli.empty()) {
    for (const auto& item : split(args.moduli, ',')) angles.push_back(cl::parse_real(item));
  } else {
    angles.assign(static_cast<std::size_t>(std::max(0, args.n - 2)), Real(0));
  }
  if (static_cast<int>(angles.size()) != args.n - 2) {
    throw cl::DomainError("--moduli needs " + std::to_string(args.n - 2) + " angles for n = " + std::to_string(args.n));
  }
  return cl::spectrum_from_moduli(args.n, angles);
}

void add_spectrum_options(CLI::App* cmd, SpectrumArgs& args) {
  cmd->add_option("--n", args.n, "Hilbert-space dimension N")->required()->check(CLI::Range(2, 12));
  auto* s = cmd->add_option("--spectrum", args.spectrum, "Kernel eigenvalues p1,p2,... (rationals or decimals)");
  auto* m = cmd->add_option("--moduli", args.moduli, "N-2 chart angles a1,a2,... (radians)");
  s->excludes(m);
}

int cmd_compute(const SpectrumArgs& sargs, const std::string& stratum_text, const cl::IndicatorOptions& options) {
  const auto stratum = stratum_text.empty() ? cl::DegeneracyType(std::vector<int>(static_cast<std::size_t>(sargs.n), 1))
                                            : cl::DegeneracyType::parse(stratum_text);
  const auto spectrum = resolve_spectrum(sargs);
  Json out = std::visit([&](const auto& pi) { return cl::to_json(cl::indicator(sargs.n, stratum, pi, options)); }, spectrum);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_hierarchy(const SpectrumArgs& sargs, const cl::IndicatorOptions& options) {
  const auto spectrum = resolve_spectrum(sargs);
  Json out = std::visit([&](const auto& pi) { return cl::to_json(cl::hierarchy_check(sargs.n, pi, options)); }, spectrum);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_polytope(const SpectrumArgs& sargs, const std::string& face_text) {
  const auto face = face_text.empty() ? cl::DegeneracyType(std::vector<int>(static_cast<std::size_t>(sargs.n), 1))
                                      : cl::DegeneracyType::parse(face_text);
  const auto spectrum = resolve_spectrum(sargs);
  Json out = std::visit([&](const auto& pi) { return cl::to_json(cl::positivity_polytope(pi, face)); }, spectrum);
  std::cout << out.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// scan

struct ScanSpec {
  int n = 3;
  std::vector<std::string> strata;
  int grid = 50;
  std::string method = "auto";
  std::size_t mc_samples = 1'000'000;
  std::uint64_t seed = cl::kDefaultSeed;
  std::string output = "-";
  std::string format = "csv";
};

struct ScanRow {
  std::vector<Real> angles;
  std::vector<std::string> spectrum;
  std::string stratum;
  std::string q_value;
  std::string method;
  std::string flag;
};

std::vector<cl::DegeneracyType> resolve_strata(const ScanSpec& spec) {
  const auto poset = cl::enumerate_strata(spec.n);
  std::vector<cl::DegeneracyType> out;
  const bool all = spec.strata.size() == 1 && spec.strata.front() == "all";
  if (spec.strata.empty() || all) {
    for (const auto& s : poset.strata()) {
      if (all || !s.is_maximal()) out.push_back(s);
    }
    return out;
  }
  for (const auto& text : spec.strata) {
    const auto d = cl::DegeneracyType::parse(text).canonical();
    if (d.n() != spec.n) throw cl::DomainError("stratum " + text + " is not a partition of " + std::to_string(spec.n));
    out.push_back(d);
  }
  return out;
}

/// Closed-form cross-check where one exists: "ok", "disputed" or "unchecked".
std::string closed_form_flag(const cl::IndicatorResult<Real>& r) {
  std::optional<Real> reference;
  if (r.n == 3 && r.stratum.is_regular()) {
    reference = cl::q3_regular_closed_form(r.spectrum);
  } else if (r.n == 3 && !r.stratum.is_maximal()) {
    reference = cl::q3_degenerate_closed_form(r.spectrum);
  } else if (r.n == 4 && r.stratum.is_regular() &&
             cl::classify_cross_section(r.spectrum) == cl::CrossSection::A_type) {
    reference = cl::q4_a_type_closed_form(r.spectrum);
  }
  if (!reference) return "unchecked";
  const double diff = cl::to_double(Real(abs(r.value - *reference)));
  double tolerance = 1e-9 * std::max(1e-300, std::abs(cl::to_double(*reference)));
  if (r.stderr_estimate) tolerance = std::max(tolerance, 5.0 * *r.stderr_estimate);
  return diff <= tolerance ? "ok" : "disputed";
}

std::vector<ScanRow> run_scan(const ScanSpec& spec) {
  if (spec.grid < 2) throw cl::DomainError("--grid must be at least 2");
  const auto strata = resolve_strata(spec);
  cl::IndicatorOptions options;
  options.method = cl::parse_method(spec.method);
  options.mc_samples = spec.mc_samples;
  options.seed = spec.seed;

  const int dims = std::max(0, spec.n - 2);
  std::size_t points = 1;
  for (int d = 0; d < dims; ++d) points *= static_cast<std::size_t>(spec.grid);

  std::vector<std::vector<ScanRow>> rows(points);
  cl::parallel_for(points, [&](std::size_t index) {
    std::vector<Real> fractions(static_cast<std::size_t>(dims));
    std::size_t rest = index;
    for (int d = dims - 1; d >= 0; --d) {
      fractions[static_cast<std::size_t>(d)] = Real(static_cast<long>(rest % static_cast<std::size_t>(spec.grid))) / (spec.grid - 1);
      rest /= static_cast<std::size_t>(spec.grid);
    }
    auto [pi, angles] = cl::spectrum_from_chamber_fractions(spec.n, fractions);
    for (const auto& stratum : strata) {
      const auto result = cl::indicator(spec.n, stratum, pi, options);
      ScanRow row;
      row.angles = angles;
      for (const auto& x : pi.values()) row.spectrum.push_back(cl::to_decimal(x, 17));
      row.stratum = stratum.to_string();
      row.q_value = cl::to_decimal(result.value, 17);
      row.method = cl::to_string(result.method);
      row.flag = closed_form_flag(result);
      rows[index].push_back(std::move(row));
    }
  });
  std::vector<ScanRow> flat;
  for (auto& group : rows) {
    for (auto& row : group) flat.push_back(std::move(row));
  }
  return flat;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv(std::ostream& os, int n, const std::vector<ScanRow>& rows) {
  for (int a = 1; a <= n - 2; ++a) os << "angle_" << a << ",";
  os << "stratum,q_value,method,flag\n";
  for (const auto& row : rows) {
    for (const auto& a : row.angles) os << cl::to_decimal(a, 17) << ",";
    os << csv_field(row.stratum) << "," << row.q_value << "," << row.method << "," << row.flag << "\n";
  }
}

void write_json(std::ostream& os, const ScanSpec& spec, const std::vector<ScanRow>& rows) {
  Json columns = Json::array();
  for (int a = 1; a <= spec.n - 2; ++a) columns.push_back("angle_" + std::to_string(a));
  for (const char* c : {"stratum", "q_value", "method", "flag"}) columns.push_back(c);
  Json data = Json::array();
  for (const auto& row : rows) {
    Json angles = Json::array();
    for (const auto& a : row.angles) angles.push_back(cl::to_decimal(a, 17));
    data.push_back(Json{{"angles", angles},
                        {"spectrum", row.spectrum},
                        {"stratum", row.stratum},
                        {"q_value", row.q_value},
                        {"method", row.method},
                        {"flag", row.flag}});
  }
  Json out;
  out["n"] = spec.n;
  out["grid"] = spec.grid;
  out["method"] = spec.method;
  out["seed"] = spec.seed;
  out["mc_samples"] = spec.mc_samples;
  out["columns"] = columns;
  out["rows"] = data;
  os << out.dump(2) << "\n";
}

int cmd_scan(const ScanSpec& spec) {
  if (spec.format != "csv" && spec.format != "json") throw cl::DomainError("--format must be csv or json");
  const auto rows = run_scan(spec);
  std::ofstream file;
  if (spec.output != "-") {
    file.open(spec.output, std::ios::binary);
    if (!file) throw cl::DomainError("cannot open " + spec.output);
  }
  std::ostream& os = spec.output == "-" ? std::cout : file;
  if (spec.format == "csv") {
    write_csv(os, spec.n, rows);
  } else {
    write_json(os, spec, rows);
  }
  return 0;
}

int cmd_verify(const std::string& level_text) {
  namespace v = cl::verification;
  const auto level = level_text == "full" ? v::Level::Full : v::Level::Fast;
  const auto results = v::run_all(level, [](const v::CheckResult& r) { std::cout << v::format(r) << std::endl; });
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << "\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wigner-function positivity polytopes and classicality indicators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cl::kVersion);

  cl::IndicatorOptions options;
  std::string method = "auto";
  auto add_method_options = [&](CLI::App* cmd) {
    cmd->add_option("--method", method, "la, lasserre, mc, dirichlet or auto")->capture_default_str();
    cmd->add_option("--mc-samples", options.mc_samples, "Monte Carlo sample count")->capture_default_str();
    cmd->add_option("--seed", options.seed, "Monte Carlo seed")->capture_default_str();
  };

  SpectrumArgs sargs;
  std::string stratum;
  auto* compute = app.add_subcommand("compute", "Indicator for one stratum (JSON on stdout)");
  add_spectrum_options(compute, sargs);
  compute->add_option("--stratum", stratum, "Block multiplicities k1,k2,... (default regular)");
  add_method_options(compute);

  auto* hierarchy = app.add_subcommand("hierarchy", "Indicators of every stratum and the order check");
  add_spectrum_options(hierarchy, sargs);
  add_method_options(hierarchy);

  std::string face;
  auto* polytope = app.add_subcommand("polytope", "Vertices of the positivity polytope on a face");
  add_spectrum_options(polytope, sargs);
  polytope->add_option("--face", face, "Ordered blocks k1,k2,... (default regular)");

  ScanSpec scan_spec;
  auto* scan = app.add_subcommand("scan", "Indicators over a moduli grid");
  scan->add_option("--n", scan_spec.n, "Hilbert-space dimension N")->required()->check(CLI::Range(2, 8));
  scan->add_option("--stratum", scan_spec.strata, "Strata k1,k2,... (repeatable) or 'all'");
  scan->add_option("--grid", scan_spec.grid, "Points per chart angle")->capture_default_str();
  scan->add_option("--method", scan_spec.method, "la, lasserre, mc, dirichlet or auto")->capture_default_str();
  scan->add_option("--mc-samples", scan_spec.mc_samples, "Monte Carlo sample count")->capture_default_str();
  scan->add_option("--seed", scan_spec.seed, "Monte Carlo seed")->capture_default_str();
  scan->add_option("--output,-o", scan_spec.output, "Output file, '-' for stdout")->capture_default_str();
  scan->add_option("--format", scan_spec.format, "csv or json")->capture_default_str();

  std::string level = "fast";
  auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
  verify->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    options.method = cl::parse_method(method);
    if (compute->parsed()) return cmd_compute(sargs, stratum, options);
    if (hierarchy->parsed()) return cmd_hierarchy(sargs, options);
    if (polytope->parsed()) return cmd_polytope(sargs, face);
    if (scan->parsed()) return cmd_scan(scan_spec);
    if (verify->parsed()) return cmd_verify(level);
  } catch (const cl::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const cl::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
