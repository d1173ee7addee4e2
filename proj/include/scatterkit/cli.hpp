#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "scatterkit/analytic_states.hpp"
#include "scatterkit/io.hpp"
#include "scatterkit/nonorth_delta.hpp"
#include "scatterkit/oracle.hpp"
#include "scatterkit/overlap_engine.hpp"
#include "scatterkit/potentials.hpp"
#include "scatterkit/regcompare.hpp"
#include "scatterkit/special_functions.hpp"
#include "scatterkit/wavepacket.hpp"

namespace scatterkit::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2 };

class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Kind { Number, Count, Text, Potential, Choice };

struct OptionDef {
  std::string name;
  Kind kind = Kind::Number;
  std::optional<std::string> def;  // nullopt: required
  std::string help;
  std::vector<std::string> choices;
};

struct CommandDef {
  std::string name;
  std::string help;
  std::vector<OptionDef> options;
};

namespace detail {

using io::ordered_json;

inline ordered_json num() { return {{"type", "number"}}; }
inline ordered_json str() { return {{"type", "string"}}; }
inline ordered_json boolean() { return {{"type", "boolean"}}; }
inline ordered_json integer() { return {{"type", "integer"}}; }
inline ordered_json complex_schema() { return {{"$ref", "#/definitions/complex"}}; }
inline ordered_json nullable(ordered_json s) { return {{"oneOf", {std::move(s), {{"type", "null"}}}}}; }
inline ordered_json object(std::vector<std::pair<std::string, ordered_json>> props) {
  ordered_json p = ordered_json::object();
  ordered_json req = ordered_json::array();
  for (auto& [k, v] : props) {
    req.push_back(k);
    p[k] = std::move(v);
  }
  return {{"type", "object"}, {"required", req}, {"properties", p}};
}
inline ordered_json array_of(ordered_json s) { return {{"type", "array"}, {"items", std::move(s)}}; }

}  // namespace detail

// JSON Schema (draft-07) of the --format json output of each command.
inline io::ordered_json json_schema(const std::string& command) {
  using namespace detail;
  ordered_json body;
  if (command == "coeffs") {
    body = object({{"potential", str()}, {"k", num()}, {"convention", str()}, {"R", complex_schema()},
                   {"T", complex_schema()}, {"unitarity_defect", num()}});
  } else if (command == "flux-scan") {
    body = object({{"potential", str()},
                   {"rows", array_of(object({{"k", num()}, {"R2", num()}, {"T2", num()}, {"defect", num()}}))},
                   {"max_abs_defect", num()}});
  } else if (command == "overlap") {
    body = object({{"potential", str()}, {"k1", num()}, {"k2", num()}, {"x1", num()}, {"x2", num()},
                   {"values", array_of(object({{"method", str()}, {"value", complex_schema()}}))}});
  } else if (command == "delta-term") {
    body = object({{"potential", str()},
                   {"k1", num()},
                   {"k2", num()},
                   {"delta_general", complex_schema()},
                   {"delta_closed_form", nullable(complex_schema())},
                   {"closed_form_name", str()},
                   {"delta_printed", nullable(complex_schema())},
                   {"delta_oracle", complex_schema()},
                   {"oracle_name", str()},
                   {"max_pairwise_disagreement", num()},
                   {"printed_disagreement", nullable(num())}});
  } else if (command == "delta-surface") {
    body = object({{"potential", str()},
                   {"rows", array_of(object({{"k1", num()}, {"k2", num()}, {"method", str()}, {"value", complex_schema()}}))},
                   {"max_abs", num()}});
  } else if (command == "regcompare") {
    body = object({{"potential", str()},
                   {"k1", num()},
                   {"k2", num()},
                   {"eps", num()},
                   {"lambda", num()},
                   {"I1", complex_schema()},
                   {"I2", complex_schema()},
                   {"smeared_I1", num()},
                   {"smeared_I2", num()},
                   {"smeared_target", num()},
                   {"leading_delta_match", boolean()},
                   {"next_order_difference", complex_schema()},
                   {"cesaro_difference", complex_schema()},
                   {"boundary_residual", complex_schema()},
                   {"normalization", object({{"oracle", num()}, {"dirichlet", num()}, {"stated", num()}, {"ratio_to_stated", num()}})},
                   {"lorentzian_integral", num()},
                   {"lorentzian_closed", num()}});
  } else if (command == "airy-check") {
    body = object({{"sigma", num()},
                   {"half_window", num()},
                   {"rows", array_of(object({{"x", num()}, {"y", num()}, {"truncated", num()}, {"tail", num()},
                                             {"corrected", num()}, {"target", num()}, {"error_truncated", num()},
                                             {"error_corrected", num()}}))},
                   {"max_error_corrected", num()}});
  } else if (command == "wavepacket-norm") {
    body = object({{"potential", str()},
                   {"rows", array_of(object({{"t", num()}, {"N", num()}, {"bound", num()}, {"drift", num()}, {"imag_residue", num()}}))},
                   {"bound", num()},
                   {"max_abs_drift", num()}});
  } else if (command == "radial-delta") {
    body = object({{"V0", num()},
                   {"b", num()},
                   {"k1", num()},
                   {"k2", num()},
                   {"T1", complex_schema()},
                   {"R1", complex_schema()},
                   {"T2", complex_schema()},
                   {"R2", complex_schema()},
                   {"delta_formula", complex_schema()},
                   {"delta_cesaro", complex_schema()},
                   {"difference", num()}});
  } else if (command == "golden-verify") {
    body = object({{"records", array_of(object({{"file", str()}, {"index", integer()}, {"potential", str()}, {"method", str()},
                                                {"k1", num()}, {"k2", num()}, {"expected", complex_schema()},
                                                {"got", complex_schema()}, {"error", num()}, {"tolerance", num()},
                                                {"pass", boolean()}}))},
                   {"failures", integer()}});
  } else if (command == "golden-generate") {
    body = object({{"files", array_of(object({{"file", str()}, {"records", integer()}}))}});
  } else {
    throw UsageError("no schema for command '" + command + "'");
  }
  ordered_json out = {{"$schema", "http://json-schema.org/draft-07/schema#"}};
  out.update(body);
  out["definitions"] = {
      {"complex", {{"type", "object"}, {"required", {"re", "im"}}, {"properties", {{"re", num()}, {"im", num()}}}}}};
  return out;
}

inline const std::vector<CommandDef>& commands() {
  static const std::vector<CommandDef> defs = [] {
    const OptionDef pot{"potential", Kind::Potential, std::nullopt, "potential spec family:key=value{,key=value}", {}};
    auto number = [](std::string n, std::optional<std::string> d, std::string h) {
      return OptionDef{std::move(n), Kind::Number, std::move(d), std::move(h), {}};
    };
    auto count = [](std::string n, std::string d, std::string h) {
      return OptionDef{std::move(n), Kind::Count, std::move(d), std::move(h), {}};
    };
    std::vector<CommandDef> v;
    v.push_back({"coeffs", "Reflection and transmission amplitudes at one momentum",
                 {pot, number("k", std::nullopt, "momentum"),
                  {"convention", Kind::Choice, "resolved", "square-well interior amplitude convention", {"resolved", "printed"}}}});
    v.push_back({"flux-scan", "|R|^2 + |T|^2 - 1 over a uniform momentum grid",
                 {pot, number("k-min", "0.1", "first momentum"), number("k-max", "5", "last momentum"),
                  count("n", "200", "grid points")}});
    v.push_back({"overlap", "Windowed overlap of two stationary states by several methods",
                 {pot, number("k1", std::nullopt, "ket momentum"), number("k2", std::nullopt, "bra momentum"),
                  number("x1", "-50", "window start"), number("x2", "50", "window end")}});
    v.push_back({"delta-term", "Non-orthogonality term: general, closed form, printed and oracle values",
                 {pot, number("k1", std::nullopt, "ket momentum"), number("k2", std::nullopt, "bra momentum")}});
    v.push_back({"delta-surface", "Non-orthogonality term over an n x n momentum grid (diagonal skipped)",
                 {pot, number("k-min", "0.5", "first momentum"), number("k-max", "3", "last momentum"),
                  count("n", "50", "grid points per axis")}});
    v.push_back({"regcompare", "Finite-window against exponentially damped regularization",
                 {{"potential", Kind::Potential, "squarewell:V0=0.5,a=2", "free or squarewell", {}},
                  number("k1", "1.1", "ket momentum"), number("k2", "1.7", "bra momentum"),
                  number("eps", "0.001", "damping"), number("lambda", "200", "window length"),
                  number("sigma", "1", "test-function width"), number("x1", "-40", "residual window start"),
                  number("x2", "-10", "residual window end")}});
    v.push_back({"airy-check", "Smeared Airy-state orthogonality against a Gaussian target",
                 {number("sigma", "0.5", "smearing width"), number("half-window", "40", "integration half-window T"),
                  number("x", "0", "first energy offset"),
                  {"d", Kind::Text, "0,1,3", "comma-separated offsets x - y", {}}}});
    v.push_back({"wavepacket-norm", "Norm of a Gaussian packet of stationary states over time",
                 {pot, number("k0", "5", "central momentum"), number("sigma", "0.5", "momentum width"),
                  count("n", "64", "Gauss-Legendre nodes"), number("span", "5", "half-width in sigma"),
                  number("t-max", "100", "last time"), count("nt", "11", "time samples"),
                  {"off-diagonal", Kind::Choice, "amplitude", "off-diagonal source", {"amplitude", "regularized"}}}});
    v.push_back({"radial-delta", "Radial s-wave term for a square well: formula against Cesaro oracle",
                 {number("V0", "-1", "well depth"), number("b", "1.5", "well radius"),
                  number("k1", "1.1", "ket momentum"), number("k2", "1.7", "bra momentum"),
                  number("lambda0", "0", "Cesaro start radius (0: automatic)")}});
    v.push_back({"golden-verify", "Recompute committed golden records and compare",
                 {{"golden-dir", Kind::Text, std::nullopt, "directory of golden JSON files", {}}}});
    v.push_back({"golden-generate", "Write the golden record set",
                 {{"golden-dir", Kind::Text, std::nullopt, "directory of golden JSON files", {}}}});
    for (auto& c : v) {
      c.options.push_back({"format", Kind::Choice, "csv", "output format", {"csv", "json"}});
      c.options.push_back({"output", Kind::Text, "-", "output file, - for stdout", {}});
    }
    return v;
  }();
  return defs;
}

inline const CommandDef& command_def(const std::string& name) {
  for (const auto& c : commands())
    if (c.name == name) return c;
  throw UsageError("unknown command '" + name + "'");
}

// Parsed and normalized invocation. Every option is present (defaults filled
// in), numbers are in 17-digit form and the potential spec is canonical.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> values;

  bool operator==(const RunConfig&) const = default;

  const std::string& text(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw UsageError(command + ": no option --" + key);
    return it->second;
  }
  double number(const std::string& key) const { return parse_number(text(key), "--" + key); }
  std::size_t count(const std::string& key) const { return static_cast<std::size_t>(std::stoull(text(key))); }
  Potential potential() const { return parse_potential_spec(text("potential")); }

  std::vector<std::string> canonical_args() const {
    std::vector<std::string> out = {command};
    for (const auto& o : command_def(command).options) {
      out.push_back("--" + o.name);
      out.push_back(text(o.name));
    }
    return out;
  }
  std::string canonical() const {
    std::string s;
    for (const auto& a : canonical_args()) s += (s.empty() ? "" : " ") + a;
    return s;
  }
};

inline std::string normalize(const OptionDef& o, const std::string& raw) {
  switch (o.kind) {
    case Kind::Number: return format_number(parse_number(raw, "--" + o.name));
    case Kind::Count: {
      const double v = parse_number(raw, "--" + o.name);
      if (v < 1.0 || v != std::floor(v) || v > 1e9) throw UsageError("--" + o.name + ": expected a positive integer, got '" + raw + "'");
      return std::to_string(static_cast<long long>(v));
    }
    case Kind::Potential: return potential_spec(parse_potential_spec(raw));
    case Kind::Choice:
      if (std::find(o.choices.begin(), o.choices.end(), raw) == o.choices.end())
        throw UsageError("--" + o.name + ": '" + raw + "' is not one of the allowed values");
      return raw;
    case Kind::Text: return raw;
  }
  return raw;
}

// Help or schema text requested instead of a run.
struct HelpRequested {
  std::string text;
};

inline void build_app(CLI::App& app, std::map<std::string, std::map<std::string, std::string>>& storage) {
  app.require_subcommand(1);
  app.footer("Exit codes: 0 success, 1 numerical-contract violation, 2 usage error.\n"
             "Run '<command> --help' for options and the JSON output schema.");
  for (const auto& c : commands()) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->footer("JSON schema (--format json):\n" + json_schema(c.name).dump(2));
    for (const auto& o : c.options) {
      auto* opt = sub->add_option("--" + o.name, storage[c.name][o.name], o.help);
      if (!o.def) opt->required();
      else opt->default_str(*o.def);
    }
  }
}

inline std::variant<RunConfig, HelpRequested> parse_args(const std::vector<std::string>& args) {
  std::map<std::string, std::map<std::string, std::string>> storage;
  CLI::App app{"Stationary scattering states, overlaps and non-orthogonality terms", "scatterkit"};
  build_app(app, storage);
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    for (auto* sub : app.get_subcommands())
      if (sub->parsed()) return HelpRequested{sub->help()};
    return HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  RunConfig cfg;
  for (auto* sub : app.get_subcommands()) {
    if (!sub->parsed()) continue;
    cfg.command = sub->get_name();
    for (const auto& o : command_def(cfg.command).options) {
      const bool given = sub->get_option("--" + o.name)->count() > 0;
      const std::string raw = given ? storage[cfg.command][o.name] : *o.def;
      try {
        cfg.values[o.name] = normalize(o, raw);
      } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
      }
    }
  }
  return cfg;
}

namespace detail {

inline std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = s.find(',', pos);
    out.push_back(parse_number(s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos), what));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  if (n == 1) return {lo};
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

inline ParamSet parse_params(const std::string& s) {
  ParamSet ps;
  if (s.empty()) return ps;
  std::size_t pos = 0;
  while (true) {
    const auto comma = s.find(',', pos);
    const std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("params: expected key=value, got '" + item + "'");
    ps[item.substr(0, eq)] = parse_number(item.substr(eq + 1), "params");
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return ps;
}

inline double param(const ParamSet& ps, const std::string& key) {
  auto it = ps.find(key);
  if (it == ps.end()) throw InvalidArgument("params: missing '" + key + "'");
  return it->second;
}

struct Output {
  bool json = false;
  io::ordered_json doc;
};

}  // namespace detail

// Golden record evaluation. Methods:
//   coefficient_R, coefficient_T   amplitude at k1
//   delta_term_1d                  Δ(k1, k2) from R and T
//   square_well_block              square-well block form
//   cesaro                         Cesàro extraction, params lambda0
//   sech2_subtraction              sech² asymptotic subtraction
//   norm_at_time                   packet norm, params k0, sigma, n, span, t
inline Complex evaluate_golden(const io::GoldenRecord& r) {
  const Potential p = parse_potential_spec(r.potential);
  const ParamSet ps = detail::parse_params(r.params);
  if (r.method == "coefficient_R") return coefficients(p, r.k1).R;
  if (r.method == "coefficient_T") return coefficients(p, r.k1).T;
  if (r.method == "delta_term_1d") return delta_term_1d(p, r.k1, r.k2);
  if (r.method == "square_well_block") return delta_term_square_well(r.k1, r.k2, p);
  if (r.method == "cesaro") return oracle::cesaro_delta_extract(p, r.k1, r.k2, detail::param(ps, "lambda0")).averaged;
  if (r.method == "sech2_subtraction") return oracle::sech2_delta_subtracted(p, r.k1, r.k2);
  if (r.method == "norm_at_time") {
    const auto prof = gaussian_profile(detail::param(ps, "k0"), detail::param(ps, "sigma"),
                                       static_cast<std::size_t>(detail::param(ps, "n")), detail::param(ps, "span"));
    const auto v = norm_at_time(p, prof, detail::param(ps, "t"));
    return {v.N, 0.0};
  }
  throw InvalidArgument("golden record: unknown method '" + r.method + "'");
}

// The committed record set, file name → records, with values computed now.
// Each Δ value is cross-checked against its oracle before it is accepted.
inline std::map<std::string, std::vector<io::GoldenRecord>> golden_record_set() {
  std::map<std::string, std::vector<io::GoldenRecord>> files;
  auto add = [&](const std::string& file, io::GoldenRecord r) {
    const Complex v = evaluate_golden(r);
    r.value_re = v.real();
    r.value_im = v.imag();
    files[file].push_back(std::move(r));
  };

  const std::vector<std::pair<double, double>> pairs = {{0.3, 0.9},  {0.5, 1.3}, {0.7, 2.1}, {0.9, 1.6}, {1.1, 1.7},
                                                        {1.2, 3.1},  {1.5, 2.5}, {1.9, 0.4}, {2.4, 3.3}, {2.8, 1.0}};
  for (const std::string spec : {"sech2:V0=-0.7,mu=1", "sech2:V0=0.9,mu=1.5"}) {
    const Potential p = parse_potential_spec(spec);
    for (auto [k1, k2] : pairs) {
      const Complex d = delta_term_1d(p, k1, k2);
      const Complex o = oracle::sech2_delta_subtracted(p, k1, k2);
      if (std::abs(d - o) > 1e-8 || std::abs(d) <= 1e-6)
        throw ConvergenceError("golden: sech2 pair (" + format_number(k1) + ", " + format_number(k2) + ") fails its oracle check");
      add("delta_sech2.json", {potential_spec(p), k1, k2, "delta_term_1d", 0, 0, 1e-10, ""});
      add("delta_sech2.json", {potential_spec(p), k1, k2, "sech2_subtraction", 0, 0, 1e-9, ""});
    }
  }

  const Potential sw = square_well(0.5, 2.0);
  for (auto [k1, k2] : std::vector<std::pair<double, double>>{{1.1, 1.7}, {0.6, 2.2}, {0.9, 0.5}, {2.5, 1.4}}) {
    const Complex d = delta_term_1d(sw, k1, k2);
    const Complex o = oracle::cesaro_delta_extract(sw, k1, k2, 2000.0).averaged;
    if (std::abs(d - o) > 1e-8) throw ConvergenceError("golden: square-well pair fails its oracle check");
    add("delta_squarewell.json", {potential_spec(sw), k1, k2, "delta_term_1d", 0, 0, 1e-10, ""});
    add("delta_squarewell.json", {potential_spec(sw), k1, k2, "square_well_block", 0, 0, 1e-10, ""});
  }
  add("delta_squarewell.json", {potential_spec(sw), 1.1, 1.7, "cesaro", 0, 0, 1e-9, "lambda0=2000"});
  const Potential dp = delta_potential();
  for (auto [k1, k2] : std::vector<std::pair<double, double>>{{0.4, 1.9}, {1.3, 2.6}})
    add("delta_squarewell.json", {potential_spec(dp), k1, k2, "delta_term_1d", 0, 0, 1e-12, ""});

  for (const std::string spec : {"squarewell:V0=0.5,a=2", "squarewell:V0=2,a=1", "squarewell:V0=-1,a=3", "delta:g=-1",
                                 "delta:g=0.7", "sech2:V0=-0.7,mu=1", "sech2:V0=0.9,mu=1.5"}) {
    const Potential p = parse_potential_spec(spec);
    for (double k : {0.4, 1.3, 2.7}) {
      add("coefficients.json", {potential_spec(p), k, 0.0, "coefficient_R", 0, 0, 1e-12, ""});
      add("coefficients.json", {potential_spec(p), k, 0.0, "coefficient_T", 0, 0, 1e-12, ""});
    }
  }

  for (double t : {0.0, 10.0, 20.0, 30.0, 40.0, 50.0})
    add("wavepacket_norm.json",
        {potential_spec(sw), 0.0, 0.0, "norm_at_time", 0, 0, 1e-9, "k0=5,sigma=0.5,n=64,span=5,t=" + format_number(t)});
  return files;
}

namespace detail {

inline void emit(std::ostream& out, const RunConfig& cfg, const std::function<void(std::ostream&)>& csv,
                 const std::function<io::ordered_json()>& json) {
  std::ostringstream buf;
  if (cfg.text("format") == "json") io::write_json(buf, json());
  else csv(buf);
  const std::string& path = cfg.text("output");
  if (path == "-") {
    out << buf.str();
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    f << buf.str();
  }
}

}  // namespace detail

// Executes one command. Returns the exit code; library errors propagate.
inline int run(const RunConfig& cfg, std::ostream& out) {
  using io::CsvWriter;
  using io::complex_json;
  using io::ordered_json;
  const std::string& cmd = cfg.command;
  int code = kOk;

  if (cmd == "coeffs") {
    const Potential p = cfg.potential();
    const double k = cfg.number("k");
    const Convention conv = cfg.text("convention") == "printed" ? Convention::Printed : Convention::Resolved;
    const auto c = coefficients(p, k, conv);
    const double defect = std::norm(c.R) + std::norm(c.T) - 1.0;
    if (std::abs(defect) > 1e-10) code = kViolation;
    detail::emit(
        out, cfg,
        [&](std::ostream& o) {
          CsvWriter w(o, {"k", "R_re", "R_im", "T_re", "T_im", "unitarity_defect"});
          w.row() << k << c.R << c.T << defect;
        },
        [&] {
          return ordered_json{{"potential", potential_spec(p)}, {"k", k}, {"convention", cfg.text("convention")},
                              {"R", complex_json(c.R)},       {"T", complex_json(c.T)}, {"unitarity_defect", defect}};
        });
    return code;
  }

  if (cmd == "flux-scan") {
    const Potential p = cfg.potential();
    const auto ks = detail::uniform_grid(cfg.number("k-min"), cfg.number("k-max"), cfg.count("n"));
    std::vector<ScatteringCoefficients> cs(ks.size());
    parallel_for(ks.size(), [&](std::size_t i) { cs[i] = coefficients(p, ks[i]); });
    double worst = 0.0;
    for (const auto& c : cs) worst = std::max(worst, std::abs(std::norm(c.R) + std::norm(c.T) - 1.0));
    if (worst > 1e-10) code = kViolation;
    detail::emit(
        out, cfg,
        [&](std::ostream& o) {
          CsvWriter w(o, {"k", "R2", "T2", "defect"});
          for (std::size_t i = 0; i < ks.size(); ++i)
            w.row() << ks[i] << std::norm(cs[i].R) << std::norm(cs[i].T) << std::norm(cs[i].R) + std::norm(cs[i].T) - 1.0;
        },
        [&] {
          ordered_json rows = ordered_json::array();
          for (std::size_t i = 0; i < ks.size(); ++i)
            rows.push_back({{"k", ks[i]},
                            {"R2", std::norm(cs[i].R)},
                            {"T2", std::norm(cs[i].T)},
                            {"defect", std::norm(cs[i].R) + std::norm(cs[i].T) - 1.0}});
          return ordered_json{{"potential", potential_spec(p)}, {"rows", rows}, {"max_abs_defect", worst}};
        });
    return code;
  }

  if (cmd == "overlap") {
    const Potential p = cfg.potential();
    const double k1 = cfg.number("k1"), k2 = cfg.number("k2");
    const WindowSpec w{cfg.number("x1"), cfg.number("x2")};
    std::vector<std::pair<std::string, Complex>> vals;
    vals.emplace_back("window", overlap_window(p, k1, k2, w));
    vals.emplace_back("quadrature", oracle::quad_overlap(p, k1, k2, w));
    if (k1 != k2) {
      vals.emplace_back("boundary", overlap_from_boundary(p, k1, k2, w));
      vals.emplace_back("finite_part", p.family == Family::Sech2 ? -oracle::sech2_delta_subtracted(p, k2, k1)
                                                                 : overlap_finite_part(p, k1, k2));
    }
    if (k1 != k2 && (p.family == Family::Free || p.family == Family::Delta || p.family == Family::SquareWell)) {
      const auto d = regularized_overlap(p, k1, k2, 1e-3);
      vals.emplace_back("delta_km_coeff", d.delta_km_coeff);
      vals.emplace_back("delta_kp_coeff", d.delta_kp_coeff);
      vals.emplace_back("regularized_remainder", d.finite_remainder);
    }
    detail::emit(
        out, cfg,
        [&](std::ostream& o) {
          CsvWriter cw(o, {"method", "re", "im"});
          for (auto& [m, v] : vals) cw.row() << m << v;
        },
        [&] {
          ordered_json arr = ordered_json::array();
          for (auto& [m, v] : vals) arr.push_back({{"method", m}, {"value", complex_json(v)}});
          return ordered_json{{"potential", potential_spec(p)}, {"k1", k1}, {"k2", k2}, {"x1", w.x1}, {"x2", w.x2}, {"values", arr}};
        });
    return code;
  }

  if (cmd == "delta-term") {
    const Potential p = cfg.potential();
    const auto r = delta_report(p, cfg.number("k1"), cfg.number("k2"));
    auto opt_cells = [](CsvWriter::Row& row, const std::optional<Complex>& z) {
      if (z) row << *z;
      else row << "" << "";
    };
    detail::emit(
        out, cfg,
        [&](std::ostream& o) {
          CsvWriter w(o, {"k1", "k2", "general_re", "general_im", "closed_form_re", "closed_form_im", "printed_re",
                          "printed_im", "oracle_re", "oracle_im", "max_pairwise_disagreement"});
          auto row = w.row();
          row << r.k1 << r.k2 << r.delta_general;
          opt_cells(row, r.delta_closed_form);
          opt_cells(row, r.delta_printed);
          row << r.delta_oracle << r.max_pairwise_disagreement;
        },
        [&] {
          auto opt_json = [](const std::optional<Complex>& z) { return z ? complex_json(*z) : ordered_json(nullptr); };
          return ordered_json{{"potential", potential_spec(p)},
                              {"k1", r.k1},
                              {"k2", r.k2},
                              {"delta_general", complex_json(r.delta_general)},
                              {"delta_closed_form", opt_json(r.delta_closed_form)},
                              {"closed_form_name", r.closed_form_name},
                              {"delta_printed", opt_json(r.delta_printed)},
                              {"delta_oracle", complex_json(r.delta_oracle)},
                              {"oracle_name", r.oracle_name},
                              {"max_pairwise_disagreement", r.max_pairwise_disagreement},
                              {"printed_disagreement", r.printed_disagreement ? ordered_json(*r.printed_disagreement) : ordered_json(nullptr)}};
        });
    return code;
  }

  if (cmd == "delta-surface") {
    const Potential p = cfg.potential();
    if (p.family == Family::Linear) throw UnsupportedOperation("delta-surface: no scattering states for the linear family");
    const auto ks = detail::uniform_grid(cfg.number("k-min"), cfg.number("k-max"), cfg.count("n"));
    std::vector<std::string> methods = {"general"};
    if (p.family != Family::Sech2) methods.push_back("regularized");
    if (p.family == Family::SquareWell) methods.push_back("square_well_block");
    const std::size_t n = ks.size(), nm = methods.size();
    std::vector<Complex> vals(n * n * nm);
    parallel_for(n, [&](std::size_t i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        Complex* v = &vals[(i * n + j) * nm];
        v[0] = delta_term_1d(p, ks[i], ks[j]);
        if (nm > 1) v[1] = -regularized_overlap(p, ks[j], ks[i], 1e-3).finite_remainder;
        if (nm > 2) v[2] = delta_term_square_well(ks[i], ks[j], p);
      }
    });
    double worst = 0.0;
    for (const auto& v : vals) worst = std::max(worst, std::abs(v));
    detail::emit(
        out, cfg,
        [&](std::ostream& o) {
          CsvWriter w(o, {"k1", "k2", "method", "re", "im"});
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
              if (i != j)
                for (std::size_t m = 0; m < nm; ++m) w.row() << ks[i] << ks[j] << methods[m] << vals[(i * n + j) * nm + m];
        },
        [&] {
          ordered_json rows = ordered_json::array();
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
              if (i != j)
                for (std::size_t m = 0; m < nm; ++m)
                  rows.push_back({{"k1", ks[i]}, {"k2", ks[j]}, {"method", methods[m]}, {"value", complex_json(vals[(i * n + j) * nm + m])}});
          return ordered_json{{"potential", potential_spec(p)}, {"rows", rows}, {"max_abs", worst}};
        });
    return code;
  }

  if (cmd == "regcompare") {
    const Potential p = cfg.potential();
    const auto r = reg::compare(p, cfg.number("k1"), cfg.number("k2"), cfg.number("eps"), cfg.number("lambda"),
                                cfg.number("sigma"), WindowSpec{cfg.number("x1"), cfg.number("x2")});
    if (!r.leading_delta_match) code = kViolation;
    detail::emit(
        out, cfg,
        [&](std::ostream& o) {
          CsvWriter w(o, {"k1", "k2", "eps", "lambda", "I1_re", "I1_im", "I2_re", "I2_im", "leading_delta_match",
                          "next_order_difference_re", "next_order_difference_im", "boundary_residual_re",
                          "boundary_residual_im", "normalization_oracle", "normalization_stated", "normalization_ratio",
                          "lorentzian_integral", "lorentzian_closed"});
          w.row() << r.k1 << r.k2 << r.eps << r.lambda << r.I1 << r.I2 << r.leading_delta_match << r.next_order_difference
                  << r.boundary_residual << r.normalization.oracle << r.normalization.stated_value
                  << r.normalization.ratio_to_stated << r.lorentzian_integral << r.lorentzian_closed;
        },
        [&] {
          return ordered_json{
              {"potential", potential_spec(p)},
              {"k1", r.k1},
              {"k2", r.k2},
              {"eps", r.eps},
              {"lambda", r.lambda},
              {"I1", complex_json(r.I1)},
              {"I2", complex_json(r.I2)},
              {"smeared_I1", r.smeared_I1},
              {"smeared_I2", r.smeared_I2},
              {"smeared_target", r.smeared_target},
              {"leading_delta_match", r.leading_delta_match},
              {"next_order_difference", complex_json(r.next_order_difference)},
              {"cesaro_difference", complex_json(r.cesaro_difference)},
              {"boundary_residual", complex_json(r.boundary_residual)},
              {"normalization",
               {{"oracle", r.normalization.oracle},
                {"dirichlet", r.normalization.dirichlet},
                {"stated", r.normalization.stated_value},
                {"ratio_to_stated", r.normalization.ratio_to_stated}}},
              {"lorentzian_integral", r.lorentzian_integral},
              {"lorentzian_closed", r.lorentzian_closed}};
        });
    return code;
  }

  if (cmd == "airy-check") {
    const double sigma = cfg.number("sigma"), T = cfg.number("half-window"), x = cfg.number("x");
    const auto ds = detail::parse_list(cfg.text("d"), "--d");
    std::vector<SmearedAiryOverlap> rs(ds.size());
    parallel_for(ds.size(), [&](std::size_t i) { rs[i] = airy_overlap_smeared(x, x - ds[i], T, sigma); });
    double worst = 0.0;
    for (const auto& r : rs) worst = std::max(worst, std::abs(r.corrected - r.target));
    if (worst > 1e-3) code = kViolation;
    detail::emit(
        out, cfg,
        [&](std::ostream& o) {
          CsvWriter w(o, {"x", "y", "truncated", "tail", "corrected", "target", "error_truncated", "error_corrected"});
          for (std::size_t i = 0; i < ds.size(); ++i)
            w.row() << x << x - ds[i] << rs[i].truncated << rs[i].tail << rs[i].corrected << rs[i].target
                    << rs[i].truncated - rs[i].target << rs[i].corrected - rs[i].target;
        },
        [&] {
          ordered_json rows = ordered_json::array();
          for (std::size_t i = 0; i < ds.size(); ++i)
            rows.push_back({{"x", x},
                            {"y", x - ds[i]},
                            {"truncated", rs[i].truncated},
                            {"tail", rs[i].tail},
                            {"corrected", rs[i].corrected},
                            {"target", rs[i].target},
                            {"error_truncated", rs[i].truncated - rs[i].target},
                            {"error_corrected", rs[i].corrected - rs[i].target}});
          return ordered_json{{"sigma", sigma}, {"half_window", T}, {"rows", rows}, {"max_error_corrected", worst}};
        });
    return code;
  }

  if (cmd == "wavepacket-norm") {
    const Potential p = cfg.potential();
    const auto prof = gaussian_profile(cfg.number("k0"), cfg.number("sigma"), cfg.count("n"), cfg.number("span"));
    const OffDiagonal src = cfg.text("off-diagonal") == "regularized" ? OffDiagonal::Regularized : OffDiagonal::AmplitudeDelta;
    const auto K = build_norm_kernel(p, prof, src);
    const double bound = norm_drift_bound(prof, delta_function(p, src));
    const auto ts = detail::uniform_grid(0.0, cfg.number("t-max"), cfg.count("nt"));
    std::vector<NormValue> vs;
    for (double t : ts) vs.push_back(norm_at_time(K, prof, t));
    double worst = 0.0;
    for (const auto& v : vs) worst = std::max(worst, std::abs(v.N - vs.front().N));
    if (worst > bound + 1e-12 * std::abs(vs.front().N)) code = kViolation;
    detail::emit(
        out, cfg,
        [&](std::ostream& o) {
          CsvWriter w(o, {"t", "N", "bound", "drift", "imag_residue"});
          for (const auto& v : vs) w.row() << v.t << v.N << bound << v.N - vs.front().N << v.imag_residue;
        },
        [&] {
          ordered_json rows = ordered_json::array();
          for (const auto& v : vs)
            rows.push_back({{"t", v.t}, {"N", v.N}, {"bound", bound}, {"drift", v.N - vs.front().N}, {"imag_residue", v.imag_residue}});
          return ordered_json{{"potential", potential_spec(p)}, {"rows", rows}, {"bound", bound}, {"max_abs_drift", worst}};
        });
    return code;
  }

  if (cmd == "radial-delta") {
    const double V0 = cfg.number("V0"), b = cfg.number("b"), k1 = cfg.number("k1"), k2 = cfg.number("k2");
    const auto V = oracle::radial_square_well(V0, b);
    const double r_max = b + 16.0 * kPi / std::min(k1, k2);
    const auto s1 = oracle::radial_ode_solve(V, k1, r_max), s2 = oracle::radial_ode_solve(V, k2, r_max);
    const Complex formula = delta_term_radial(s1.T, s1.R, s2.T, s2.R, s1.phi0, s1.dphi0, s2.phi0, s2.dphi0, k1, k2);
    double lambda0 = cfg.number("lambda0");
    if (lambda0 <= 0.0) lambda0 = std::max(10.0 * std::max(b, 1.0), 16.0 * kPi / std::abs(k1 - k2));
    const Complex ces = oracle::radial_cesaro_delta(V, k1, k2, lambda0).averaged;
    const double diff = std::abs(formula - ces);
    detail::emit(
        out, cfg,
        [&](std::ostream& o) {
          CsvWriter w(o, {"k1", "k2", "T1_re", "T1_im", "R1_re", "R1_im", "T2_re", "T2_im", "R2_re", "R2_im",
                          "delta_formula_re", "delta_formula_im", "delta_cesaro_re", "delta_cesaro_im", "difference"});
          w.row() << k1 << k2 << s1.T << s1.R << s2.T << s2.R << formula << ces << diff;
        },
        [&] {
          return ordered_json{{"V0", V0},
                              {"b", b},
                              {"k1", k1},
                              {"k2", k2},
                              {"T1", complex_json(s1.T)},
                              {"R1", complex_json(s1.R)},
                              {"T2", complex_json(s2.T)},
                              {"R2", complex_json(s2.R)},
                              {"delta_formula", complex_json(formula)},
                              {"delta_cesaro", complex_json(ces)},
                              {"difference", diff}};
        });
    return code;
  }

  if (cmd == "golden-verify") {
    struct Line {
      std::string file;
      std::size_t index;
      io::GoldenRecord rec;
      Complex got;
      double error;
      bool pass;
    };
    std::vector<Line> lines;
    for (const auto& path : io::golden_files(cfg.text("golden-dir"))) {
      const auto recs = io::read_golden_file(path);
      for (std::size_t i = 0; i < recs.size(); ++i) {
        const Complex got = evaluate_golden(recs[i]);
        const double err = std::abs(got - Complex(recs[i].value_re, recs[i].value_im));
        lines.push_back({path.filename().string(), i, recs[i], got, err, err <= recs[i].tolerance});
      }
    }
    if (lines.empty()) throw UsageError("golden-verify: no golden records found");
    std::size_t failures = 0;
    for (const auto& l : lines) failures += l.pass ? 0 : 1;
    if (failures) code = kViolation;
    detail::emit(
        out, cfg,
        [&](std::ostream& o) {
          CsvWriter w(o, {"file", "index", "potential", "method", "k1", "k2", "expected_re", "expected_im", "got_re",
                          "got_im", "error", "tolerance", "pass"});
          for (const auto& l : lines)
            w.row() << l.file << l.index << l.rec.potential << l.rec.method << l.rec.k1 << l.rec.k2
                    << Complex(l.rec.value_re, l.rec.value_im) << l.got << l.error << l.rec.tolerance << l.pass;
        },
        [&] {
          ordered_json rows = ordered_json::array();
          for (const auto& l : lines)
            rows.push_back({{"file", l.file},
                            {"index", l.index},
                            {"potential", l.rec.potential},
                            {"method", l.rec.method},
                            {"k1", l.rec.k1},
                            {"k2", l.rec.k2},
                            {"expected", complex_json(Complex(l.rec.value_re, l.rec.value_im))},
                            {"got", complex_json(l.got)},
                            {"error", l.error},
                            {"tolerance", l.rec.tolerance},
                            {"pass", l.pass}});
          return ordered_json{{"records", rows}, {"failures", failures}};
        });
    return code;
  }

  if (cmd == "golden-generate") {
    const std::filesystem::path dir = cfg.text("golden-dir");
    std::filesystem::create_directories(dir);
    const auto set = golden_record_set();
    for (const auto& [file, recs] : set) io::write_golden_file(dir / file, recs);
    detail::emit(
        out, cfg,
        [&](std::ostream& o) {
          CsvWriter w(o, {"file", "records"});
          for (const auto& [file, recs] : set) w.row() << file << recs.size();
        },
        [&] {
          ordered_json files = ordered_json::array();
          for (const auto& [file, recs] : set) files.push_back({{"file", file}, {"records", recs.size()}});
          return ordered_json{{"files", files}};
        });
    return code;
  }

  throw UsageError("unknown command '" + cmd + "'");
}

// argv → exit code, with errors mapped: usage and precondition failures 2,
// numerical failures 1.
inline int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    auto parsed = parse_args(args);
    if (auto* h = std::get_if<HelpRequested>(&parsed)) {
      out << h->text;
      return kOk;
    }
    return run(std::get<RunConfig>(parsed), out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnsupportedOperation& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kViolation;
  }
}

}  // namespace scatterkit::cli
