#include "gapasym/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gapasym/asym.hpp"
#include "gapasym/errors.hpp"
#include "gapasym/exact.hpp"
#include "gapasym/model.hpp"
#include "gapasym/verify.hpp"

namespace gapasym::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string b;
  double alpha = 0.0;
  std::string radii;
  std::string n;
  std::int64_t samples = 0;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string output;
  std::optional<unsigned> threads;
  std::optional<double> target_rel;
  std::optional<double> target_abs;
  std::optional<int> max_terms;
  std::optional<int> quadrature_nodes;
  std::string g_route = "auto";
  bool no_fluctuation = false;
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(s);
  std::string item;
  while (std::getline(stream, item, sep)) parts.push_back(trim(item));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

template <class T>
T parse_number(const std::string& text, const char* what) {
  T value{};
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ValidationError(std::string("cannot parse ") + what + " '" + text + "'");
  }
  return value;
}

double parse_real(const std::string& text, const char* what) {
  const std::string t = trim(text);
  if (t == "inf" || t == "+inf" || t == "infinity" || t == "Infinity") {
    return std::numeric_limits<double>::infinity();
  }
  return parse_number<double>(t, what);
}

ModelParams parse_params(const Options& opt) {
  if (opt.b.empty()) throw ValidationError("--b is required");
  const auto slash = opt.b.find('/');
  if (slash != std::string::npos) {
    const auto n1 = parse_number<std::int64_t>(trim(opt.b.substr(0, slash)), "--b numerator");
    const auto n2 = parse_number<std::int64_t>(trim(opt.b.substr(slash + 1)), "--b denominator");
    return ModelParams::from_rational(n1, n2, opt.alpha);
  }
  const double b = parse_real(opt.b, "--b");
  if (!std::isfinite(b)) throw DomainError("b must be finite");
  return ModelParams(b, opt.alpha);
}

std::vector<double> parse_radii(const Options& opt) {
  if (opt.radii.empty()) throw ValidationError("--radii is required");
  std::vector<double> radii;
  for (const auto& part : split(opt.radii, ',')) radii.push_back(parse_real(part, "radius"));
  return radii;
}

// "64,128,256", "1:200" or "1:200:5".
std::vector<int> parse_n(const std::string& text) {
  std::vector<int> values;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() < 2 || parts.size() > 3) throw ValidationError("--n range must be a:b or a:b:step");
    const int lo = parse_number<int>(parts[0], "--n start");
    const int hi = parse_number<int>(parts[1], "--n stop");
    const int step = parts.size() == 3 ? parse_number<int>(parts[2], "--n step") : 1;
    if (step < 1 || hi < lo) throw ValidationError("--n range must be increasing with step >= 1");
    for (int v = lo; v <= hi; v += step) values.push_back(v);
  } else {
    for (const auto& part : split(text, ',')) values.push_back(parse_number<int>(part, "--n"));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 1) throw DomainError("n must be at least 1");
    if (i > 0 && values[i] <= values[i - 1]) throw ValidationError("--n values must be increasing");
  }
  if (values.empty()) throw ValidationError("--n is empty");
  return values;
}

PrecisionPolicy parse_policy(const Options& opt) {
  PrecisionPolicy policy;
  if (opt.target_rel) policy.target_rel = *opt.target_rel;
  if (opt.target_abs) policy.target_abs = *opt.target_abs;
  if (opt.max_terms) policy.max_terms = *opt.max_terms;
  if (opt.quadrature_nodes) policy.quadrature_nodes = *opt.quadrature_nodes;
  policy.validate();
  return policy;
}

GRoute parse_g_route(const std::string& text) {
  if (text == "auto") return GRoute::kAuto;
  if (text == "limit") return GRoute::kLimit;
  if (text == "closed-form" || text == "closed") return GRoute::kClosedForm;
  throw ValidationError("--g-route must be auto, limit or closed-form");
}

unsigned resolve_threads(const Options& opt) {
  if (opt.threads) return std::max(1u, *opt.threads);
  if (const char* env = std::getenv("GAPASYM_THREADS")) {
    return std::max(1u, parse_number<unsigned>(trim(env), "GAPASYM_THREADS"));
  }
  return 1;
}

Json number(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::string csv_number(double x) {
  if (std::isnan(x)) return "";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json params_json(const ModelParams& params) {
  Json j;
  j["b"] = params.b();
  j["alpha"] = params.alpha();
  if (const auto& r = params.b_rational()) j["b_rational"] = {r->num, r->den};
  return j;
}

Json gap_json(const std::vector<double>& radii, const ModelParams& params) {
  Json j;
  Json list = Json::array();
  for (double r : radii) list.push_back(number(r));
  j["radii"] = list;
  try {
    j["case"] = std::string(to_string(classify(GapConfig(radii), params)));
  } catch (const ValidationError&) {
    j["case"] = nullptr;  // outside the asymptotic regimes; exact values still make sense
  }
  return j;
}

Json routes_json(const RouteCounts& routes) {
  return Json{{"p_diff", routes.p_diff}, {"q_diff", routes.q_diff}, {"quadrature", routes.quadrature}};
}

Json coefficients_json(const ExpansionCoefficients& c) {
  Json j;
  j["case"] = std::string(to_string(c.case_tag));
  j["c1"] = c.c1;
  j["c2"] = c.c2;
  j["c3"] = c.c3;
  j["c4"] = c.c4;
  j["c5"] = c.c5;
  j["c6"] = c.c6;
  Json terms = Json::array();
  for (const auto& t : c.theta_terms) {
    terms.push_back({{"t2k", t.t2k}, {"offset", t.offset}, {"tau_im", t.tau_im}});
  }
  j["theta_terms"] = terms;
  return j;
}

struct Report {
  Json result = Json::object();
  Json routes = Json::object();
  Json warnings = Json::array();
  std::string csv;
};

constexpr const char* kCsvHeader = "n,exact,predicted,residual,fluctuation\n";

std::string csv_row(int n, double exact, double predicted, double residual, double fluct) {
  return std::to_string(n) + "," + csv_number(exact) + "," + csv_number(predicted) + "," +
         csv_number(residual) + "," + csv_number(fluct) + "\n";
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Report cmd_exact(const ModelParams& params, const std::vector<double>& radii, const Options& opt) {
  const auto ns = parse_n(opt.n);
  const auto policy = parse_policy(opt);
  const GapConfig gap(radii);
  Report rep;
  RouteCounts total;
  int flagged = 0;
  Json rows = Json::array();
  rep.csv = kCsvHeader;
  ExactOptions eo;
  eo.threads = resolve_threads(opt);
  for (int n : ns) {
    const auto r = exact_log_gap_probability(params, n, gap, policy, eo);
    total.p_diff += r.routes_used.p_diff;
    total.q_diff += r.routes_used.q_diff;
    total.quadrature += r.routes_used.quadrature;
    flagged += r.flagged_masses;
    rows.push_back({{"n", n},
                    {"exact_log_pn", number(r.log_pn)},
                    {"log_partition", exact_log_partition(params, n)}});
    rep.csv += csv_row(n, r.log_pn, kNaN, kNaN, kNaN);
  }
  if (ns.size() == 1) {
    rep.result = rows[0];
  } else {
    rep.result["rows"] = rows;
  }
  rep.routes = routes_json(total);
  if (flagged > 0) {
    rep.warnings.push_back(std::to_string(flagged) + " interval masses exceeded the target accuracy");
  }
  return rep;
}

Report cmd_constants(const ModelParams& params, const std::vector<double>& radii,
                     const Options& opt) {
  const GapConfig gap(radii);
  const auto route = parse_g_route(opt.g_route);
  const auto coeffs = expansion_coefficients(params, gap, route);
  Report rep;
  rep.result = coefficients_json(coeffs);
  const auto ints = erfc_integral_constants();
  rep.result["erfc_integrals"] = {{"i_minus", ints.i_minus},
                                  {"i_plus", ints.i_plus},
                                  {"j_minus", ints.j_minus},
                                  {"j_plus", ints.j_plus},
                                  {"est_abs_err", ints.est_abs_err}};
  if (coeffs.case_tag == CaseTag::kDisk || coeffs.case_tag == CaseTag::kDiskUnbounded) {
    rep.result["g_const"] = g_const(params, route);
  }
  return rep;
}

Report cmd_predict(const ModelParams& params, const std::vector<double>& radii, const Options& opt) {
  const auto ns = parse_n(opt.n);
  const auto coeffs = expansion_coefficients(params, GapConfig(radii), parse_g_route(opt.g_route));
  Report rep;
  Json rows = Json::array();
  rep.csv = kCsvHeader;
  for (int n : ns) {
    const double f = fluctuation(coeffs, n);
    const double p = predicted_log_gap_probability(coeffs, n, false) + (opt.no_fluctuation ? 0.0 : f);
    rows.push_back({{"n", n}, {"predicted", p}, {"fluctuation", f}});
    rep.csv += csv_row(n, kNaN, p, kNaN, f);
  }
  rep.result["coefficients"] = coefficients_json(coeffs);
  rep.result["include_fluctuation"] = !opt.no_fluctuation;
  rep.result["rows"] = rows;
  return rep;
}

Report cmd_verify(const ModelParams& params, const std::vector<double>& radii, const Options& opt) {
  LadderOptions lo;
  lo.include_fluctuation = !opt.no_fluctuation;
  lo.threads = resolve_threads(opt);
  lo.g_route = parse_g_route(opt.g_route);
  lo.policy = parse_policy(opt);
  const auto report = convergence_ladder(params, GapConfig(radii), parse_n(opt.n), lo);
  Report rep;
  Json rows = Json::array();
  rep.csv = kCsvHeader;
  for (const auto& row : report.rows) {
    Json r{{"n", row.n},
           {"exact", number(row.exact)},
           {"predicted", number(row.predicted)},
           {"residual", number(row.residual)},
           {"fluctuation", number(row.fluctuation)},
           {"excluded_from_fit", row.excluded}};
    if (row.error) {
      r["error"] = *row.error;
      rep.warnings.push_back("n = " + std::to_string(row.n) + ": " + *row.error);
    }
    rows.push_back(r);
    rep.csv += csv_row(row.n, row.exact, row.predicted, row.residual, row.fluctuation);
  }
  const auto& s = report.summary;
  rep.result["include_fluctuation"] = lo.include_fluctuation;
  rep.result["rows"] = rows;
  rep.result["summary"] = {{"max_abs_residual", number(s.max_abs_residual)},
                           {"median_early", number(s.median_early)},
                           {"median_late", number(s.median_late)},
                           {"fitted_slope", number(s.fitted_slope)},
                           {"fitted_slope_stderr", number(s.fitted_slope_stderr)},
                           {"slope_flagged", s.slope_flagged},
                           {"failed_rows", s.failed_rows}};
  if (s.slope_flagged) rep.warnings.push_back("slope fit had fewer than two usable rows");
  rep.warnings.push_back("residual bounds are empirical; the error term has no explicit constant");
  return rep;
}

Report cmd_trace(const ModelParams& params, const std::vector<double>& radii, const Options& opt) {
  const auto coeffs = expansion_coefficients(params, GapConfig(radii), parse_g_route(opt.g_route));
  const auto trace = fluctuation_trace(coeffs, parse_n(opt.n.empty() ? "1:200" : opt.n));
  Report rep;
  Json rows = Json::array();
  rep.csv = kCsvHeader;
  for (const auto& p : trace.points) {
    rows.push_back({{"n", p.n}, {"fluctuation", p.value}});
    rep.csv += csv_row(p.n, kNaN, kNaN, kNaN, p.value);
  }
  rep.result["rows"] = rows;
  rep.result["min"] = trace.min;
  rep.result["max"] = trace.max;
  return rep;
}

Report cmd_mc(const ModelParams& params, const std::vector<double>& radii, const Options& opt) {
  if (opt.samples < 1 || !opt.seed) throw ValidationError("mc requires --samples >= 1 and --seed");
  const auto ns = parse_n(opt.n);
  if (ns.size() != 1) throw ValidationError("mc takes a single --n");
  const GapConfig gap(radii);
  const auto est = mc_gap_probability(params, ns[0], gap, opt.samples, *opt.seed, resolve_threads(opt));
  const auto exact = exact_log_gap_probability(params, ns[0], gap);
  Report rep;
  rep.result = {{"n", ns[0]},
                {"estimate", est.estimate},
                {"std_err", est.std_err},
                {"samples", est.samples},
                {"seed", *opt.seed},
                {"insufficient_samples", est.insufficient_samples},
                {"analytic", est.analytic},
                {"exact", std::exp(exact.log_pn)},
                {"exact_log_pn", number(exact.log_pn)}};
  if (est.analytic) rep.warnings.push_back("probability below 1e-4: exact value returned, no sampling");
  if (est.insufficient_samples) rep.warnings.push_back("no sampled configuration avoided the hole");
  return rep;
}

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("--b", opt.b, "exponent b, decimal or n1/n2");
  sub->add_option("--alpha", opt.alpha, "charge alpha > -1");
  sub->add_option("--radii", opt.radii, "comma separated radii; 'inf' allowed last");
  sub->add_option("--n", opt.n, "n, a list a,b,c or a range a:b[:step]");
  sub->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--output", opt.output, "write the report to this file");
  sub->add_option("--threads", opt.threads, "worker threads (default GAPASYM_THREADS or 1)");
  sub->add_option("--target-rel", opt.target_rel, "relative tolerance");
  sub->add_option("--target-abs", opt.target_abs, "absolute tolerance");
  sub->add_option("--max-terms", opt.max_terms, "series term cap");
  sub->add_option("--quadrature-nodes", opt.quadrature_nodes, "initial Gauss-Legendre nodes");
  sub->add_option("--g-route", opt.g_route, "auto, limit or closed-form");
  sub->add_flag("--no-fluctuation", opt.no_fluctuation, "drop the theta term from predictions");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gap probabilities of the Mittag-Leffler ensemble", "gapasym"};
  app.require_subcommand(1);
  Options opt;
  auto* exact = app.add_subcommand("exact", "exact log P_n");
  auto* constants = app.add_subcommand("constants", "expansion constants C1..C6");
  auto* predict = app.add_subcommand("predict", "asymptotic log P_n");
  auto* verify = app.add_subcommand("verify", "exact vs asymptotic ladder");
  auto* trace = app.add_subcommand("trace", "fluctuation term over n");
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of P_n");
  for (auto* sub : {exact, constants, predict, verify, trace, mc}) add_common(sub, opt);
  mc->add_option("--samples", opt.samples, "number of sampled configurations");
  mc->add_option("--seed", opt.seed, "random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    const auto params = parse_params(opt);
    const auto radii = parse_radii(opt);
    const bool csv = opt.format == "csv";
    const bool needs_n = exact->parsed() || predict->parsed() || verify->parsed() || mc->parsed();
    if (needs_n && opt.n.empty()) throw ValidationError("--n is required");
    if (csv && (constants->parsed() || mc->parsed())) {
      throw ValidationError("csv output is available for exact, predict, verify and trace");
    }

    Report rep;
    std::string command;
    if (exact->parsed()) {
      command = "exact";
      rep = cmd_exact(params, radii, opt);
    } else if (constants->parsed()) {
      command = "constants";
      rep = cmd_constants(params, radii, opt);
    } else if (predict->parsed()) {
      command = "predict";
      rep = cmd_predict(params, radii, opt);
    } else if (verify->parsed()) {
      command = "verify";
      rep = cmd_verify(params, radii, opt);
    } else if (trace->parsed()) {
      command = "trace";
      rep = cmd_trace(params, radii, opt);
    } else {
      command = "mc";
      rep = cmd_mc(params, radii, opt);
    }

    std::string text;
    if (csv) {
      text = rep.csv;
    } else {
      Json doc;
      doc["schema_version"] = kSchemaVersion;
      doc["command"] = command;
      doc["params"] = params_json(params);
      doc["gap"] = gap_json(radii, params);
      doc["result"] = rep.result;
      doc["diagnostics"] = {{"routes_used", rep.routes}, {"warnings", rep.warnings}};
      text = doc.dump(2) + "\n";
    }
    if (opt.output.empty()) {
      out << text;
    } else {
      std::ofstream file(opt.output);
      if (!file) throw ValidationError("cannot open output file " + opt.output);
      file << text;
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConvergence;
  }
}

}  // namespace gapasym::cli
