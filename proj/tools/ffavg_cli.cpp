// Batch driver: one subcommand per verification, CSV/JSON/SVG outputs.
// Exit status: 0 all checks pass, 1 a check flagged a failure, 2 usage error.

#include "ffavg/ffavg.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace ffavg;

namespace {

struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct Options
{
  std::string variety = "hk";
  std::uint32_t d = 3;
  std::uint32_t k = 2;
  std::uint32_t n = 1;
  std::string primes;
  std::uint32_t modulus = 0;
  std::uint32_t residue = 1;
  std::uint64_t budget = default_enumeration_budget;
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  std::string out;

  // subcommand-specific
  bool oracle = false;
  std::string dump;
  double bound = 0.0;
  std::string theta_range;
  std::uint32_t lo = 5;
  std::uint32_t hi = 500;
  std::vector<unsigned> degrees{ 2, 3 };
  unsigned nj = 0;
  unsigned s = 0;
  bool decompose = false;
  std::string figure;
  std::string alpha;
  std::vector<std::string> points;
  std::string test = "delta";
  std::vector<std::string> tests{ "delta" };
  std::string invp;
  std::string invr;
  std::string vertex = "delta";
  std::string suite = "quick";
  std::vector<int> checks;
};

// ---- parsing helpers ----------------------------------------------------

std::uint32_t
parse_u32(const std::string& s)
{
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("expected a non-negative integer, got '" + s + "'");
  }
  if (pos != s.size() || v > 0xffffffffUL) {
    throw UsageError("expected a non-negative integer, got '" + s + "'");
  }
  return static_cast<std::uint32_t>(v);
}

struct PrimeSpec
{
  std::vector<std::uint32_t> primes;
  bool range = false;
};

// "lo:hi" (inclusive, primes only), "a,b,c", or a single prime; optional p = residue mod modulus.
PrimeSpec
parse_primes(const Options& o)
{
  if (o.primes.empty()) {
    throw UsageError("--primes is required (e.g. 5:101 or 7,11,13)");
  }
  PrimeSpec spec;
  const auto colon = o.primes.find(':');
  if (colon != std::string::npos) {
    const auto lo = parse_u32(o.primes.substr(0, colon));
    const auto hi = parse_u32(o.primes.substr(colon + 1));
    if (lo > hi) {
      throw UsageError("empty prime range " + o.primes);
    }
    spec.range = true;
    spec.primes = primes_in_range(lo, hi, o.modulus, o.modulus ? o.residue % o.modulus : 0);
  } else {
    std::stringstream ss(o.primes);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto p = parse_u32(item);
      if (!is_prime(p)) {
        throw UsageError(std::to_string(p) + " is not prime");
      }
      if (o.modulus && p % o.modulus != o.residue % o.modulus) {
        throw UsageError(std::to_string(p) + " is not " + std::to_string(o.residue) + " mod " +
                         std::to_string(o.modulus));
      }
      spec.primes.push_back(p);
    }
  }
  if (spec.primes.empty()) {
    throw UsageError("no primes selected by --primes " + o.primes);
  }
  return spec;
}

// Ranges drop primes that fail the characteristic gate; explicit lists reject them.
std::vector<std::uint32_t>
gated_primes(const Options& o, const DiagonalSystem& sys)
{
  auto spec = parse_primes(o);
  std::vector<std::uint32_t> kept;
  for (auto p : spec.primes) {
    if (char_large_enough(p, sys)) {
      kept.push_back(p);
    } else if (!spec.range) {
      throw UsageError("p = " + std::to_string(p) + " fails the characteristic gate for " + sys.label());
    } else {
      std::cerr << "note: skipping p = " << p << " (characteristic gate)\n";
    }
  }
  if (kept.empty()) {
    throw UsageError("no prime in " + o.primes + " passes the characteristic gate");
  }
  return kept;
}

DiagonalSystem
load_variety(const Options& o)
{
  if (o.variety == "hk") {
    return build_hk(o.d, o.k);
  }
  if (o.variety == "vk") {
    return build_vk(o.d, o.k);
  }
  Json j;
  if (!o.variety.empty() && o.variety.front() == '{') {
    j = Json::parse(o.variety);
  } else {
    std::ifstream in(o.variety);
    if (!in) {
      throw UsageError("--variety must be hk, vk, inline JSON or a JSON file; cannot open '" + o.variety + "'");
    }
    j = Json::parse(in);
  }
  return system_from_json(j);
}

Rational
parse_fraction(const std::string& s, const char* flag)
{
  if (s.empty()) {
    throw UsageError(std::string(flag) + " is required");
  }
  return parse_rational(s);
}

ExponentPoint
parse_point(const std::string& s)
{
  const auto comma = s.find(',');
  if (comma == std::string::npos) {
    throw UsageError("expected a point as x,y with rational coordinates, got '" + s + "'");
  }
  return { parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1)) };
}

// ---- output ---------------------------------------------------------------

class Output
{
public:
  explicit Output(const std::string& path)
  {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) {
        throw UsageError("cannot open output file '" + path + "'");
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
  std::ofstream file_;
};

void
write_text(const std::string& path, const std::string& text)
{
  Output out(path);
  out.stream() << text;
}

Json
envelope(const std::string& command, Json body)
{
  Json j = { { "schema_version", schema_version }, { "command", command } };
  for (auto& [key, value] : body.items()) {
    j[key] = value;
  }
  return j;
}

// ---- subcommands ----------------------------------------------------------

int
cmd_count(const Options& o)
{
  const auto sys = load_variety(o);
  const auto primes = gated_primes(o, sys);
  const auto dim = sys.expected_dimension();
  std::vector<std::uint64_t> counts(primes.size());
  std::vector<char> agree(primes.size(), 1);
  parallel_for(primes.size(), o.jobs, [&](std::size_t i) {
    const auto f = make_field(primes[i]);
    const auto pts = enumerate(sys, f, o.budget);
    counts[i] = pts.size();
    if (o.oracle) {
      agree[i] = enumerate_bruteforce(sys, f, o.budget) == pts;
    }
  });
  Output out(o.out);
  out.stream() << "p,count,ratio" << (o.oracle ? ",oracle_agrees" : "") << "\n";
  int status = 0;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const double ratio = static_cast<double>(counts[i]) / std::pow(static_cast<double>(primes[i]), dim);
    out.stream() << primes[i] << "," << counts[i] << "," << format_double(ratio);
    if (o.oracle) {
      out.stream() << "," << (agree[i] ? 1 : 0);
      status = agree[i] ? status : 1;
    }
    out.stream() << "\n";
  }
  return status;
}

int
cmd_spectrum(const Options& o)
{
  const auto sys = load_variety(o);
  const auto primes = gated_primes(o, sys);
  if (!o.dump.empty() && primes.size() != 1) {
    throw UsageError("--dump needs exactly one prime");
  }
  Output out(o.out);
  out.stream() << "p,max,p_times_max,argmax\n";
  for (auto p : primes) {
    const auto s = spectrum_dft(enumerate(sys, make_field(p), o.budget), 5 * default_dft_budget, o.jobs);
    const auto mx = max_decay(s);
    out.stream() << p << "," << format_double(mx.value) << "," << format_double(p * mx.value) << ","
                 << join(mx.m, ':') << "\n";
    if (!o.dump.empty()) {
      Output dump(o.dump);
      write_spectrum_csv(dump.stream(), s);
    }
  }
  return 0;
}

std::pair<double, double>
parse_range(const std::string& s)
{
  const auto colon = s.find(':');
  if (colon == std::string::npos) {
    throw UsageError("expected lo:hi, got '" + s + "'");
  }
  try {
    return { std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1)) };
  } catch (const std::exception&) {
    throw UsageError("expected lo:hi, got '" + s + "'");
  }
}

int
cmd_decay_fit(const Options& o)
{
  const auto sys = load_variety(o);
  const auto primes = gated_primes(o, sys);
  const auto fit = fit_decay(sys, primes, 5 * default_dft_budget, o.jobs);
  Json body = to_json(fit);
  int status = 0;
  if (o.bound > 0.0) {
    bool ok = true;
    for (const auto& s : fit.samples) {
      ok = ok && s.p * s.max <= o.bound + 1e-9;
    }
    body["bound"] = o.bound;
    body["bound_ok"] = ok;
    status = ok ? status : 1;
  }
  if (!o.theta_range.empty()) {
    const auto [lo, hi] = parse_range(o.theta_range);
    const bool ok = fit.theta_hat >= lo && fit.theta_hat <= hi;
    body["theta_range"] = { lo, hi };
    body["theta_ok"] = ok;
    status = ok ? status : 1;
  }
  body["variety"] = sys.label();
  write_text(o.out, dump(envelope("decay-fit", body)));
  return status;
}

int
cmd_smooth(const Options& o)
{
  const auto sys = load_variety(o);
  const auto primes = gated_primes(o, sys);
  Json reports = Json::array();
  bool smooth = true;
  for (auto p : primes) {
    const auto rep = smoothness_scan(sys, make_field(p), o.budget, o.jobs);
    smooth = smooth && rep.smooth();
    reports.push_back(to_json(rep));
  }
  write_text(o.out, dump(envelope("smooth", { { "reports", reports } })));
  return smooth ? 0 : 1;
}

int
cmd_witness(const Options& o)
{
  if (o.k < 2 || o.k + 4 > o.d) {
    throw UsageError("witness needs k >= 2 and d - k >= 4");
  }
  std::optional<WitnessReport> found;
  Json tried = Json::array();
  if (!o.primes.empty()) {
    for (auto p : gated_primes(o, build_hk(o.d, o.k))) {
      auto w = singular_witness(o.d, o.k, make_field(p));
      tried.push_back(p);
      if (w.verified()) {
        found = std::move(w);
        break;
      }
    }
  } else {
    found = witness_search(o.d, o.k, o.lo, o.hi);
  }
  Json body = { { "d", o.d }, { "k", o.k } };
  body["witness"] = found ? to_json(*found) : Json(nullptr);
  write_text(o.out, dump(envelope("witness", body)));
  return found && found->verified() ? 0 : 1;
}

int
cmd_hyperplane(const Options& o)
{
  const auto sys = load_variety(o);
  Json reports = Json::array();
  bool ok = true;
  for (auto p : gated_primes(o, sys)) {
    const auto rep = hyperplane_test(sys, make_field(p), o.budget);
    ok = ok && rep.ok();
    reports.push_back(to_json(rep));
  }
  write_text(o.out, dump(envelope("hyperplane", { { "variety", sys.label() }, { "reports", reports } })));
  return ok ? 0 : 1;
}

int
cmd_charsum(const Options& o)
{
  const auto spec = parse_primes(o);
  if (o.nj > 0) {
    Json rows = Json::array();
    bool ok = true;
    for (auto p : spec.primes) {
      for (unsigned j = 1; j <= o.nj; ++j) {
        const auto r = nj_orthogonality_check(make_field(p), j);
        ok = ok && r.ok;
        rows.push_back({ { "p", r.p }, { "j", r.j }, { "order", r.order }, { "max_error", r.max_error }, { "ok", r.ok } });
      }
    }
    write_text(o.out, dump(envelope("charsum", { { "nj_orthogonality", rows } })));
    return ok ? 0 : 1;
  }
  std::vector<std::uint32_t> primes;
  for (auto p : spec.primes) {
    if (char_large_enough(p, o.degrees)) {
      primes.push_back(p);
    } else if (!spec.range) {
      throw UsageError("p = " + std::to_string(p) + " fails the characteristic gate for these degrees");
    }
  }
  if (primes.empty()) {
    throw UsageError("no prime passes the characteristic gate for these degrees");
  }
  const auto rep = weil_verify(o.degrees, primes, o.jobs);
  Output out(o.out);
  write_weil_csv(out.stream(), rep);
  return rep.all_pass ? 0 : 1;
}

int
cmd_zsigmondy(const Options& o)
{
  if (o.s < 1) {
    throw UsageError("--s must be >= 1");
  }
  const auto spec = parse_primes(o);
  Output out(o.out);
  out.stream() << "p,s,factor\n";
  int status = 0;
  for (auto p : spec.primes) {
    if ((2ULL * o.s) % p == 0) {
      if (!spec.range) {
        throw UsageError("p = " + std::to_string(p) + " divides 2s");
      }
      continue;
    }
    const auto q = primitive_factor_check(p, o.s);
    out.stream() << p << "," << o.s << "," << (q ? q->to_string() : "none") << "\n";
    status = q ? status : 1;
  }
  return status;
}

int
cmd_nkn(const Options& o)
{
  const auto spec = parse_primes(o);
  if (o.decompose) {
    Json rows = Json::array();
    bool ok = true;
    for (auto p : spec.primes) {
      const auto rep = decomposition_check(o.k, o.n, make_field(p), o.budget);
      ok = ok && rep.ok();
      rows.push_back(to_json(rep));
    }
    write_text(o.out, dump(envelope("nkn", { { "decompositions", rows } })));
    return ok ? 0 : 1;
  }
  Output out(o.out);
  out.stream() << "p,k,n,via_roots,via_enumeration,ratio\n";
  int status = 0;
  for (auto p : spec.primes) {
    const auto c = count_Nkn(o.k, o.n, make_field(p), o.budget);
    out.stream() << p << "," << c.k << "," << c.n << "," << c.via_roots << ","
                 << (c.via_enumeration ? std::to_string(*c.via_enumeration) : "") << "," << format_double(c.ratio())
                 << "\n";
    status = c.agree() ? status : 1;
  }
  return status;
}

int
cmd_region(const Options& o)
{
  auto regions = figure_regions(o.d, o.k);
  if (!o.alpha.empty()) {
    regions.push_back(qr_region(o.d, o.k, parse_rational(o.alpha)));
  }
  Json jr = Json::array();
  for (const auto& r : regions) {
    jr.push_back(to_json(r));
  }
  Json body = { { "d", o.d }, { "k", o.k }, { "regions", jr } };
  if (!o.points.empty()) {
    Json members = Json::array();
    for (const auto& s : o.points) {
      const auto pt = parse_point(s);
      Json inside = Json::array();
      for (const auto& r : regions) {
        inside.push_back(contains(r, pt));
      }
      members.push_back({ { "point", pt.str() }, { "inside", inside } });
    }
    body["membership"] = members;
  }
  if (!o.figure.empty()) {
    write_text(o.figure,
               emit_svg(regions, "exponent regions for d=" + std::to_string(o.d) + ", k=" + std::to_string(o.k)));
  }
  write_text(o.out, dump(envelope("region", body)));
  return 0;
}

VarietyFamily
family_of(const Options& o)
{
  const auto sys = load_variety(o);
  const auto budget = o.budget;
  return [sys, budget](std::uint32_t p) { return enumerate(sys, make_field(p), budget); };
}

ProbeOptions
probe_options(const Options& o)
{
  ProbeOptions opt;
  opt.seed = o.seed;
  opt.jobs = o.jobs;
  return opt;
}

int
cmd_probe(const Options& o)
{
  const auto sys = load_variety(o);
  const auto primes = gated_primes(o, sys);
  const ExponentPoint pt{ parse_fraction(o.invp, "--invp"), parse_fraction(o.invr, "--invr") };
  const std::vector<TestFunction> tests{ parse_test_function(o.test) };
  auto opt = probe_options(o);
  if (tests.front() == TestFunction::subspace_indicator) {
    throw UsageError("use the sweep subcommand for subspace probes");
  }
  std::vector<ProbeResult> rows;
  if (primes.size() >= 3) {
    const auto sweep = endpoint_sweep(family_of(o), pt, primes, tests, opt);
    for (const auto& r : sweep.rows) {
      rows.insert(rows.end(), r.probes.begin(), r.probes.end());
    }
    Output out(o.out);
    write_probe_csv(out.stream(), rows);
    std::cerr << "slope=" << format_double(sweep.slope) << " flagged=" << (sweep.flagged ? "yes" : "no") << "\n";
    return sweep.flagged ? 1 : 0;
  }
  for (auto p : primes) {
    rows.push_back(probe(tests.front(), enumerate(sys, make_field(p), o.budget), pt.x, pt.y, opt));
  }
  Output out(o.out);
  write_probe_csv(out.stream(), rows);
  return 0;
}

int
cmd_sweep(const Options& o)
{
  const auto sys = load_variety(o);
  const auto primes = gated_primes(o, sys);
  ExponentPoint vertex;
  if (o.vertex == "delta") {
    vertex = delta_vertex(sys.d(), sys.expected_dimension());
  } else if (o.vertex == "smooth") {
    vertex = smooth_vertex(sys.d(), sys.expected_dimension());
  } else {
    vertex = parse_point(o.vertex);
  }
  std::vector<TestFunction> tests;
  for (const auto& t : o.tests) {
    tests.push_back(parse_test_function(t));
  }
  auto opt = probe_options(o);
  if (std::find(tests.begin(), tests.end(), TestFunction::subspace_indicator) != tests.end()) {
    // One basis for the whole sweep: the first line found at the smallest prime.
    const auto found = subspace_search(sys, make_field(primes.front()), 1);
    if (found.bases.empty()) {
      throw UsageError("no line through the origin lies on the variety at p = " + std::to_string(primes.front()));
    }
    opt.subspace_basis = found.bases.front();
  }
  const auto sweep = endpoint_sweep(family_of(o), vertex, primes, tests, opt);
  Json body = to_json(sweep);
  body["variety"] = sys.label();
  body["delta_exponent"] = to_string(delta_ratio_exponent(sys.d(), sys.expected_dimension(), vertex));
  write_text(o.out, dump(envelope("sweep", body)));
  return sweep.flagged ? 1 : 0;
}

int
cmd_report(const Options& o)
{
  SuiteConfig cfg;
  cfg.name = o.suite;
  cfg.seed = o.seed;
  cfg.jobs = o.jobs;
  const auto report = run_suite(cfg, o.checks);
  write_text(o.out, dump(report));
  for (const auto& c : report["checks"]) {
    std::cerr << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["id"].get<int>() << " "
              << c["title"].get<std::string>() << ": " << c["summary"].get<std::string>() << "\n";
  }
  return report["verdict"] == "pass" ? 0 : 1;
}

// ---- config file ------------------------------------------------------------

// JSON config values become command-line tokens placed before the user's own
// flags; CLI11 keeps the last value for single-valued options, so flags win.
std::vector<std::string>
expand_config(std::vector<std::string> args)
{
  auto it = std::find(args.begin(), args.end(), "--config");
  if (it == args.end()) {
    return args;
  }
  if (it + 1 == args.end()) {
    throw UsageError("--config needs a file name");
  }
  const std::string path = *(it + 1);
  args.erase(it, it + 2);
  std::ifstream in(path);
  if (!in) {
    throw UsageError("cannot open config file '" + path + "'");
  }
  Json cfg;
  try {
    cfg = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!cfg.is_object()) {
    throw UsageError("config file must hold a JSON object");
  }
  std::vector<std::string> injected;
  for (auto& [key, value] : cfg.items()) {
    if (key == "subcommand") {
      continue;
    }
    const std::string flag = "--" + key;
    if (std::find(args.begin(), args.end(), flag) != args.end()) {
      continue;
    }
    if (value.is_boolean()) {
      if (value.get<bool>()) {
        injected.push_back(flag);
      }
      continue;
    }
    auto scalar = [](const Json& v) {
      if (v.is_string()) {
        return v.get<std::string>();
      }
      if (v.is_object()) {
        return v.dump();
      }
      return v.dump();
    };
    if (value.is_array()) {
      for (const auto& v : value) {
        injected.push_back(flag);
        injected.push_back(scalar(v));
      }
    } else {
      injected.push_back(flag);
      injected.push_back(scalar(value));
    }
  }
  // The subcommand is the first non-flag token after the program name.
  std::size_t at = 1;
  if (args.size() <= 1 || args[1].rfind('-', 0) == 0) {
    if (!cfg.contains("subcommand")) {
      throw UsageError("no subcommand given on the command line or in the config file");
    }
    args.insert(args.begin() + 1, cfg["subcommand"].get<std::string>());
  }
  at = 2;
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), injected.begin(), injected.end());
  return args;
}

void
add_common(CLI::App* sub, Options& o)
{
  sub->add_option("--out,-o", o.out, "Output file (default stdout)");
  sub->add_option("--jobs,-j", o.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  sub->add_option("--seed", o.seed, "Seed for randomized probes");
}

void
add_variety(CLI::App* sub, Options& o)
{
  sub->add_option("--variety", o.variety, "hk, vk, inline JSON, or a JSON file");
  sub->add_option("--d", o.d, "Ambient dimension")->check(CLI::Range(1u, 16u));
  sub->add_option("--k", o.k, "Family parameter")->check(CLI::Range(1u, 15u));
  sub->add_option("--budget", o.budget, "Enumeration budget (cells)")->check(CLI::PositiveNumber);
}

void
add_primes(CLI::App* sub, Options& o, bool required = true)
{
  auto* opt = sub->add_option("--primes", o.primes, "lo:hi or a,b,c");
  if (required) {
    opt->required();
  }
  sub->add_option("--mod", o.modulus, "Keep only p = res (mod this)");
  sub->add_option("--res", o.residue, "Residue for --mod (default 1)");
}

} // namespace

int
main(int argc, char** argv)
{
  Options o;
  CLI::App app{ "Finite-field averaging operators: point counts, spectra, exponent regions and probes" };
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::map<std::string, std::function<int(const Options&)>> handlers;
  auto sub = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    auto* s = app.add_subcommand(name, help);
    add_common(s, o);
    handlers[name] = fn;
    return s;
  };

  auto* count = sub("count", "Point counts |V| and |V|/p^dim per prime (CSV)", cmd_count);
  add_variety(count, o);
  add_primes(count, o);
  count->add_flag("--oracle", o.oracle, "Cross-check against brute force");

  auto* spectrum = sub("spectrum", "Max nonzero Fourier coefficient per prime (CSV)", cmd_spectrum);
  add_variety(spectrum, o);
  add_primes(spectrum, o);
  spectrum->add_option("--dump", o.dump, "Write the full spectrum CSV here (single prime)");

  auto* decay = sub("decay-fit", "Fit max |coef| ~ C p^{-theta/2} (JSON)", cmd_decay_fit);
  add_variety(decay, o);
  add_primes(decay, o);
  decay->add_option("--bound", o.bound, "Flag primes with p * max above this");
  decay->add_option("--theta-range", o.theta_range, "Flag theta_hat outside lo:hi");

  auto* smooth = sub("smooth", "Jacobian scan for singular F_p-points (JSON)", cmd_smooth);
  add_variety(smooth, o);
  add_primes(smooth, o);

  auto* witness = sub("witness", "Explicit singular point when d - k >= 4 (JSON)", cmd_witness);
  add_variety(witness, o);
  add_primes(witness, o, false);
  witness->add_option("--lo", o.lo, "Search from this prime");
  witness->add_option("--hi", o.hi, "Search up to this prime");

  auto* hyper = sub("hyperplane", "Span rank and explicit full-rank point matrix (JSON)", cmd_hyperplane);
  add_variety(hyper, o);
  add_primes(hyper, o);

  auto* charsum = sub("charsum", "Weil bound for products of shifted-monomial characters (CSV)", cmd_charsum);
  add_primes(charsum, o);
  charsum->add_option("--degrees", o.degrees, "Monomial degrees")->delimiter(',');
  charsum->add_option("--nj", o.nj, "Instead run the root-count orthogonality check for j = 1..NJ (JSON)");

  auto* zsig = sub("zsigmondy", "Primitive irreducible factor of t^s + 1 per prime (CSV)", cmd_zsigmondy);
  add_primes(zsig, o);
  zsig->add_option("--s", o.s, "Exponent s")->required();

  auto* nkn = sub("nkn", "Counts N(k,n) by root tables and enumeration (CSV)", cmd_nkn);
  add_primes(nkn, o);
  nkn->add_option("--k", o.k, "k >= 2");
  nkn->add_option("--n", o.n, "n >= 1");
  nkn->add_option("--budget", o.budget, "Enumeration budget (cells)")->check(CLI::PositiveNumber);
  nkn->add_flag("--decompose", o.decompose, "Character expansion and bad-set report (JSON)");

  auto* region = sub("region", "Exponent regions for (d, k) as JSON, optional SVG figure", cmd_region);
  region->add_option("--d", o.d, "Ambient dimension")->check(CLI::Range(2u, 64u));
  region->add_option("--k", o.k, "Family parameter")->check(CLI::Range(1u, 63u));
  region->add_option("--figure", o.figure, "Write an SVG figure here");
  region->add_option("--alpha", o.alpha, "Add the region cut by an alpha-dimensional subspace");
  region->add_option("--point", o.points, "Membership query x,y (repeatable)");

  auto* probe = sub("probe", "||f * dsigma||_r / ||f||_p per prime (CSV) with growth slope", cmd_probe);
  add_variety(probe, o);
  add_primes(probe, o);
  probe->add_option("--test", o.test, "delta, uniform, variety or random_sign");
  probe->add_option("--invp", o.invp, "1/p as a fraction")->required();
  probe->add_option("--invr", o.invr, "1/r as a fraction")->required();

  auto* sweep = sub("sweep", "Max probe ratio over test functions at a vertex (JSON)", cmd_sweep);
  add_variety(sweep, o);
  add_primes(sweep, o);
  sweep->add_option("--vertex", o.vertex, "delta, smooth, or x,y");
  sweep->add_option("--tests", o.tests, "Test functions")->delimiter(',');

  auto* report = sub("report", "Run a named verification suite (JSON verdict)", cmd_report);
  report->add_option("--suite", o.suite, "quick or full")->check(CLI::IsMember({ "quick", "full" }));
  report->add_option("--checks", o.checks, "Restrict to these check ids")->delimiter(',');

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = expand_config(std::move(args));
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    app.parse(std::move(rev));
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const auto chosen = app.get_subcommands().front()->get_name();
  try {
    return handlers.at(chosen)(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << " (raise --budget)\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
