#pragma once

#include "ffavg/averaging.hpp"
#include "ffavg/charsum.hpp"
#include "ffavg/exponents.hpp"
#include "ffavg/fourier.hpp"
#include "ffavg/geometry.hpp"
#include "ffavg/variety.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace ffavg {

using Json = nlohmann::ordered_json;

// Bumped whenever a report's field set changes.
inline constexpr int schema_version = 1;

// Shortest decimal that round-trips, so CSV bytes depend only on the value.
inline std::string
format_double(double v)
{
  char buf[32];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) {
      break;
    }
  }
  return buf;
}

// ---- variety ------------------------------------------------------------

inline Json
to_json(const DiagonalSystem& sys)
{
  Json eqs = Json::array();
  for (const auto& eq : sys.equations()) {
    Json terms = Json::array();
    for (const auto& t : eq.terms) {
      terms.push_back({ { "c", t.coefficient }, { "var", t.var }, { "exp", t.exponent } });
    }
    eqs.push_back(std::move(terms));
  }
  Json j = { { "d", sys.d() }, { "equations", std::move(eqs) } };
  if (sys.pivots()) {
    j["pivots"] = *sys.pivots();
  }
  if (!sys.label().empty()) {
    j["label"] = sys.label();
  }
  return j;
}

// "pivots" and "label" are optional; pivots are inferred when absent.
inline DiagonalSystem
system_from_json(const Json& j)
{
  if (!j.is_object() || !j.contains("d") || !j.contains("equations")) {
    throw std::invalid_argument("variety JSON: expected an object with \"d\" and \"equations\"");
  }
  const auto d = j.at("d").get<std::int64_t>();
  if (d < 1 || d > 64) {
    throw std::invalid_argument("variety JSON: \"d\" out of range");
  }
  std::vector<DiagonalEquation> eqs;
  for (const auto& je : j.at("equations")) {
    DiagonalEquation eq;
    for (const auto& jt : je) {
      const auto var = jt.at("var").get<std::int64_t>();
      const auto exp = jt.at("exp").get<std::int64_t>();
      if (var < 0 || exp < 0) {
        throw std::invalid_argument("variety JSON: negative variable index or exponent");
      }
      eq.terms.push_back({ jt.at("c").get<std::int64_t>(), static_cast<std::uint32_t>(var),
                           static_cast<std::uint32_t>(exp) });
    }
    eqs.push_back(std::move(eq));
  }
  std::optional<std::vector<std::uint32_t>> pivots;
  if (j.contains("pivots")) {
    pivots = j.at("pivots").get<std::vector<std::uint32_t>>();
  } else {
    pivots = infer_pivots(static_cast<std::uint32_t>(d), eqs);
  }
  return { static_cast<std::uint32_t>(d), std::move(eqs), std::move(pivots), j.value("label", std::string{}) };
}

// ---- exponents ----------------------------------------------------------

inline Json
rational_json(const Rational& r)
{
  return Json::array({ boost::multiprecision::numerator(r).convert_to<std::int64_t>(),
                       boost::multiprecision::denominator(r).convert_to<std::int64_t>() });
}

inline Rational
rational_from_json(const Json& j)
{
  if (j.is_string()) {
    return parse_rational(j.get<std::string>());
  }
  if (j.is_number_integer()) {
    return make_rational(j.get<std::int64_t>());
  }
  if (j.is_array() && j.size() == 2) {
    return make_rational(j[0].get<std::int64_t>(), j[1].get<std::int64_t>());
  }
  throw std::invalid_argument("rational JSON: expected [num, den], an integer, or \"a/b\"");
}

inline Json
to_json(const ExponentRegion& r)
{
  Json verts = Json::array();
  for (const auto& v : r.vertices()) {
    verts.push_back(Json::array({ rational_json(v.x), rational_json(v.y) }));
  }
  return { { "label", r.label() }, { "vertices", std::move(verts) } };
}

inline ExponentRegion
region_from_json(const Json& j)
{
  std::vector<ExponentPoint> pts;
  for (const auto& v : j.at("vertices")) {
    pts.emplace_back(rational_from_json(v.at(0)), rational_from_json(v.at(1)));
  }
  return hull(std::move(pts), j.value("label", std::string{}));
}

// ---- fourier ------------------------------------------------------------

inline Json
to_json(const DecayFit& fit)
{
  Json points = Json::array();
  for (std::size_t i = 0; i < fit.samples.size(); ++i) {
    const auto& s = fit.samples[i];
    points.push_back({ { "p", s.p },
                       { "max", s.max },
                       { "p_times_max", s.p * s.max },
                       { "argmax", s.argmax },
                       { "residual", i < fit.residuals.size() ? fit.residuals[i] : 0.0 } });
  }
  return { { "theta_hat", fit.theta_hat }, { "c_hat", fit.c_hat }, { "points", std::move(points) } };
}

inline void
write_spectrum_csv(std::ostream& out, const Spectrum& s)
{
  for (std::uint32_t c = 0; c < s.d(); ++c) {
    out << "m" << c << ",";
  }
  out << "re,im\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (auto c : s.coords(i)) {
      out << c << ",";
    }
    out << format_double(s[i].real()) << "," << format_double(s[i].imag()) << "\n";
  }
}

// ---- geometry -----------------------------------------------------------

inline Json
to_json(const SmoothnessReport& r)
{
  return { { "d", r.d },
           { "k", r.k },
           { "p", r.p },
           { "scanned", r.scanned },
           { "singular", r.singular },
           { "rank_mismatches", r.rank_mismatches },
           { "verdict", r.verdict() },
           { "caveat", smoothness_caveat } };
}

inline Json
to_json(const WitnessReport& w)
{
  Json j = { { "d", w.d },
             { "k", w.k },
             { "p", w.p },
             { "found", w.found },
             { "verified", w.verified() } };
  if (w.found) {
    j["point"] = w.point;
    j["on_variety"] = w.on_variety;
    j["jacobian_rank"] = w.jacobian_rank;
    j["reduced_rank"] = w.reduced_rank;
    j["required_rank"] = w.required_rank;
  } else {
    j["missing_roots"] = w.missing_roots;
  }
  return j;
}

inline Json
to_json(const HyperplaneReport& h)
{
  Json j = { { "d", h.d },
             { "p", h.p },
             { "span_rank", h.span_rank },
             { "points_used", h.points_used },
             { "rank_trace", h.rank_trace },
             { "matrix_built", h.matrix_built } };
  if (h.matrix_built) {
    j["matrix"] = h.matrix;
    j["matrix_rows_on_variety"] = h.matrix_rows_on_variety;
    j["matrix_rank"] = h.matrix_rank;
  } else {
    j["matrix_notice"] = h.matrix_notice;
  }
  j["ok"] = h.ok();
  return j;
}

inline Json
to_json(const LangWeilFit& f)
{
  Json samples = Json::array();
  for (const auto& s : f.samples) {
    samples.push_back({ { "p", s.p }, { "count", s.count }, { "ratio", s.ratio }, { "scaled_deviation", s.scaled } });
  }
  return { { "nu_hat", f.nu_hat }, { "dimension", f.dimension }, { "max_scaled", f.max_scaled },
           { "samples", std::move(samples) } };
}

// ---- charsum ------------------------------------------------------------

inline std::string
join(const std::vector<std::uint32_t>& v, char sep)
{
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) {
      s += sep;
    }
    s += std::to_string(v[i]);
  }
  return s;
}

inline void
write_weil_csv(std::ostream& out, const WeilReport& rep)
{
  out << "p,indices,abs_S,abs_S_over_sqrt_p,bound,pass\n";
  for (const auto& r : rep.rows) {
    out << r.p << "," << join(r.indices, ':') << "," << format_double(r.modulus) << ","
        << format_double(r.normalized) << "," << format_double(r.bound) << "," << (r.pass ? 1 : 0) << "\n";
  }
}

inline Json
to_json(const DecompositionReport& r)
{
  return { { "k", r.k },
           { "n", r.n },
           { "p", r.p },
           { "direct", r.direct },
           { "expansion_re", r.expansion.real() },
           { "expansion_im", r.expansion.imag() },
           { "main_term", r.main_term },
           { "remainder", r.remainder },
           { "agree", r.agree },
           { "ratio_deviation", r.ratio_deviation },
           { "bad_size", r.bad_size },
           { "bad_bound", r.bad_bound },
           { "inner_checked", r.inner_checked },
           { "inner_violations", r.inner_violations },
           { "inner_max_normalized", r.inner_max_normalized },
           { "ok", r.ok() } };
}

// ---- averaging ----------------------------------------------------------

inline void
write_probe_csv(std::ostream& out, const std::vector<ProbeResult>& rows)
{
  out << "p,test,inv_p,inv_r,ratio\n";
  for (const auto& r : rows) {
    out << r.p << "," << r.test << "," << to_string(r.inv_p) << "," << to_string(r.inv_r) << ","
        << format_double(r.ratio) << "\n";
  }
}

inline Json
to_json(const SweepResult& s)
{
  Json rows = Json::array();
  for (const auto& r : s.rows) {
    rows.push_back({ { "p", r.p }, { "max_ratio", r.max_ratio }, { "argmax_test", r.argmax_test } });
  }
  return { { "inv_p", to_string(s.vertex.x) },
           { "inv_r", to_string(s.vertex.y) },
           { "slope", s.slope },
           { "intercept", s.intercept },
           { "threshold", growth_slope_threshold },
           { "flagged", s.flagged },
           { "rows", std::move(rows) } };
}

inline Json
to_json(const KDecompositionReport& r)
{
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({ { "label", row.label },
                     { "plancherel_error", row.plancherel_error },
                     { "convolution_error", row.convolution_error },
                     { "l2_observed", row.l2_observed },
                     { "l2_bound", row.l2_bound },
                     { "sup_observed", row.sup_observed },
                     { "sup_bound", row.sup_bound },
                     { "ok", row.ok() } });
  }
  return { { "p", r.p },
           { "d", r.d },
           { "s", r.s },
           { "theta", r.theta },
           { "c_hat", r.c_hat },
           { "k_hat_sup", r.k_hat_sup },
           { "k_hat_scaled", r.k_hat_scaled },
           { "k_hat_formula_error", r.k_hat_formula_error },
           { "ok", r.ok() },
           { "rows", std::move(rows) } };
}

// Pretty JSON with a trailing newline; key order is insertion order.
inline std::string
dump(const Json& j)
{
  return j.dump(2) + "\n";
}

} // namespace ffavg
