#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "bmcycles/suites.hpp"

namespace bmc::cli {

using json = nlohmann::json;

struct Options {
  std::optional<std::uint64_t> seed;
  bool override_bounds = false;
};

// ---------------------------------------------------------------------------
// Schema helpers

[[noreturn]] inline void schema_error(const std::string& what) { fail(ErrorKind::SchemaError, what); }

inline void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) schema_error(where + " must be an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) schema_error("unknown key '" + k + "' in " + where);
}

inline const json& required(const json& obj, const std::string& key) {
  if (!obj.contains(key)) schema_error("missing key '" + key + "'");
  return obj.at(key);
}

inline long as_long(const json& v, const std::string& what) {
  if (!v.is_number_integer()) schema_error(what + " must be an integer");
  return v.get<long>();
}

inline long get_long(const json& obj, const std::string& key, std::optional<long> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (!fallback) schema_error("missing key '" + key + "'");
    return *fallback;
  }
  return as_long(obj.at(key), "'" + key + "'");
}

inline bool get_bool(const json& obj, const std::string& key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) schema_error("'" + key + "' must be a boolean");
  return obj.at(key).get<bool>();
}

inline Weight as_weight(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) schema_error(what + " must be a nonempty integer array");
  Weight w;
  for (const auto& x : v) w.push_back(as_long(x, what));
  return w;
}

inline std::vector<Weight> as_weights(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) schema_error(what + " must be a nonempty array of weights");
  std::vector<Weight> out;
  for (const auto& x : v) out.push_back(as_weight(x, what));
  return out;
}

inline Multiplicities as_multiplicities(const json& v, const std::string& what) {
  if (!v.is_array()) schema_error(what + " must be an array of {lambda, m}");
  Multiplicities m;
  for (const auto& x : v) {
    check_keys(x, {"lambda", "m"}, what);
    m[as_weight(required(x, "lambda"), what + ".lambda")] += as_long(required(x, "m"), what + ".m");
  }
  return m;
}

inline json multiplicities_json(const Multiplicities& m) {
  json out = json::array();
  for (const auto& [w, c] : m) out.push_back({{"lambda", w}, {"m", integer_json(c)}});
  return out;
}

struct FieldConfig {
  long p = 0, e = 1, f = 1;
  std::vector<long> lifts;
};

inline FieldConfig parse_field(const json& cfg, bool need) {
  FieldConfig fc;
  if (!cfg.contains("field")) {
    if (need) schema_error("missing key 'field'");
    return fc;
  }
  const json& f = cfg.at("field");
  check_keys(f, {"p", "e", "f", "distinguished_lift"}, "field");
  fc.p = get_long(f, "p");
  fc.e = get_long(f, "e", 1);
  fc.f = get_long(f, "f", 1);
  if (f.contains("distinguished_lift")) fc.lifts = as_weight(f.at("distinguished_lift"), "distinguished_lift");
  return fc;
}

inline EmbeddingData embedding(const FieldConfig& fc) { return EmbeddingData(fc.p, fc.e, fc.f, fc.lifts); }

inline FpSeriesMatrix as_series_matrix(const json& v, const PrimeField& f, std::size_t precision,
                                       const std::string& what) {
  if (!v.is_array() || v.empty()) schema_error(what + " must be a nonempty array of rows");
  const std::size_t d = v.size();
  FpSeriesMatrix m(d, d, FpSeries::zero(f, precision));
  for (std::size_t i = 0; i < d; ++i) {
    if (!v[i].is_array() || v[i].size() != d) schema_error(what + " must be square");
    for (std::size_t j = 0; j < d; ++j) {
      const json& entry = v[i][j];
      if (!entry.is_array()) schema_error(what + " entries must be coefficient arrays");
      std::vector<std::uint64_t> c;
      for (const auto& x : entry) c.push_back(f.from_int(as_long(x, what)));
      if (c.size() > precision) schema_error(what + " entry has more coefficients than the precision");
      m(i, j) = FpSeries(f, c, precision);
    }
  }
  return m;
}

inline json series_matrix_json(const FpLaurentMatrix& x) {
  json rows = json::array();
  const auto& n = x.numerator();
  for (std::size_t i = 0; i < n.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n.cols(); ++j) {
      std::vector<std::uint64_t> c = n(i, j).coeffs();
      while (!c.empty() && c.back() == 0) c.pop_back();
      row.push_back(c);
    }
    rows.push_back(row);
  }
  return {{"entries", rows}, {"denominator_exponent", x.denom_exponent()}, {"precision", x.absolute_precision()}};
}

inline json local_element_json(const LocalFieldElement& x) {
  json coords = json::array();
  for (const auto& c : x.coords()) coords.push_back(integer_json(c));
  return {{"shift", x.shift()}, {"coords", coords}, {"precision", x.precision()}};
}

// ---------------------------------------------------------------------------
// Reports

class Report {
 public:
  Report(std::string task, json config) : task_(std::move(task)), config_(std::move(config)) {}

  void verdict(const std::string& name, const std::string& anchor, bool pass) {
    verdicts_.push_back({{"name", name}, {"anchor", anchor}, {"pass", pass}});
    all_ = all_ && pass;
  }
  json& results() { return results_; }
  bool pass() const { return all_; }

  json to_json() const {
    return {{"task", task_}, {"config", config_}, {"results", results_}, {"verdicts", verdicts_}, {"pass", all_}};
  }

 private:
  std::string task_;
  json config_;
  json results_ = json::object();
  json verdicts_ = json::array();
  bool all_ = true;
};

inline const std::set<std::string>& common_keys() {
  static const std::set<std::string> k{"task", "field", "seed", "override_bounds"};
  return k;
}

inline std::set<std::string> with_common(std::set<std::string> extra) {
  extra.insert(common_keys().begin(), common_keys().end());
  return extra;
}

inline json bound_json(const BoundReport& b) { return {{"pass", b.pass}, {"limit", b.limit}, {"sums", b.sums}}; }

inline void cmd_bm_identity(const json& cfg, bool override_bounds, Report& rep) {
  check_keys(cfg, with_common({"mu"}), "config");
  const HodgeType mu(embedding(parse_field(cfg, true)), as_weights(required(cfg, "mu"), "mu"));
  const BMIdentity id = bm_identity(mu, override_bounds);
  json terms = json::array();
  for (const auto& t : id.terms)
    terms.push_back({{"lambda", t.lambda}, {"multiplicity", integer_json(t.multiplicity)}, {"lift", t.lift.weights},
                     {"steinberg", t.steinberg}});
  auto& r = rep.results();
  r["terms"] = terms;
  r["shifted_sums"] = shifted_sums(mu);
  r["bound"] = bound_json(id.bound);
  r["natural_bound"] = bound_json(validate_hodge_bound(mu, BoundKind::natural));
  r["has_steinberg"] = id.has_steinberg;
  if (override_bounds) r["unsound_override"] = true;
  // Per residue embedding: the character product splits as the multiplicities say,
  // and the shifted dimension identity holds.
  const auto per = per_residue_multiplicities(mu);
  bool split = true, dims = true;
  for (long i = 0; i < mu.emb.f; ++i) {
    const auto over = mu.weights_over(i);
    Character ch = LaurentPoly::one(mu.rank());
    for (const auto& w : over) ch *= virtual_weyl_character(weight_sub(w, rho(mu.rank())));
    split = split && recompose(per[static_cast<std::size_t>(i)], mu.rank()) == ch;
    dims = dims && shifted_identity_check(over, per[static_cast<std::size_t>(i)], 8).pass;
  }
  rep.verdict("character-split", "bm-identity/character-decomposition", split);
  rep.verdict("shifted-dimension-identity", "bm-identity/dimension-count", dims);
  rep.verdict("sharper-bound", "bm-identity/gap-bound", id.bound.pass);
}

inline void cmd_decompose(const json& cfg, Report& rep) {
  check_keys(cfg, with_common({"weights", "shift"}), "config");
  const auto ws = as_weights(required(cfg, "weights"), "weights");
  std::string shift = "none";
  if (cfg.contains("shift")) {
    if (!cfg.at("shift").is_string()) schema_error("'shift' must be a string");
    shift = cfg.at("shift").get<std::string>();
    if (shift != "none" && shift != "minus_rho") schema_error("'shift' must be none or minus_rho");
  }
  const std::size_t d = ws[0].size();
  Character ch = LaurentPoly::one(d);
  Integer dim = 1;
  for (const auto& w : ws) {
    require(w.size() == d, ErrorKind::RankMismatch, "weights of different length");
    const Weight v = shift == "minus_rho" ? weight_sub(w, rho(d)) : w;
    ch *= virtual_weyl_character(v);
    dim *= weyl_dim(v);
  }
  const Multiplicities m = decompose(ch);
  Integer total = 0;
  for (const auto& [w, c] : m) total += c * weyl_dim(w);
  rep.results()["multiplicities"] = multiplicities_json(m);
  rep.results()["dimension"] = integer_json(dim);
  rep.verdict("recompose", "characters/decomposition-roundtrip", recompose(m, d) == ch);
  rep.verdict("dimension", "characters/weyl-dimension", total == dim);
}

inline void cmd_hilbert_defect(const json& cfg, Report& rep) {
  check_keys(cfg, with_common({"mu", "multiplicities", "overcount", "window", "shifted_max"}), "config");
  const auto mus = as_weights(required(cfg, "mu"), "mu");
  const std::size_t d = mus[0].size();
  Multiplicities mult;
  if (cfg.contains("multiplicities")) {
    mult = as_multiplicities(cfg.at("multiplicities"), "multiplicities");
  } else {
    Character ch = LaurentPoly::one(d);
    for (const auto& m : mus) ch *= virtual_weyl_character(weight_sub(m, rho(d)));
    mult = decompose(ch);
  }
  std::vector<long> window;
  if (cfg.contains("window")) {
    const Weight w = as_weight(cfg.at("window"), "window");
    if (w.size() != 2 || w[0] > w[1]) schema_error("'window' must be [first, last]");
    for (long n = w[0]; n <= w[1]; ++n) window.push_back(n);
  }
  const long nmax = get_long(cfg, "shifted_max", 8);
  auto& r = rep.results();
  r["multiplicities"] = multiplicities_json(mult);
  const auto sid = shifted_identity_check(mus, mult, nmax);
  json sides = json::array();
  for (const auto& [a, b] : sid.sides) sides.push_back({integer_json(a), integer_json(b)});
  r["shifted_sides"] = sides;
  const auto ds = defect_degree(mus, mult, window);
  json values = json::array();
  for (const auto& [n, v] : ds.values) values.push_back({n, integer_json(v)});
  r["defect"] = {{"values", values}, {"degree", ds.degree}, {"degree_bound", ds.claimed_degree_bound},
                 {"polynomial_confirmed", ds.polynomial_confirmed}};
  rep.verdict("shifted-identity", "dimension-polynomials/shifted-identity", sid.pass);
  rep.verdict("defect-degree", "dimension-polynomials/defect-degree", ds.pass);
  if (cfg.contains("overcount")) {
    const auto ef = equality_forcing_check(mus, mult, as_multiplicities(cfg.at("overcount"), "overcount"), window);
    r["overcount_degree"] = ef.defect.degree;
    rep.verdict("overcount-detected", "dimension-polynomials/equality-forcing", ef.detected);
  }
}

inline void cmd_nabla_cell(const json& cfg, Report& rep) {
  check_keys(cfg, with_common({"lambda", "brute_force"}), "config");
  const FieldConfig fc = parse_field(cfg, true);
  const Weight lam = as_weight(required(cfg, "lambda"), "lambda");
  const NablaCell cell = nabla_cell_dimension(lam, fc.e, fc.p);
  json free = json::array();
  for (const auto& [i, j, k] : cell.free_parameters) free.push_back({i, j, k});
  auto& r = rep.results();
  r["dimension"] = cell.dimension;
  r["free_parameters"] = free;
  if (lam.size() == 2 && get_bool(cfg, "brute_force", true)) {
    const NablaBruteForce bf = nabla_cell_brute_force(lam, fc.e, fc.p);
    r["brute_force"] = {{"kernel_dimension", bf.kernel_dimension}, {"enumerated_points", bf.enumerated_points}};
    bool ok = bf.kernel_dimension == cell.dimension;
    if (bf.enumerated_points >= 0) {
      long pts = 1;
      for (long k = 0; k < cell.dimension; ++k) pts *= fc.p;
      ok = ok && bf.enumerated_points == pts;
    }
    rep.verdict("brute-force-agrees", "nabla-locus/cell-dimensions", ok);
  }
  if (lam.size() == 2) {
    rep.verdict("min-formula", "nabla-locus/cell-dimensions", cell.dimension == std::min(fc.e, lam[0] - lam[1]));
  } else {
    rep.verdict("gap-bound", "nabla-locus/cell-dimensions", lam.front() - lam.back() <= fc.e + fc.p - 1);
  }
}

inline void cmd_bk_torsor(const json& cfg, Report& rep) {
  check_keys(cfg, with_common({"C", "g", "N", "h", "precision", "start"}), "config");
  const FieldConfig fc = parse_field(cfg, true);
  const PrimeField f(static_cast<std::uint64_t>(fc.p));
  const std::size_t M = static_cast<std::size_t>(get_long(cfg, "precision", 64));
  const std::size_t N = static_cast<std::size_t>(get_long(cfg, "N"));
  const BKMatrix bk{FpLaurentMatrix(as_series_matrix(required(cfg, "C"), f, M, "C")), fc.e, get_long(cfg, "h", 1)};
  const FpLaurentMatrix g(as_series_matrix(required(cfg, "g"), f, M, "g"));
  std::optional<FpLaurentMatrix> start;
  if (cfg.contains("start")) start = FpLaurentMatrix(as_series_matrix(cfg.at("start"), f, M, "start"));
  const bool height = height_check(bk);
  const TorsorSolution sol = torsor_solve(bk, g, N, start);
  const FpLaurentMatrix back = inverse_direction_check(bk, sol.g0, N);
  auto& r = rep.results();
  r["g0"] = series_matrix_json(sol.g0);
  r["iterations"] = sol.iterations;
  r["achievable_precision"] = sol.achievable_precision;
  r["residual_valuation"] = sol.residual_valuation ? json(*sol.residual_valuation) : json("vanishes");
  r["residual_precision"] = sol.residual_precision;
  rep.verdict("height", "breuil-kisin/height", height);
  rep.verdict("residual-vanishes", "breuil-kisin/phi-conjugation-torsor", !sol.residual_valuation.has_value());
  rep.verdict("round-trip", "breuil-kisin/phi-conjugation-torsor", back == g);
}

inline LocalFieldElement as_local_element(const json& v, const TameFieldContext& ctx, const std::string& what) {
  if (v.is_number_integer()) return ctx.integer(v.get<long>());
  if (v.is_string()) return ctx.integer(Integer(v.get<std::string>()));
  check_keys(v, {"coords", "shift"}, what);
  const json& c = required(v, "coords");
  if (!c.is_array() || c.size() != ctx.field->basis_size())
    schema_error(what + ".coords must have " + std::to_string(ctx.field->basis_size()) + " entries");
  std::vector<Integer> coords;
  for (const auto& x : c) coords.push_back(x.is_string() ? Integer(x.get<std::string>()) : Integer(as_long(x, what)));
  return LocalFieldElement::from_coords(ctx.field, coords, get_long(v, "shift", 0), ctx.precision);
}

inline void cmd_interpolate(const json& cfg, bool override_bounds, Report& rep) {
  check_keys(cfg, with_common({"r", "target", "m", "precision"}), "config");
  const FieldConfig fc = parse_field(cfg, true);
  std::optional<long> prec;
  if (cfg.contains("precision")) prec = get_long(cfg, "precision");
  const TameFieldContext ctx = TameFieldContext::create(fc.p, fc.e, prec);
  const Weight rs = as_weight(required(cfg, "r"), "r");
  const long target = get_long(cfg, "target", 0);
  if (target < 0 || target >= static_cast<long>(rs.size())) schema_error("'target' out of range");
  std::vector<LocalFieldElement> ms;
  if (cfg.contains("m")) {
    const json& m = cfg.at("m");
    if (!m.is_array() || static_cast<long>(m.size()) != fc.p) schema_error("'m' must list p coefficients");
    for (const auto& x : m) ms.push_back(as_local_element(x, ctx, "m"));
  } else {
    ms.assign(static_cast<std::size_t>(fc.p), ctx.one());
  }
  const InterpolationReport ir = interpolate_claim(ctx, ms, rs, static_cast<std::size_t>(target), override_bounds);
  json coeffs = json::array();
  for (const auto& c : ir.monomial_coeffs) coeffs.push_back(local_element_json(c));
  json ledger = json::array();
  for (const auto& le : ir.ledger)
    ledger.push_back({{"n", le.n}, {"valuation", le.valuation ? json(*le.valuation) : json("vanishes")},
                      {"precision", le.precision}, {"bound", le.bound}, {"ok", le.ok}});
  auto& r = rep.results();
  r["nu"] = ir.nu;
  r["monomial_coefficients"] = coeffs;
  r["ledger"] = ledger;
  r["verified_precision"] = ir.verified_precision;
  r["within_bound"] = ir.within_bound;
  if (override_bounds) r["unsound_override"] = true;
  rep.verdict("congruence", "comparison/p-adic-interpolation", ir.congruence);
  rep.verdict("divisibility", "comparison/p-adic-interpolation", ir.divisibility);
  rep.verdict("integrality", "comparison/p-adic-interpolation", ir.integrality);
  rep.verdict("valuation-ledger", "comparison/p-adic-interpolation", ir.ledger_ok);
}

inline void cmd_validate_bounds(const json& cfg, Report& rep) {
  check_keys(cfg, with_common({"mu"}), "config");
  const HodgeType mu(embedding(parse_field(cfg, true)), as_weights(required(cfg, "mu"), "mu"));
  const BoundReport nat = validate_hodge_bound(mu, BoundKind::natural);
  const BoundReport sharp = validate_hodge_bound(mu, BoundKind::sharper);
  rep.results()["natural"] = bound_json(nat);
  rep.results()["sharper"] = bound_json(sharp);
  rep.results()["regular"] = mu.regular();
  rep.verdict("natural-bound", "weights/natural-gap-bound", nat.pass);
  rep.verdict("sharper-bound", "bm-identity/gap-bound", sharp.pass);
}

inline void cmd_suite(const json& cfg, std::uint64_t seed, Report& rep) {
  check_keys(cfg, with_common({"suite", "suites"}), "config");
  std::vector<std::string> names;
  if (cfg.contains("suite")) {
    if (!cfg.at("suite").is_string()) schema_error("'suite' must be a string");
    names.push_back(cfg.at("suite").get<std::string>());
  }
  if (cfg.contains("suites")) {
    if (!cfg.at("suites").is_array()) schema_error("'suites' must be an array");
    for (const auto& s : cfg.at("suites")) {
      if (!s.is_string()) schema_error("'suites' entries must be strings");
      names.push_back(s.get<std::string>());
    }
  }
  if (names.empty()) names = suite_names();
  json out = json::object();
  for (const auto& n : names) {
    const SuiteResult s = run_suite(n, seed);
    out[n] = s.to_json();
    rep.verdict(n, s.anchor, s.pass);
  }
  rep.results()["suites"] = out;
  rep.results()["seed"] = seed;
}

inline const std::vector<std::string>& task_names() {
  static const std::vector<std::string> t{"bm-identity", "decompose",   "hilbert-defect",  "nabla-cell",
                                          "bk-torsor",   "interpolate", "validate-bounds", "suite"};
  return t;
}

/// Runs one task. Library errors become a failing report that names the error kind.
inline json run_task(const std::string& task, const json& cfg, const Options& opt) {
  Report rep(task, cfg);
  try {
    if (!cfg.is_object()) schema_error("config must be an object");
    if (cfg.contains("task") && (!cfg.at("task").is_string() || cfg.at("task").get<std::string>() != task))
      schema_error("config task does not match subcommand '" + task + "'");
    const bool override_bounds = opt.override_bounds || get_bool(cfg, "override_bounds", false);
    std::uint64_t seed = 1;
    if (cfg.contains("seed")) seed = static_cast<std::uint64_t>(get_long(cfg, "seed"));
    if (opt.seed) seed = *opt.seed;
    if (task == "bm-identity") cmd_bm_identity(cfg, override_bounds, rep);
    else if (task == "decompose") cmd_decompose(cfg, rep);
    else if (task == "hilbert-defect") cmd_hilbert_defect(cfg, rep);
    else if (task == "nabla-cell") cmd_nabla_cell(cfg, rep);
    else if (task == "bk-torsor") cmd_bk_torsor(cfg, rep);
    else if (task == "interpolate") cmd_interpolate(cfg, override_bounds, rep);
    else if (task == "validate-bounds") cmd_validate_bounds(cfg, rep);
    else if (task == "suite") cmd_suite(cfg, seed, rep);
    else schema_error("unknown task '" + task + "'");
  } catch (const Error& e) {
    json out = Report(task, cfg).to_json();
    out["pass"] = false;
    out["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    return out;
  } catch (const json::exception& e) {
    json out = Report(task, cfg).to_json();
    out["pass"] = false;
    out["error"] = {{"kind", "SchemaError"}, {"message", e.what()}};
    return out;
  }
  return rep.to_json();
}

}  // namespace bmc::cli
