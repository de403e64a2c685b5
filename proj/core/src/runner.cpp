#include "meq/runner.hpp"

#include <cmath>
#include <fstream>

#include "meq/acceptance.hpp"
#include "meq/catalog.hpp"
#include "meq/errors.hpp"
#include "meq/serialize.hpp"

namespace meq {

namespace {

void write_csv(const RunConfig& c, const std::string& content) {
  const std::string& path = c.get("csv");
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write CSV file '" + path + "'");
  out << content;
}

Json params(const RunConfig& c, std::initializer_list<const char*> keys) {
  Json j = Json::object();
  for (const char* k : keys) j[k] = c.get(k);
  return j;
}

bool is_symbolic(const std::string& s) {
  return s != "odometer" && s != "rotation" && s != "skew-product";
}

int positive_int(const RunConfig& c, const char* key) {
  const std::int64_t v = c.get_int(key);
  if (v < 1 || v > (std::int64_t{1} << 30)) throw InvalidParameter(std::string("'") + key + "' must be positive");
  return static_cast<int>(v);
}

Report gen(const RunConfig& c) {
  if (!is_symbolic(c.get("system"))) throw InvalidParameter("gen prints symbolic systems only");
  const auto [lo, hi] = c.get_range("window");
  if (hi - lo > (std::int64_t{1} << 24)) throw InvalidParameter("gen window longer than 2^24");
  const SymbolicPoint x = configured_points(c).first.as<SymbolicPoint>();
  Json v = Json::object();
  v["point"] = x.describe();
  v["window"] = Json::array({lo, hi});
  v["symbols"] = x.render(lo, hi);
  Report r(c);
  r.add_result("gen", params(c, {"system", "window"}), std::move(v));
  return r;
}

Report dfest(const RunConfig& c) {
  const SystemHandle sys = make_system(c);
  const auto [x, y] = configured_points(c);
  const std::string& kind = c.get("estimator");
  const FoelnerFamily family = make_family(c);
  const Tail tail = make_tail(c);
  const std::int64_t budget = c.get_int("budget");
  PseudometricEstimate e;
  Json p = params(c, {"system", "estimator", "family", "tail", "budget"});
  if (kind == "besicovitch") {
    e = besicovitch_pseudometric(sys, x, y, family, tail);
  } else if (kind == "weyl") {
    e = weyl_pseudometric(sys, x, y, family, tail, budget);
  } else if (kind == "observable") {
    e = observable_pseudometric(sys, make_observable(c), x, y, family, tail, budget);
    p["observable"] = c.get("observable");
  } else if (kind == "dn") {
    if (!x.is<SymbolicPoint>()) throw InvalidParameter("the dn estimator needs a symbolic system");
    e = dn_pseudometric(x.as<SymbolicPoint>(), y.as<SymbolicPoint>(), static_cast<int>(c.get_int("dn_level")));
    p["dn_level"] = c.get("dn_level");
  } else {
    throw InvalidParameter("unknown estimator '" + kind + "'");
  }
  Json v = to_json(e);
  v["x"] = x.describe();
  v["y"] = y.describe();
  Report r(c);
  r.add_result("dfest", std::move(p), std::move(v));
  return r;
}

Report scan(const RunConfig& c) {
  const SystemHandle sys = make_system(c);
  const auto [a, b] = c.get_range("deltas");
  if (a < 0 || b > 64) throw InvalidParameter("'deltas' exponents must lie within 0..64");
  std::vector<double> deltas;
  for (std::int64_t k = a; k <= b; ++k) deltas.push_back(std::ldexp(1.0, -static_cast<int>(k)));
  ScanParams sp;
  sp.family = make_family(c);
  sp.tail = make_tail(c);
  sp.translate_budget = c.get_int("budget");
  sp.pairs_per_delta = positive_int(c, "pairs");
  sp.seed = c.seed();
  Json p = params(c, {"system", "deltas", "pairs", "family", "tail", "budget", "estimator"});
  if (c.get("estimator") == "observable") {
    sp.observable = make_observable(c);
    p["observable"] = c.get("observable");
  }
  const ModulusTable table = mean_equi_scan(sys, make_pair_sampler(c), deltas, sp);
  write_csv(c, table.to_csv());
  Report r(c);
  r.add_result("scan", std::move(p), to_json(table));
  return r;
}

Report ue_test(const RunConfig& c) {
  const SystemHandle sys = make_system(c);
  const auto points = sample_points(sys, static_cast<std::size_t>(positive_int(c, "points")), c.seed());
  const auto result =
      unique_ergodicity_test(sys, {make_observable(c)}, points, make_family(c), make_tail(c), c.get_double("tol"));
  std::string csv;
  for (std::size_t i = 0; i < result.traces.size(); ++i) {
    const std::string body = result.traces[i].to_csv();
    csv += i == 0 ? body : body.substr(body.find('\n') + 1);
  }
  write_csv(c, csv);
  Report r(c);
  r.add_result("ue-test", params(c, {"system", "observable", "points", "family", "tail", "tol"}), to_json(result));
  return r;
}

Report product_check(const RunConfig& c) {
  const std::string& s = c.get("system");
  const SystemHandle sys = make_system(c);
  const auto [p1, p2] = configured_points(c);
  std::vector<std::pair<Point, Point>> pairs;
  std::vector<Observable> observables;
  if (s == "skew-product") {
    const Point diag = make_product(p1.as<ProductPoint>().left(), p2.as<ProductPoint>().right());
    pairs = {{p1, diag}, {p1, p2}};
    observables = {Observable::circle_character({0, 1, 0, -1})};
  } else if (is_symbolic(s)) {
    pairs = {{p1, p1}, {p1, p2}};
    observables = {Observable::product_symbol_indicator(0, 0), Observable::product_symbol_indicator(1, 1)};
  } else {
    throw InvalidParameter("product-check supports skew-product and symbolic systems");
  }
  const auto result = product_pointwise_ue_check(sys, pairs, observables, make_family(c), make_tail(c),
                                                 c.get_double("tol"));
  Report r(c);
  r.add_result("product-check", params(c, {"system", "family", "tail", "tol"}), to_json(result));
  return r;
}

Report spectrum(const RunConfig& c) {
  const SystemHandle sys = make_system(c);
  ScanOptions opt;
  opt.M = c.get_int("M");
  opt.N = c.get_int("N");
  opt.threshold = c.get_double("threshold");
  if (const auto level = c.get_int("seed_level"); level > 0) opt.seeds = dyadic_seeds(static_cast<int>(level));
  const SpectrumScan result = eigenvalue_scan(sys, make_observable(c), configured_points(c).first, opt);
  write_csv(c, result.to_csv());
  Report r(c);
  r.add_result("spectrum", params(c, {"system", "observable", "M", "N", "threshold", "seed_level"}),
               to_json(result));
  return r;
}

Report factor(const RunConfig& c) {
  const std::string& s = c.get("system");
  const int depth = positive_int(c, "depth");
  FactorMap f;
  if (s == "sturmian")
    f = sturmian_factor(parse_rotation(c.get("alpha")), positive_int(c, "coding_depth"));
  else if (s == "toeplitz-ex5")
    f = toeplitz_factor(depth, parse_fills(c.get("fills")));
  else if (s == "thue-morse")
    f = thue_morse_factor();
  else if (s == "odometer")
    f = odometer_identity_factor(depth);
  else
    throw InvalidParameter("no factor map for system '" + s + "'");
  const FactorMap& fm = f;
  const auto fibers = fiber_statistics(
      f, [&fm](std::uint64_t seed) { return fm.source.sample(seed); }, c.get_double("tol"),
      static_cast<std::size_t>(positive_int(c, "sample_size")), c.seed());
  Json v = to_json(fibers);
  v["equivariance_defect"] = equivariance_defect(f, 64, 100, c.seed());
  const Point x = configured_points(c).first;
  const Point image = f.apply(x);
  v["image_of_point1"] = image.is<SymbolicPoint>() ? image.as<SymbolicPoint>().render(-8, 8) : image.describe();
  Report r(c);
  r.add_result("factor", params(c, {"system", "depth", "coding_depth", "tol", "sample_size"}), std::move(v));
  return r;
}

Report fullgroup(const RunConfig& c) {
  const FullGroupElement e = parse_element(c.get("element"));
  const FullGroupElement e2 = parse_element(c.get("element2"));
  const std::int64_t t = c.get_int("theta");
  const OdometerPoint theta = OdometerPoint::from_integer(t);
  const auto integer = [](const OdometerPoint& p) -> Json {
    if (const auto n = p.integer()) return *n;
    return p.to_string();
  };
  Json v = Json::object();
  v["element"] = to_literal(e);
  v["apply"] = integer(apply_element(e, theta));
  v["apply_next"] = integer(apply_element(e, theta.plus(1)));
  v["compose"] = to_literal(compose(e, e2));
  v["compose_reversed"] = to_literal(compose(e2, e));
  v["compose_at_theta"] = integer(apply_element(compose(e, e2), theta));
  v["compose_reversed_at_theta"] = integer(apply_element(compose(e2, e), theta));
  v["inverse"] = to_literal(inverse(e));
  v["isometry"] = to_json(isometry_check(e, 1000, c.seed()));
  if (c.get("system") == "toeplitz-ex5") {
    const auto x = configured_points(c).first.as<SymbolicPoint>();
    const SymbolicPoint sx = act_on_extension(e, x, toeplitz_factor(positive_int(c, "depth"), parse_fills(c.get("fills"))));
    v["extension_window"] = Json::array({-8, 8});
    v["extension_before"] = x.render(-8, 8);
    v["extension_after"] = sx.render(-8, 8);
  }
  Report r(c);
  r.add_result("fullgroup", params(c, {"element", "element2", "theta", "system"}), std::move(v));
  return r;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"gen",      "dfest",  "scan",      "ue-test", "product-check",
                                              "spectrum", "factor", "fullgroup", "accept",  "defaults"};
  return names;
}

Report run_report(const std::string& sub, const RunConfig& c) {
  if (sub == "gen") return gen(c);
  if (sub == "dfest") return dfest(c);
  if (sub == "scan") return scan(c);
  if (sub == "ue-test") return ue_test(c);
  if (sub == "product-check") return product_check(c);
  if (sub == "spectrum") return spectrum(c);
  if (sub == "factor") return factor(c);
  if (sub == "fullgroup") return fullgroup(c);
  if (sub == "accept") return acceptance_suite(c);
  throw InvalidParameter("unknown subcommand '" + sub + "'");
}

RunOutcome run(const std::string& sub, const RunConfig& c) {
  if (sub == "defaults") return {c.to_text(), kExitOk};
  const Report r = run_report(sub, c);
  RunOutcome out{r.serialize(), kExitOk};
  if (!r.all_passed()) out.exit_code = kExitAcceptanceFailure;
  return out;
}

}  // namespace meq
