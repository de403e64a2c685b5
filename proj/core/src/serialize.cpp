#include "meq/serialize.hpp"

namespace meq {

Json to_json(Complex z) {
  Json j = Json::object();
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

Json to_json(Tail tail) { return Json::array({tail.n_min, tail.n_max}); }

Json to_json(const PseudometricEstimate& e) {
  Json j = Json::object();
  j["value"] = e.value;
  j["kind"] = to_string(e.kind);
  j["tail"] = to_json(e.tail);
  j["translate_budget"] = e.translate_budget;
  j["agreement_flagged"] = e.agreement_flagged;
  j["flagged_fraction"] = e.flagged_fraction;
  j["flag_slack"] = e.flag_slack;
  j["argmax_n"] = e.argmax_n;
  j["argmax_shift"] = to_string(e.argmax_shift);
  j["provenance"] = e.provenance;
  return j;
}

Json to_json(const ModulusTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json row = Json::object();
    row["delta"] = r.delta;
    row["pairs"] = r.pairs;
    row["max_D"] = r.max_D;
    row["mean_D"] = r.mean_D;
    row["flagged_fraction"] = r.flagged_fraction;
    rows.push_back(std::move(row));
  }
  Json j = Json::object();
  j["estimator"] = t.estimator;
  j["rows"] = std::move(rows);
  return j;
}

Json to_json(const UniqueErgodicityResult& r) {
  Json obs = Json::array();
  for (const auto& o : r.observables) {
    Json e = Json::object();
    e["label"] = o.label;
    e["limit_estimate"] = to_json(o.limit_estimate);
    e["spread"] = o.spread;
    obs.push_back(std::move(e));
  }
  Json j = Json::object();
  j["verdict"] = to_string(r.verdict);
  j["max_spread"] = r.max_spread;
  j["tol"] = r.tol;
  j["tail"] = to_json(r.tail);
  j["observables"] = std::move(obs);
  return j;
}

Json to_json(const ProductCheckResult& r) {
  Json pairs = Json::array();
  for (const auto& p : r.pairs) {
    Json e = Json::object();
    e["label"] = p.label;
    e["ue"] = to_json(p.ue);
    pairs.push_back(std::move(e));
  }
  Json cont = Json::array();
  for (const auto& c : r.continuity) {
    Json e = Json::object();
    e["i"] = c.i;
    e["j"] = c.j;
    e["input_distance"] = c.input_distance;
    e["measure_distance"] = c.measure_distance;
    cont.push_back(std::move(e));
  }
  Json j = Json::object();
  j["pairs"] = std::move(pairs);
  j["continuity"] = std::move(cont);
  return j;
}

Json to_json(const WeylSumResult& r) {
  Json j = Json::object();
  j["alpha"] = r.alpha;
  j["value"] = to_json(r.value);
  j["modulus"] = r.modulus;
  j["phase"] = r.phase;
  j["N"] = r.N;
  j["observable"] = r.observable;
  j["start"] = r.start;
  return j;
}

Json to_json(const SpectrumScan& s) {
  Json peaks = Json::array();
  for (const auto& p : s.peaks) {
    Json e = Json::object();
    e["alpha"] = p.alpha;
    e["modulus"] = p.modulus;
    e["grid_alpha"] = p.grid_alpha;
    e["grid_modulus"] = p.grid_modulus;
    e["seeded"] = p.seeded;
    peaks.push_back(std::move(e));
  }
  Json j = Json::object();
  j["M"] = s.M;
  j["N"] = s.N;
  j["threshold"] = s.threshold;
  j["median"] = s.median;
  j["peaks"] = std::move(peaks);
  return j;
}

Json to_json(const FiberReport& r) {
  Json hist = Json::object();
  for (const auto& [size, count] : r.histogram) hist[std::to_string(size)] = count;
  Json examples = Json::array();
  for (const auto& [target, size] : r.examples) examples.push_back(Json::array({target, size}));
  Json j = Json::object();
  j["factor"] = r.factor;
  j["sample_size"] = r.sample_size;
  j["tolerance"] = r.tolerance;
  j["histogram"] = std::move(hist);
  j["regularity"] = r.regularity;
  j["examples"] = std::move(examples);
  return j;
}

Json to_json(const IsometryResult& r) {
  Json j = Json::object();
  j["isometric"] = r.isometric;
  j["max_distortion"] = r.max_distortion;
  j["pairs"] = r.pairs;
  return j;
}

}  // namespace meq
