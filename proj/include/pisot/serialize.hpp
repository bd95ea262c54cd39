#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "pisot/beta_numeration.hpp"
#include "pisot/beta_shift.hpp"
#include "pisot/coding.hpp"
#include "pisot/config.hpp"
#include "pisot/forms.hpp"
#include "pisot/number_field.hpp"

// JSON records. Exact quantities (integers, rationals, field coordinates) are strings
// so they survive any JSON reader; expansions use the "pre|period" digit syntax.
namespace pisot {

using Json = nlohmann::ordered_json;

inline Json to_json(const Config& c) {
  return Json{{"precision", c.precision}, {"orbit_cap", c.orbit_cap}, {"wf_depth", c.wf_depth},
              {"height", c.height},       {"period_cap", c.period_cap}, {"seed", c.seed},
              {"threads", c.threads},     {"format", c.format}};
}

inline Json int_list(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

inline IntVector int_list_from(const Json& a) {
  IntVector v;
  for (const auto& x : a) v.emplace_back(x.get<std::string>());
  return v;
}

inline Json to_json(const FieldElement& x) {
  return Json{{"coords", x.coord_strings()}, {"text", x.to_string("b")}};
}

inline FieldElement element_from_json(const NumberField& field, const Json& j) {
  std::vector<Rational> c;
  for (const auto& s : j.at("coords")) c.push_back(parse_rational(s.get<std::string>()));
  return field.from_coords(c);
}

inline Json to_json(const IntegerMatrix& M) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) rows.push_back(int_list(M.row(i)));
  return rows;
}

inline Json field_summary(const NumberField& f) {
  const RealInterval b = f.beta_interval(64);
  return Json{{"k", int_list(f.k())},
              {"polynomial", f.poly().to_string()},
              {"degree", f.degree()},
              {"beta", static_cast<double>(to_long_double(b.lo))},
              {"unit", f.is_unit_field()},
              {"theta", f.theta().get_str()},
              {"xi0", to_json(f.xi0())},
              {"D", f.discriminant().get_str()}};
}

inline Json to_json(const ZBetaResult& z) {
  Json els = Json::array();
  for (const auto& e : z.elements)
    els.push_back(Json{{"alpha", to_json(e.alpha)}, {"expansion", e.expansion.to_string()}});
  return Json{{"elements", els},
              {"q", z.q.get_str()},
              {"scan_box", z.scan_box},
              {"candidates", z.candidates},
              {"dual_period", z.dual_period},
              {"dual_words", z.dual_words},
              {"within_q", z.within_q}};
}

inline std::string to_string(CertificateStatus s) { return s == CertificateStatus::Proven ? "Proven" : "Unknown"; }

inline Json to_json(const WeakFinitaryCertificate& c) {
  Json recs = Json::array();
  for (const auto& r : c.records)
    recs.push_back(Json{{"alpha", to_json(r.alpha)},
                        {"alpha_expansion", r.alpha_expansion.to_string()},
                        {"period", r.period},
                        {"f", r.f.to_string()},
                        {"sum", r.sum.to_string()}});
  Json unresolved = Json::array();
  for (const auto& a : c.unresolved) unresolved.push_back(to_json(a));
  return Json{{"k", int_list(c.k)},       {"status", to_string(c.status)}, {"records", recs},
              {"unresolved", unresolved}, {"eta", c.eta.get_str()},        {"L2", c.L2},
              {"L2_ceil", c.L2_ceil},     {"depth", c.depth}};
}

/// Inverse of to_json; the field must match the certificate's k.
inline WeakFinitaryCertificate certificate_from_json(const NumberField& field, const Json& j) {
  WeakFinitaryCertificate c;
  c.k = int_list_from(j.at("k"));
  if (c.k != field.k()) throw ParseError("certificate belongs to a different field");
  const std::string st = j.at("status").get<std::string>();
  if (st != "Proven" && st != "Unknown") throw ParseError("bad certificate status '" + st + "'");
  c.status = st == "Proven" ? CertificateStatus::Proven : CertificateStatus::Unknown;
  for (const auto& r : j.at("records"))
    c.records.push_back(WeakFinitaryRecord{element_from_json(field, r.at("alpha")),
                                           Expansion::parse(r.at("alpha_expansion").get<std::string>()),
                                           r.at("period").get<std::size_t>(),
                                           Expansion::parse(r.at("f").get<std::string>()),
                                           Expansion::parse(r.at("sum").get<std::string>())});
  for (const auto& a : j.at("unresolved")) c.unresolved.push_back(element_from_json(field, a));
  c.eta = parse_rational(j.at("eta").get<std::string>());
  c.L2 = j.at("L2").get<double>();
  c.L2_ceil = j.at("L2_ceil").get<long>();
  c.depth = j.at("depth").get<std::size_t>();
  return c;
}

inline Json to_json(const SoficAutomaton& a) {
  return Json{{"states", a.states()}, {"max_digit", a.max_digit}, {"next", a.next}};
}

inline Json to_json(const MarkovChain& c) {
  return Json{{"automaton", to_json(c.automaton)},
              {"prob", c.prob},
              {"stationary", c.stationary},
              {"perron_value", c.perron_value},
              {"entropy_rate", c.entropy_rate()},
              {"digit_frequencies", c.digit_frequencies()}};
}

inline Json to_json(const TailReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"n", row.n},
                        {"alpha", row.alpha},
                        {"trials", row.trials},
                        {"unchanged", row.unchanged},
                        {"fraction", row.fraction()},
                        {"sigma", row.sigma()}});
  return Json{{"n_list", r.n_list}, {"trials", r.trials}, {"seed", r.seed}, {"L", r.L},
              {"L1", r.L1},         {"L2_ceil", r.L2_ceil}, {"rows", rows}};
}

inline Json word_json(const Word& w) { return Expansion::finite(w).to_string(); }

inline Json to_json(const InjectivityReport& r) {
  Json hist = Json::object();
  for (const auto& [size, count] : r.collision_histogram) hist[std::to_string(size)] = count;
  Json ce = Json::array();
  for (const auto& c : r.counterexamples)
    ce.push_back(Json{{"a", word_json(c.a)}, {"b", word_json(c.b)}, {"offset", c.offset}, {"kind", c.kind}});
  Json j{{"params",
          Json{{"n_digits", r.n_digits}, {"trials", r.trials}, {"resolution", r.resolution}, {"seed", r.seed}}},
         {"fundamental", r.fundamental},
         {"predicted_count", r.predicted_count},
         {"collision_histogram", hist},
         {"duplicate_windows", r.duplicate_windows},
         {"near_misses", r.near_misses},
         {"verified_kernel_hits", r.verified_kernel_hits},
         {"counterexamples", ce},
         {"uniformity_chi2", r.uniformity_chi2},
         {"uniformity_dof", r.uniformity_dof}};
  if (r.census) {
    Json fh = Json::object();
    for (const auto& [size, count] : r.census->fiber_histogram) fh[std::to_string(size)] = count;
    j["census"] = Json{{"period", r.census->period},
                       {"words", r.census->words},
                       {"images", r.census->images},
                       {"fiber_histogram", fh},
                       {"mode", r.census->mode}};
  }
  return j;
}

inline Json to_json(const FormReport& r) {
  Json mons = Json::array();
  for (const auto& m : r.expansion) mons.push_back(Json{{"exponents", m.exponents}, {"coefficient", m.coefficient.get_str()}});
  Json sols = Json::array();
  for (const auto& s : r.solutions) sols.push_back(Json{{"n", int_list(s.n)}, {"value", s.value.get_str()}});
  Json j{{"M", to_json(r.M)}, {"monomials", mons}, {"form", form_to_string(r.expansion)}};
  if (r.height > 0) {
    j["height"] = r.height;
    j["solutions"] = sols;
  }
  if (r.certificate) j["certificate"] = to_json(*r.certificate);
  if (!r.nn.empty()) j["nn"] = int_list(r.nn);
  if (r.classification) {
    Json c{{"n", r.classified_power},
           {"result", to_string(r.classification->result)},
           {"nn", r.classification->nn.get_str()},
           {"reason", r.classification->reason}};
    if (r.classification->witness) c["witness"] = int_list(r.classification->witness->n);
    j["classification"] = c;
  }
  return j;
}

/// Wraps a payload with the command name and the full configuration.
inline Json report(const std::string& command, const Config& cfg, Json payload) {
  return Json{{"command", command}, {"config", to_json(cfg)}, {"result", std::move(payload)}};
}

}  // namespace pisot
