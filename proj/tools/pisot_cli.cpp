// Command-line front end: pisot_cli <command> [options]. Run with --help for the list.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pisot/pisot.hpp"

using namespace pisot;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitMath = 2;
constexpr int kExitUsage = 64;

struct Globals {
  bool json = false;
  std::string config_file;
  std::vector<std::string> settings;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
};

Config resolve(const Globals& g) {
  Config c;
  if (!g.config_file.empty()) c.load_file(g.config_file);
  c.apply_environment();
  for (const auto& kv : g.settings) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ParseError("--set expects key=value, got '" + kv + "'");
    c.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (g.seed) c.seed = *g.seed;
  if (g.threads) c.threads = *g.threads;
  if (g.json) c.format = "json";
  c.validate();
  return c;
}

NumberField field_of(const std::string& text, const Config& c) {
  return NumberField::make(parse_recurrence(text), c.precision);
}

NumerationLimits limits(const Config& c) { return NumerationLimits{c.orbit_cap}; }

ZBetaOptions zbeta_options(const Config& c) {
  ZBetaOptions o;
  o.period_cap = c.period_cap;
  o.limits = limits(c);
  return o;
}

WeakFinitaryOptions wf_options(const Config& c) {
  WeakFinitaryOptions o;
  o.depth = c.wf_depth;
  o.zbeta = zbeta_options(c);
  return o;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& v : parse_recurrence(text)) {
    if (sgn(v) <= 0) throw ParseError("expected positive integers: " + text);
    out.push_back(v.get_ui());
  }
  return out;
}

void emit(const Config& c, const std::string& command, const Json& payload, const std::string& text) {
  if (c.format == "json") std::cout << report(command, c, payload).dump(2) << "\n";
  else std::cout << text;
}

std::vector<std::string> strings(const IntVector& v) {
  std::vector<std::string> s;
  for (const auto& x : v) s.push_back(x.get_str());
  return s;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pisot number fields, beta-expansions, arithmetic codings and associated forms"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_option("--config", g.config_file, "key=value configuration file");
  app.add_option("--set", g.settings, "override a configuration key (key=value)");
  app.add_option("--seed", g.seed, "random seed (overrides PISOT_SEED)");
  app.add_option("--threads", g.threads, "parallelism degree passed to experiments");

  std::string poly, element, matrix, xi_text, z_text, cert_out, cert_in, n_list = "10,20,30,40,60";
  std::vector<std::string> units;
  std::size_t n_sample = 50, trials = 0, digits = 20, nn_max = 0, classify_n = 0;
  long search_h = 0, tail_L = -1;
  double resolution = 0x1.0p-20;
  bool simulate = false;

  auto* c_field = app.add_subcommand("field", "field summary: Pisot check, xi0, D, theta");
  c_field->add_option("poly", poly, "k1,...,km or a monic polynomial")->required();
  c_field->add_option("--unit", units, "element to verify as a unit");

  auto* c_expand = app.add_subcommand("expand", "greedy beta-expansion of an element of [0,1)");
  c_expand->add_option("poly", poly)->required();
  c_expand->add_option("element", element, "polynomial in b with rational coefficients")->required();

  auto* c_dseq = app.add_subcommand("dseq", "greedy expansion d' and quasi-greedy d of 1");
  c_dseq->add_option("poly", poly)->required();

  auto* c_zbeta = app.add_subcommand("zbeta", "purely periodic elements of Z[beta] in [0,1)");
  c_zbeta->add_option("poly", poly)->required();

  auto* c_wf = app.add_subcommand("wf-check", "finitarity and weak-finitarity certificate");
  c_wf->add_option("poly", poly)->required();
  c_wf->add_option("--out", cert_out, "write the certificate as JSON");
  c_wf->add_option("--verify", cert_in, "re-validate a certificate JSON file instead of searching");

  auto* c_aut = app.add_subcommand("automaton", "minimal admissibility automaton and Parry chain");
  c_aut->add_option("poly", poly)->required();

  auto* c_sample = app.add_subcommand("sample", "sample a word from the Parry measure");
  c_sample->add_option("poly", poly)->required();
  c_sample->add_option("-n", n_sample, "word length");

  auto* c_tails = app.add_subcommand("tails", "tail invariance experiment");
  c_tails->add_option("poly", poly)->required();
  c_tails->add_option("--n", n_list, "comma-separated prefix lengths");
  c_tails->add_option("--trials", trials, "trials per element (default 2000)");
  c_tails->add_option("--L", tail_L, "tail offset (default derived)");

  auto* c_coding = app.add_subcommand("coding", "homoclinic point and arithmetic coding");
  c_coding->add_option("poly", poly)->required();
  auto* xi_opt = c_coding->add_option("--xi", xi_text, "homoclinic coordinate xi (default xi0)");
  c_coding->add_option("--z", z_text, "integer coordinate n of the homoclinic point")->excludes(xi_opt);
  c_coding->add_flag("--simulate", simulate, "run the injectivity experiment");
  c_coding->add_option("--trials", trials, "experiment trials (default 10000)");
  c_coding->add_option("--digits", digits, "window length");
  c_coding->add_option("--resolution", resolution, "bucket width on the torus");

  auto* c_form = app.add_subcommand("form", "associated form of an integer matrix");
  c_form->add_option("matrix", matrix, "rows separated by '/', entries by ','")->required();
  c_form->add_option("--search", search_h, "find n with f_M(n) = +-1 and |n_i| <= H");
  c_form->add_option("--nn", nn_max, "print N_1..N_n");
  c_form->add_option("--classify", classify_n, "decide conjugacy of M^n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Config cfg = resolve(g);
    std::ostringstream out;

    if (*c_field) {
      const NumberField f = field_of(poly, cfg);
      Json j = field_summary(f);
      out << "polynomial: " << f.poly().to_string() << "\n"
          << "beta: " << j["beta"].get<double>() << "\n"
          << "pisot: yes\n"
          << "unit: " << (f.is_unit_field() ? "yes" : "no") << "\n"
          << "theta: " << f.theta().get_d() << " (" << f.theta().get_str() << ")\n"
          << "xi0: " << f.xi0().to_string("b") << "\n"
          << "D: " << f.discriminant().get_str() << "\n";
      Json ju = Json::array();
      bool all_units = true;
      for (const auto& u : units) {
        const FieldElement x = parse_element(f, u);
        const bool ok = x.is_unit();
        all_units = all_units && ok;
        ju.push_back(Json{{"element", to_json(x)}, {"unit", ok}, {"norm", x.norm().get_str()}});
        out << "unit " << x.to_string("b") << ": " << (ok ? "yes" : "no") << " (norm " << x.norm().get_str() << ")\n";
      }
      if (!units.empty()) j["units"] = ju;
      emit(cfg, "field", j, out.str());
      return all_units ? kExitOk : kExitMath;
    }

    if (*c_expand) {
      const NumberField f = field_of(poly, cfg);
      const FieldElement x = parse_element(f, element);
      const Expansion e = beta_expand(x, limits(cfg));
      out << e.to_string() << "\n";
      emit(cfg, "expand", Json{{"element", to_json(x)}, {"expansion", e.to_string()}, {"finite", e.is_finite()}},
           out.str());
      return kExitOk;
    }

    if (*c_dseq) {
      const NumberField f = field_of(poly, cfg);
      const DSequence ds = d_sequence(f, limits(cfg));
      out << "d': " << ds.d_prime.to_string() << "\nd: " << ds.d.to_string() << "\n";
      emit(cfg, "dseq", Json{{"d_prime", ds.d_prime.to_string()}, {"d", ds.d.to_string()}}, out.str());
      return kExitOk;
    }

    if (*c_zbeta) {
      const NumberField f = field_of(poly, cfg);
      const ZBetaResult z = enumerate_z_beta(f, zbeta_options(cfg));
      out << z.elements.size() << " elements\n";
      for (const auto& e : z.elements) out << "  " << e.alpha.to_string("b") << "  " << e.expansion.to_string() << "\n";
      out << "checked against periodic words up to period " << z.dual_period << "\n";
      emit(cfg, "zbeta", to_json(z), out.str());
      return kExitOk;
    }

    if (*c_wf) {
      const NumberField f = field_of(poly, cfg);
      if (!cert_in.empty()) {
        std::ifstream in(cert_in);
        if (!in) throw ParseError("cannot open " + cert_in);
        Json j = Json::parse(in);
        const Json& body = j.contains("result") ? j["result"].at("certificate") : j;
        const WeakFinitaryCertificate cert = certificate_from_json(f, body);
        const ZBetaResult z = enumerate_z_beta(f, zbeta_options(cfg));
        const std::string why = validate_certificate(f, cert, &z);
        const bool same = to_json(cert) == body;
        out << (why.empty() && same ? "valid" : "invalid: " + (why.empty() ? std::string("not canonical") : why)) << "\n";
        emit(cfg, "wf-verify", Json{{"valid", why.empty() && same}, {"reason", why}}, out.str());
        return why.empty() && same ? kExitOk : kExitMath;
      }
      const ZBetaResult z = enumerate_z_beta(f, zbeta_options(cfg));
      FinitarityResult fin;
      fin.status = z.elements.size() == 1 ? FinitarityStatus::Finitary : FinitarityStatus::NotFinitary;
      for (const auto& e : z.elements)
        if (!e.alpha.is_zero()) {
          fin.witness = e;
          break;
        }
      const WeakFinitaryCertificate cert = check_weak_finitarity(f, z, wf_options(cfg));
      const std::string why = validate_certificate(f, cert, &z);
      out << "finitarity: " << to_string(fin.status);
      if (fin.witness) out << " (witness " << fin.witness->alpha.to_string("b") << " = " << fin.witness->expansion.to_string() << ")";
      out << "\nweak finitarity: " << to_string(cert.status) << "\n";
      for (const auto& r : cert.records)
        out << "  alpha " << r.alpha_expansion.to_string() << "  p " << r.period << "  f " << r.f.to_string()
            << "  alpha+f " << r.sum.to_string() << "\n";
      for (const auto& a : cert.unresolved) out << "  unresolved " << a.to_string("b") << "\n";
      out << "eta: " << cert.eta.get_str() << "\nL2: " << cert.L2 << " (ceil " << cert.L2_ceil << ")\n"
          << "validation: " << (why.empty() ? "ok" : why) << "\n";
      Json j{{"finitarity", to_string(fin.status)}, {"certificate", to_json(cert)}, {"validation", why.empty() ? "ok" : why}};
      if (fin.witness) j["witness"] = fin.witness->expansion.to_string();
      if (!cert_out.empty()) {
        std::ofstream o(cert_out);
        if (!o) throw Error("cannot write " + cert_out);
        o << to_json(cert).dump(2) << "\n";
      }
      emit(cfg, "wf-check", j, out.str());
      return why.empty() ? kExitOk : kExitInternal;
    }

    if (*c_aut) {
      const NumberField f = field_of(poly, cfg);
      const MarkovChain chain = max_entropy_chain(build_automaton(d_sequence(f, limits(cfg))));
      const auto& a = chain.automaton;
      out << a.states() << " states, digits 0.." << a.max_digit << "\n";
      for (std::size_t s = 0; s < a.states(); ++s) {
        out << "  " << s << ":";
        for (std::size_t e = 0; e < a.alphabet(); ++e)
          if (a.next[s][e] >= 0) out << " " << e << "->" << a.next[s][e] << " (" << chain.prob[s][e] << ")";
        out << "\n";
      }
      out << "perron value: " << chain.perron_value << "\nentropy: " << chain.entropy_rate() << "\n";
      emit(cfg, "automaton", to_json(chain), out.str());
      return kExitOk;
    }

    if (*c_sample) {
      const NumberField f = field_of(poly, cfg);
      const MarkovChain chain = max_entropy_chain(build_automaton(d_sequence(f, limits(cfg))));
      const Word w = sample(chain, n_sample, cfg.seed);
      std::vector<std::string> d;
      for (Digit x : w) d.push_back(std::to_string(x));
      const std::string text = join(d, chain.automaton.max_digit > 9 ? "," : "");
      out << text << "\n";
      emit(cfg, "sample", Json{{"n", n_sample}, {"word", text}, {"digits", w}}, out.str());
      return kExitOk;
    }

    if (*c_tails) {
      const NumberField f = field_of(poly, cfg);
      TailOptions o;
      o.seed = cfg.seed;
      o.L = tail_L;
      o.wf = wf_options(cfg);
      if (trials) o.trials = trials;
      const TailReport r = tail_invariance_experiment(f, parse_sizes(n_list), o);
      out << "L = " << r.L << " (L1 " << r.L1 << ", ceil L2 " << r.L2_ceil << ")\n";
      for (const auto& row : r.rows)
        out << "  alpha " << row.alpha << "  n " << row.n << "  unchanged " << row.unchanged << "/" << row.trials
            << " = " << row.fraction() << " +- " << row.sigma() << "\n";
      emit(cfg, "tails", to_json(r), out.str());
      return kExitOk;
    }

    if (*c_coding) {
      const NumberField f = field_of(poly, cfg);
      HomoclinicSpec spec;
      if (!z_text.empty()) spec = spec_from_integer_coordinate(f, parse_recurrence(z_text));
      else spec = make_spec(f, xi_text.empty() ? f.xi0() : parse_element(f, xi_text));
      const FieldElement ratio = spec.ratio();
      const bool fund = is_fundamental(spec);
      const Integer count = predicted_preimage_count(spec);
      const auto kernel = kernel_sequences(f, zbeta_options(cfg));
      out << "xi: " << spec.xi.to_string("b") << "\nxi/xi0: " << ratio.to_string("b") << "\n"
          << "fundamental: " << (fund ? "yes" : "no") << "\npredicted preimages: " << count.get_str() << "\n"
          << "kernel sequences:";
      Json jk = Json::array();
      for (const auto& e : kernel) {
        out << " " << e.to_string();
        jk.push_back(e.to_string());
      }
      out << "\n";
      Json j{{"xi", to_json(spec.xi)}, {"ratio", to_json(ratio)}, {"fundamental", fund},
             {"predicted_count", count.get_str()}, {"kernel", jk}};
      if (spec.z_coordinate) j["z"] = int_list(*spec.z_coordinate);
      if (simulate) {
        InjectivityOptions o;
        o.seed = cfg.seed;
        o.n_digits = digits;
        o.resolution = resolution;
        if (trials) o.trials = trials;
        const InjectivityReport r = injectivity_experiment(spec, o);
        out << "windows " << r.trials << " of " << r.n_digits << " digits at resolution " << r.resolution << "\n"
            << "collision histogram:";
        for (const auto& [size, cnt] : r.collision_histogram) out << " " << size << ":" << cnt;
        out << "\nduplicate windows: " << r.duplicate_windows << "\nnear misses: " << r.near_misses
            << "\nverified kernel hits: " << r.verified_kernel_hits
            << "\ncounterexamples: " << r.counterexamples.size() << "\nchi2: " << r.uniformity_chi2 << " on "
            << r.uniformity_dof << " dof\n";
        if (r.census) {
          out << "periodic census (period " << r.census->period << "): " << r.census->words << " words, "
              << r.census->images << " points, mode " << r.census->mode << "\n";
        }
        j["experiment"] = to_json(r);
      }
      emit(cfg, "coding", j, out.str());
      return kExitOk;
    }

    if (*c_form) {
      FormReport r;
      r.M = parse_matrix(matrix);
      NumberField::make(recurrence_of(r.M), cfg.precision);
      r.expansion = form_expand(r.M);
      out << "f_M = " << form_to_string(r.expansion) << "\n";
      if (search_h > 0) {
        r.height = search_h;
        r.solutions = search_unimodular(r.M, search_h);
        out << r.solutions.size() << " solutions with height <= " << search_h << "\n";
        for (const auto& s : r.solutions) out << "  (" << join(strings(s.n), ",") << ") -> " << s.value.get_str() << "\n";
        if (!r.solutions.empty()) {
          // Prefer the first basis vector when it is a solution.
          IntVector best = r.solutions.front().n;
          IntVector e1(r.M.rows(), Integer(0));
          e1[0] = 1;
          for (const auto& s : r.solutions)
            if (s.n == e1) best = e1;
          r.certificate = conjugacy_certificate(r.M, best);
          out << "certificate B_M(" << join(strings(best), ",") << ") = " << r.certificate->to_string() << "\n";
        }
      }
      if (nn_max > 0) {
        r.nn = nn_sequence(recurrence_of(r.M), nn_max);
        std::vector<std::string> s;
        for (const auto& v : r.nn) s.push_back(v.get_str());
        out << "N_1.." << nn_max << ": " << join(s, " ") << "\n";
      }
      if (classify_n > 0) {
        r.classification = classify_power_conjugacy(r.M, classify_n, cfg.height);
        r.classified_power = classify_n;
        out << "M^" << classify_n << ": " << to_string(r.classification->result) << " (" << r.classification->reason << ")\n";
      }
      emit(cfg, "form", to_json(r), out.str());
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Json::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MathError& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return kExitMath;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
