#include "cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <variant>

#include "gq/convex_roof.hpp"
#include "gq/csv.hpp"
#include "gq/diagnostics.hpp"
#include "gq/error.hpp"
#include "gq/inequalities.hpp"
#include "gq/measures.hpp"
#include "gq/state_io.hpp"
#include "gq/states.hpp"

namespace gq::cli {

namespace {

AnyState load_input(const CliConfig& cfg) {
  if (!cfg.family.empty()) {
    if (!cfg.input_path.empty()) fail(ErrorCode::BadParameter, "give either --input or --family, not both");
    if (cfg.family == "w") return w_state(cfg.family_size);
    if (cfg.family == "ghz") return ghz_state(cfg.family_size);
    if (cfg.family == "werner") return werner(cfg.werner_p);
    fail(ErrorCode::BadParameter, "unknown state family '" + cfg.family + "' (w, ghz, werner)");
  }
  if (cfg.input_path.empty()) fail(ErrorCode::BadParameter, "an input state is required (--input or --family)");
  return load_state(cfg.input_path);
}

std::vector<double> q_values(const CliConfig& cfg, std::vector<double> fallback) {
  return cfg.q_list.empty() ? fallback : cfg.q_list;
}

std::vector<Bipartition> cuts_for(const CliConfig& cfg, int n) {
  if (cfg.cut) return {parse_cut(*cfg.cut, n)};
  if (n < 2) fail(ErrorCode::BadCut, "a single qubit has no bipartition");
  std::vector<Bipartition> cuts;
  for (int l = 0; l < n; ++l) cuts.push_back(Bipartition::single(n, l));
  return cuts;
}

std::vector<int> foci_for(const CliConfig& cfg, int n) {
  if (cfg.focus) {
    if (*cfg.focus < 1 || *cfg.focus > n) fail(ErrorCode::BadFocus, "focus must be in 1.." + std::to_string(n));
    return {*cfg.focus - 1};
  }
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) all[static_cast<std::size_t>(l)] = l;
  return all;
}

RoofConfig roof_config(const CliConfig& cfg) {
  RoofConfig rc;
  rc.restarts = cfg.restarts;
  rc.workers = cfg.workers;
  return rc;
}

bool wants(const CliConfig& cfg, std::string_view kind) {
  for (const auto& k : cfg.kinds)
    if (k == kind || k == "all") return true;
  return false;
}

std::filesystem::path polygamy_path(const std::filesystem::path& p) {
  auto out = p;
  out.replace_extension();
  out += "_polygamy.csv";
  return out;
}

void report_violation(std::ostream& err, const std::string& check, const ResidualRow& row, const PureState& state) {
  err << "violation in " << check << ": state " << row.state_id << " focus " << row.focus + 1 << " q " << format_real(row.q)
      << " alpha " << format_real(row.alpha) << " residual " << format_real(row.residual) << '\n'
      << to_json(state) << '\n';
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* env = std::getenv("GQ_DEFAULT_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') fail(ErrorCode::BadParameter, "GQ_DEFAULT_SEED must be an unsigned integer");
  return v;
}

}  // namespace

void validate(const CliConfig& cfg) {
  for (double q : cfg.q_list)
    if (!(q > 1.0) || !std::isfinite(q)) fail(ErrorCode::BadQ, "every --q value must be a finite number > 1");
  if (!(cfg.grid_step > 0.0 && cfg.grid_step <= 0.1)) fail(ErrorCode::BadParameter, "--grid-step must lie in (0, 0.1]");
  if (cfg.samples < 1) fail(ErrorCode::BadParameter, "--samples must be >= 1");
  if (cfg.restarts < 1) fail(ErrorCode::BadParameter, "--restarts must be >= 1");
  if (cfg.workers < 1) fail(ErrorCode::BadParameter, "--workers must be >= 1");
}

Bipartition parse_cut(const std::string& text, int n_qubits) {
  const auto bar = text.find('|');
  const std::string side = text.substr(0, bar);
  std::vector<int> labels;
  for (char ch : side) {
    if (ch == ',' || ch == ' ') continue;
    if (!std::isdigit(static_cast<unsigned char>(ch))) fail(ErrorCode::BadCut, "cannot parse cut '" + text + "'");
    labels.push_back(ch - '1');
  }
  if (labels.empty()) fail(ErrorCode::BadCut, "cut '" + text + "' has an empty first side");
  for (int l : labels)
    if (l < 0 || l >= n_qubits) fail(ErrorCode::BadSubsystem, "qubit label out of range in cut '" + text + "'");
  Bipartition cut{QubitSet(n_qubits, labels)};
  if (bar != std::string::npos) {
    std::vector<int> rest;
    for (char ch : text.substr(bar + 1)) {
      if (ch == ',' || ch == ' ') continue;
      if (!std::isdigit(static_cast<unsigned char>(ch))) fail(ErrorCode::BadCut, "cannot parse cut '" + text + "'");
      rest.push_back(ch - '1');
    }
    for (int l : rest)
      if (l < 0 || l >= n_qubits) fail(ErrorCode::BadSubsystem, "qubit label out of range in cut '" + text + "'");
    if (QubitSet(n_qubits, rest).labels() != cut.side_b().labels())
      fail(ErrorCode::BadCut, "the two sides of '" + text + "' must partition the register");
  }
  return cut;
}

std::string cut_label(const Bipartition& cut) {
  std::string s;
  for (int l : cut.side_a().labels()) s += std::to_string(l + 1);
  s += '|';
  for (int l : cut.side_b().labels()) s += std::to_string(l + 1);
  return s;
}

int cmd_measure(const CliConfig& cfg, std::ostream& out) {
  const AnyState state = load_input(cfg);
  const auto qs = q_values(cfg, {2.0});
  CsvWriter w(out);
  w.row({"measure", "cut", "q", "value"});
  if (const auto* psi = std::get_if<PureState>(&state)) {
    for (const auto& cut : cuts_for(cfg, psi->n_qubits())) {
      const auto label = cut_label(cut);
      const auto lambdas = schmidt_decompose(*psi, cut);
      for (double q : qs) w.row({"Cq", label, q, gq_pure(lambdas, QParam(q)).value});
      if (cut.side_a().size() == 1 || cut.side_b().size() == 1) w.row({"C", label, "", concurrence_pure(lambdas).value});
    }
    return kExitPass;
  }
  const auto& rho = std::get<DensityMatrix>(state);
  if (rho.n_qubits() == 2) {
    const double c = wootters_concurrence(rho).value;
    const double ca = coa_two_qubit(rho).value;
    w.row({"C", "1|2", "", c});
    w.row({"Ca", "1|2", "", ca});
    for (double q : qs) {
      w.row({"Cq", "1|2", q, gq_two_qubit_mixed(rho, QParam(q)).value});
      w.row({"hq_C", "1|2", q, h_q(c, QParam(q))});
      w.row({"hq_Ca", "1|2", q, gqcoa_lower_bound(rho, QParam(q)).value});
    }
    return kExitPass;
  }
  for (const auto& cut : cuts_for(cfg, rho.n_qubits())) {
    const auto label = cut_label(cut);
    for (double q : qs)
      w.row({"Cq_roof", label, q, roof_minimize(rho, QParam(q), cut, roof_config(cfg), RngSeed{cfg.seed}).value});
  }
  return kExitPass;
}

int cmd_indicators(const CliConfig& cfg, std::ostream& out) {
  const AnyState state = load_input(cfg);
  const auto* psi = std::get_if<PureState>(&state);
  if (psi == nullptr) fail(ErrorCode::InvalidState, "indicators are evaluated on pure states only");
  const auto qs = q_values(cfg, {1.5});
  CsvWriter w(out);
  w.row({"indicator", "focus", "q", "value"});
  for (double qv : qs) {
    const QParam q(qv);
    for (int f : foci_for(cfg, psi->n_qubits())) {
      const auto r = monogamy_residual(*psi, f, q);
      w.row({"monogamy_residual", static_cast<long long>(f + 1), qv, r.residual});
      if (qv < 2.0) w.row({"tau", static_cast<long long>(f + 1), qv, tau_indicator(*psi, f, q)});
    }
  }
  return kExitPass;
}

int cmd_audit(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto qs = q_values(cfg, {1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0});
  for (const auto& k : cfg.kinds)
    if (k != "monogamy" && k != "polygamy" && k != "diagnostics" && k != "all")
      fail(ErrorCode::BadParameter, "unknown audit kind '" + k + "' (monogamy, polygamy, diagnostics, all)");
  bool pass = true;
  std::ostringstream mono_csv;
  std::ostringstream poly_csv;

  if (!cfg.input_path.empty() || !cfg.family.empty()) {
    const AnyState state = load_input(cfg);
    const auto* psi = std::get_if<PureState>(&state);
    if (psi == nullptr) fail(ErrorCode::InvalidState, "residual audits need a pure state");
    std::vector<ResidualRow> rows;
    for (double qv : qs)
      for (double alpha : cfg.alphas)
        for (int f : foci_for(cfg, psi->n_qubits())) {
          const auto r = alpha_monogamy_residual(*psi, f, QParam(qv), alpha);
          rows.push_back({0, f, qv, alpha, r.lhs, r.rhs_sum(), r.residual, r.residual >= -cfg.tolerance.value_or(1e-9)});
        }
    write_residual_csv(mono_csv, rows);
    double min_res = rows.empty() ? 0.0 : rows.front().residual;
    for (const auto& r : rows) {
      min_res = std::min(min_res, r.residual);
      if (!r.pass && pass) {
        report_violation(err, "monogamy", r, *psi);
        pass = false;
      }
    }
    out << "monogamy state rows=" << rows.size() << " min_residual=" << format_real(min_res) << (pass ? " PASS" : " FAIL") << '\n';
  } else {
    if (wants(cfg, "monogamy")) {
      MonogamyAuditConfig mc;
      mc.n_qubits = cfg.n_qubits;
      mc.samples = cfg.samples;
      mc.qs = qs;
      mc.alphas = cfg.alphas;
      mc.workers = cfg.workers;
      if (cfg.tolerance) mc.tolerance = *cfg.tolerance;
      const auto res = monogamy_audit(mc, RngSeed{cfg.seed});
      write_residual_csv(mono_csv, res.rows);
      out << "monogamy n=" << cfg.n_qubits << " samples=" << cfg.samples << " rows=" << res.rows.size()
          << " min_residual=" << format_real(res.min_residual) << (res.pass ? " PASS" : " FAIL") << '\n';
      if (!res.pass) {
        report_violation(err, "monogamy", res.rows[*res.first_violation], *res.offending_state);
        pass = false;
      }
      const auto tangle = monogamy_residual(w_state(3), 0, QParam(2.0));
      const bool tangle_ok = std::abs(tangle.residual) <= 1e-10;
      out << "tangle W3 q=2 residual=" << format_real(tangle.residual) << (tangle_ok ? " PASS" : " FAIL") << '\n';
      pass = pass && tangle_ok;
    }
    if (wants(cfg, "polygamy")) {
      PolygamyAuditConfig pc;
      pc.n_qubits = cfg.n_qubits;
      pc.samples = cfg.samples;
      pc.qs = qs;
      pc.roof = roof_config(cfg);
      pc.workers = cfg.workers;
      if (cfg.tolerance) pc.tolerance = *cfg.tolerance;
      const auto res = polygamy_audit(pc, RngSeed{cfg.seed});
      write_residual_csv(poly_csv, res.rows);
      out << "polygamy n=" << cfg.n_qubits << " samples=" << cfg.samples << " rows=" << res.rows.size()
          << " min_residual=" << format_real(res.min_residual) << (res.pass ? " PASS" : " FAIL") << '\n';
      if (!res.pass) {
        report_violation(err, "polygamy", res.rows[*res.first_violation], *res.offending_state);
        pass = false;
      }
    }
  }
  if (wants(cfg, "diagnostics")) {
    for (const auto& spec : standard_sign_audits(cfg.grid_step)) {
      const auto t = sign_audit(spec);
      out << "sign " << t.name << " points=" << t.points << " min=" << format_real(t.min.value) << " max=" << format_real(t.max.value)
          << (t.pass ? " PASS" : " FAIL") << '\n';
      if (!t.pass) {
        err << "violation in sign audit " << t.name << '\n';
        pass = false;
      }
    }
  }
  if (!cfg.output_path.empty()) {
    const std::filesystem::path path(cfg.output_path);
    if (!mono_csv.str().empty()) write_text_file(path, mono_csv.str());
    if (!poly_csv.str().empty()) write_text_file(mono_csv.str().empty() ? path : polygamy_path(path), poly_csv.str());
  }
  return pass ? kExitPass : kExitViolation;
}

std::vector<std::string> figure_files() {
  return {"fig1_M.csv", "fig3_limM.csv", "fig3_l.csv", "fig4_ltilde.csv", "fig5_tauW.csv", "fig7_Mtilde.csv"};
}

int cmd_figures(const CliConfig& cfg, std::ostream& out) {
  const double s = cfg.grid_step;
  const std::filesystem::path dir(cfg.output_path.empty() ? "." : cfg.output_path);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());

  auto emit = [&](const std::string& name, const std::string& body) {
    write_text_file(dir / name, body);
    out << (dir / name).string() << '\n';
  };
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const auto x_half_open = make_grid(s, 1.0, s);
  const auto t_open = make_grid(s, 1.0 - s / 2, s);

  {
    std::ostringstream os;
    CsvWriter w(os);
    w.row({"fn", "q", "x", "value"});
    for (double q : make_grid(1.0 + s, 5.0 - s / 2, s))
      for (double x : x_half_open) w.row({"M", q, x, diagnostic_M(x, q)});
    emit("fig1_M.csv", os.str());
  }
  {
    std::ostringstream os;
    CsvWriter w(os);
    w.row({"fn", "q", "x", "value"});
    for (double q : make_grid(1.0, 2.0, s)) w.row({"limM", q, 1.0, lim_M_at_one(q)});
    emit("fig3_limM.csv", os.str());
  }
  {
    std::ostringstream l_os;
    std::ostringstream lt_os;
    CsvWriter lw(l_os);
    CsvWriter ltw(lt_os);
    lw.row({"fn", "q", "x", "value"});
    ltw.row({"fn", "q", "x", "value"});
    for (double q : make_grid(1.0 + s, 2.0, s)) {
      lw.row({"l", q, inv_sqrt2, diagnostic_l(inv_sqrt2, q)});
      ltw.row({"ltilde", q, inv_sqrt2, diagnostic_ltilde(inv_sqrt2, q)});
    }
    emit("fig3_l.csv", l_os.str());
    emit("fig4_ltilde.csv", lt_os.str());
  }
  {
    std::ostringstream os;
    CsvWriter w(os);
    w.row({"fn", "q", "x", "value"});
    for (int n : {3, 6, 9})
      for (double q : make_grid(1.05, 1.95, s)) w.row({"tauW", q, static_cast<long long>(n), tau_w_closed_form(n, QParam(q))});
    emit("fig5_tauW.csv", os.str());
  }
  {
    std::ostringstream os;
    CsvWriter w(os);
    w.row({"fn", "q", "x", "value"});
    for (double q : make_grid(1.0 + s, 2.0 - s / 2, s))
      for (double t : t_open) w.row({"Mtilde", q, t, diagnostic_Mtilde(t, q)});
    emit("fig7_Mtilde.csv", os.str());
  }
  return kExitPass;
}

int cmd_roof(const CliConfig& cfg, std::ostream& out) {
  const AnyState state = load_input(cfg);
  const DensityMatrix rho = std::holds_alternative<PureState>(state) ? DensityMatrix::from_pure(std::get<PureState>(state))
                                                                     : std::get<DensityMatrix>(state);
  const Bipartition cut = cfg.cut ? parse_cut(*cfg.cut, rho.n_qubits()) : Bipartition::single(rho.n_qubits(), 0);
  const auto label = cut_label(cut);
  CsvWriter w(out);
  w.row({"measure", "cut", "q", "value"});
  for (double q : q_values(cfg, {2.0})) {
    const auto res = cfg.maximize ? roof_maximize(rho, QParam(q), cut, roof_config(cfg), RngSeed{cfg.seed})
                                  : roof_minimize(rho, QParam(q), cut, roof_config(cfg), RngSeed{cfg.seed});
    w.row({cfg.maximize ? "roof_max" : "roof_min", label, q, res.value});
    if (rho.n_qubits() == 2 && q <= 2.0) {
      if (cfg.maximize)
        w.row({"hq_Ca", label, q, gqcoa_lower_bound(rho, QParam(q)).value});
      else
        w.row({"hq_C", label, q, gq_two_qubit_mixed(rho, QParam(q)).value});
    }
  }
  return kExitPass;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"G_q-concurrence toolkit: measures, indicators, inequality audits and figure data"};
  app.require_subcommand(1);
  CliConfig cfg;
  std::optional<std::uint64_t> seed;
  std::string cut;
  int focus = 0;

  auto add_state = [&](CLI::App* sub) {
    sub->add_option("--input,-i", cfg.input_path, "JSON state file");
    sub->add_option("--family", cfg.family, "built-in state instead of a file: w, ghz, werner");
    sub->add_option("--n", cfg.family_size, "qubits for --family w/ghz")->check(CLI::Range(2, 6));
    sub->add_option("--werner-p", cfg.werner_p, "mixing weight for --family werner")->check(CLI::Range(0.0, 1.0));
  };
  auto add_q = [&](CLI::App* sub) { sub->add_option("--q", cfg.q_list, "q values (> 1), comma separated")->delimiter(','); };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", seed, "master seed (default: $GQ_DEFAULT_SEED)"); };
  auto add_roof = [&](CLI::App* sub) {
    sub->add_option("--restarts", cfg.restarts, "optimizer restarts");
    sub->add_option("--workers", cfg.workers, "worker threads");
  };

  auto* measure = app.add_subcommand("measure", "evaluate G_q-concurrence and related measures on a state");
  add_state(measure);
  add_q(measure);
  add_seed(measure);
  add_roof(measure);
  measure->add_option("--cut", cut, "bipartition such as 1|23 (default: every single-qubit cut)");

  auto* indicators = app.add_subcommand("indicators", "tau_q indicators and monogamy residuals of a pure state");
  add_state(indicators);
  add_q(indicators);
  indicators->add_option("--focus", focus, "focus qubit, 1-based (default: all)");

  auto* audit = app.add_subcommand("audit", "randomized inequality audits and diagnostic sign checks");
  add_state(audit);
  add_q(audit);
  add_seed(audit);
  add_roof(audit);
  audit->add_option("--samples", cfg.samples, "random states");
  audit->add_option("--qubits", cfg.n_qubits, "qubits per random state")->check(CLI::Range(2, 6));
  audit->add_option("--alpha", cfg.alphas, "monogamy exponents (>= 2)")->delimiter(',');
  audit->add_option("--kind", cfg.kinds, "monogamy, polygamy, diagnostics or all")->delimiter(',');
  audit->add_option("--grid-step", cfg.grid_step, "sign-audit grid step");
  audit->add_option("--focus", focus, "focus qubit for a single-state audit, 1-based");
  audit->add_option("--tolerance", cfg.tolerance, "residual tolerance (default 1e-9 monogamy, 1e-6 polygamy)");
  audit->add_option("--out,-o", cfg.output_path, "CSV of per-sample residuals");

  auto* figures = app.add_subcommand("figures", "write figure-data CSV files");
  figures->add_option("--grid-step", cfg.grid_step, "grid step");
  figures->add_option("--out,-o", cfg.output_path, "output directory");

  auto* roof = app.add_subcommand("roof", "numerical convex roof (minimum) or assisted roof (maximum)");
  add_state(roof);
  add_q(roof);
  add_seed(roof);
  add_roof(roof);
  roof->add_option("--cut", cut, "bipartition such as 1|2 (default: first qubit)");
  roof->add_flag("--maximize", cfg.maximize, "maximize instead of minimize");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInputError;
  }

  try {
    if (!cut.empty()) cfg.cut = cut;
    if (focus != 0) cfg.focus = focus;
    cfg.seed = seed ? *seed : seed_from_env(kFallbackSeed);
    validate(cfg);
    if (measure->parsed()) return cmd_measure(cfg, out);
    if (indicators->parsed()) return cmd_indicators(cfg, out);
    if (audit->parsed()) return cmd_audit(cfg, out, err);
    if (figures->parsed()) return cmd_figures(cfg, out);
    return cmd_roof(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace gq::cli
