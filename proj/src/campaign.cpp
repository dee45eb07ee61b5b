#include "qtherm/campaign.hpp"

#include <atomic>
#include <boost/math/distributions/students_t.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>

#include "qtherm/errors.hpp"
#include "qtherm/wigner_weisskopf.hpp"

namespace qtherm {
namespace {

using json = nlohmann::json;

struct Range {
  double lo, hi;
};

// Expected log-log slope of delta^2 against IPR for a given experiment.
std::optional<Range> expected_slope(const CampaignConfig& c, ObservableKind obs) {
  if (obs == ObservableKind::survival) return Range{1.8, 2.2};
  switch (c.init) {
    case InitKind::correlated: return Range{1.8, 2.2};
    case InitKind::neel: return Range{0.7, 1.3};
    case InitKind::bath_ground: return Range{1.5, INFINITY};
    case InitKind::eigenstate: return std::nullopt;
  }
  return std::nullopt;
}

std::vector<double> time_grid(const CampaignConfig& c) {
  return c.grid == GridKind::linear ? linear_grid(c.t_max, c.n_points)
                                    : log_grid(c.t_min, c.t_max, c.n_points);
}

HamiltonianMatrix build_hamiltonian(const CampaignConfig& c, int n) {
  switch (c.model) {
    case ModelFamily::nn_xxx: {
      NnXxxParams p = c.nn_xxx;
      p.n_sites = n;
      return build_nn_xxx(p, enumerate_sector(n, resolve_sector(c, n)));
    }
    case ModelFamily::mixed_field: {
      MixedFieldChainParams p = c.mixed;
      p.n_sites = n;
      return build_mixed_field_chain(p);
    }
    case ModelFamily::spin_boson:
      return build_spin_boson(
          SpinBosonParams::from_decay_rate(n, c.gamma, c.omega_z, c.coupling, c.seed));
  }
  throw ParameterError("unknown model family");
}

Origin make_origin(const CampaignConfig& c, int n) {
  switch (c.init) {
    case InitKind::correlated:
      if (c.model == ModelFamily::spin_boson) return BasisStateOrigin{SpinBosonBasis::kExcitedSpin};
      return ConfigurationOrigin{correlated_configuration(n)};
    case InitKind::neel: return ConfigurationOrigin{neel_configuration(n)};
    case InitKind::bath_ground: {
      MixedFieldChainParams p = c.mixed;
      p.n_sites = n;
      return VectorOrigin{bath_ground_state(p), "bath_ground"};
    }
    case InitKind::eigenstate: return EigenstateOrigin{c.eigenstate_index};
  }
  throw ParameterError("unknown initial state");
}

bool all_finite(const DiagnosticsRecord& r) {
  for (double x : {r.ipr, r.i8, r.delta2, r.de_avg, r.two_time_avg, r.mc_avg, r.mc_window,
                   r.fbar_ed, r.fbar_theory})
    if (!std::isfinite(x)) return false;
  return r.ipr > 0.0 && r.ipr <= 1.0 + 1e-12;
}

void write_text(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json fit_json(const LogLogFit& f) {
  return {{"slope", f.slope},
          {"intercept", f.intercept},
          {"r_squared", f.r_squared},
          {"slope_stderr", f.slope_stderr},
          {"slope_ci95", {f.ci_low, f.ci_high}}};
}

}  // namespace

std::string to_string(Subcommand s) {
  switch (s) {
    case Subcommand::sweep: return "sweep";
    case Subcommand::dynamics: return "dynamics";
    case Subcommand::otoc: return "otoc";
    case Subcommand::spinboson: return "spinboson";
    case Subcommand::ansatz: return "ansatz";
  }
  return "?";
}

LogLogFit fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ParameterError("fit needs equally many x and y values");
  if (x.size() < 3) throw ParameterError("fit needs at least 3 points");
  const auto n = static_cast<double>(x.size());
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("log-log fit needs positive values");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("log-log fit needs at least two distinct x values");

  LogLogFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  const double sse = std::max(0.0, syy - f.slope * sxy);
  f.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  f.slope_stderr = std::sqrt(sse / (n - 2.0) / sxx);
  const boost::math::students_t dist(n - 2.0);
  const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
  f.ci_low = f.slope - t * f.slope_stderr;
  f.ci_high = f.slope + t * f.slope_stderr;
  return f;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string sweep_csv_header() {
  return "model,n_sites,sector_dim,seed,init,observable,ipr,i8,delta2,de_avg,two_time_avg,mc_avg,"
         "mc_window,fbar_ed,fbar_theory,n_degenerate_groups,wall_ms";
}

std::string to_csv_row(const DiagnosticsRecord& r) {
  std::string row = r.model + "," + std::to_string(r.n_sites) + "," +
                    std::to_string(r.sector_dim) + "," + std::to_string(r.seed) + "," + r.init +
                    "," + r.observable;
  for (double x : {r.ipr, r.i8, r.delta2, r.de_avg, r.two_time_avg, r.mc_avg, r.mc_window,
                   r.fbar_ed, r.fbar_theory})
    row += "," + format_number(x);
  row += "," + std::to_string(r.n_degenerate_groups) + "," + format_number(r.wall_ms);
  return row;
}

SweepPoint run_point(const CampaignConfig& c, Subcommand command, int n) {
  const auto start = std::chrono::steady_clock::now();
  SweepPoint point;
  point.n_sites = n;

  const HamiltonianMatrix h = build_hamiltonian(c, n);
  const EigenSystem es = diagonalize(h);
  const QuenchState state = prepare_quench(es, make_origin(c, n));
  const DegeneracyReport degeneracies = detect_degeneracies(es.energies);
  point.gap_collisions = degeneracies.gap_collisions;

  const MomentVector m = moments(state);
  const PauliObservablePair pair = system_sigma_z_pair(es);
  const double fbar_ed = otoc_time_average_ed(state, pair);
  const double fbar_theory = otoc_theory(pair.scalars, m);

  for (const ObservableKind kind : c.observables) {
    const ObservableMatrix obs = kind == ObservableKind::sigma_z
                                     ? pair.w
                                     : survival_probability_observable(state, es);
    const MicrocanonicalResult mc =
        microcanonical_average_auto(obs, es, state.mean_energy, c.mc_window);
    DiagnosticsRecord r;
    r.model = to_string(c.model);
    r.n_sites = n;
    r.sector_dim = es.dim();
    r.seed = c.seed;
    r.init = to_string(c.init);
    r.observable = to_string(kind);
    r.ipr = m.i4;
    r.i8 = m.i8;
    r.delta2 = de_fluctuations(state, obs);
    r.de_avg = de_average(state, obs);
    r.two_time_avg = two_time_average(state, obs);
    r.mc_avg = mc.value;
    r.mc_window = mc.window;
    r.fbar_ed = fbar_ed;
    r.fbar_theory = fbar_theory;
    r.n_degenerate_groups = degeneracies.groups.size();
    if (!all_finite(r))
      throw NumericalError("non-finite or out-of-range diagnostics at N = " + std::to_string(n),
                           es.dim(), r.ipr);
    point.records.push_back(std::move(r));
  }

  if (command == Subcommand::dynamics) {
    const auto times = time_grid(c);
    point.sigma_z_series = expectation_series(state, pair.w, es.energies, times);
    point.survival_series = survival_probability_series(state, es.energies, times);
  }
  if (command == Subcommand::otoc || c.otoc) {
    const auto times = time_grid(c);
    point.otoc = otoc_series(state, pair, es, times);
  }
  if (command == Subcommand::ansatz) {
    point.ansatz = ansatz_residual(pair.w, es, state, pair.scalars.delta_w, pair.scalars.w_down);
    const auto [lo, hi] = default_profile_shell(state, es);
    try {
      point.profile = offdiagonal_profile(pair.w, es, lo, hi);
    } catch (const DomainError& e) {
      std::cerr << "qtherm: N = " << n << ": no off-diagonal profile (" << e.what() << ")\n";
    }
  }
  if (c.model == ModelFamily::spin_boson) {
    const double omega_0 = 1.0 / n;
    const double ipr_closed = ww_ipr(omega_0, c.gamma);
    const double delta2_closed = ww_fluctuations(omega_0, c.gamma);
    const double delta2_numeric = de_fluctuations(state, pair.w);
    point.extra = {{"ww_ipr", ipr_closed},
                   {"ww_delta2", delta2_closed},
                   {"ipr", m.i4},
                   {"delta2_sigma_z", delta2_numeric},
                   {"ipr_rel_error", std::abs(m.i4 - ipr_closed) / ipr_closed},
                   {"delta2_rel_error", std::abs(delta2_numeric - delta2_closed) / delta2_closed}};
  }

  if (degeneracies.gap_collisions > 0)
    std::cerr << "qtherm: N = " << n << ": " << degeneracies.gap_collisions
              << " coinciding energy gaps; diagonal-ensemble formulas assume none\n";

  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  for (auto& r : point.records) r.wall_ms = ms;
  return point;
}

CampaignOutcome run_campaign(const CampaignConfig& c, Subcommand command,
                             const std::filesystem::path& out_dir) {
  validate(c);
  if (command == Subcommand::spinboson && c.model != ModelFamily::spin_boson)
    throw ConfigError("the spinboson command needs model = spin_boson", 0, "model");
  std::filesystem::create_directories(out_dir);

  const std::size_t n_jobs = c.sizes.size();
  std::vector<std::optional<SweepPoint>> results(n_jobs);
  std::vector<std::string> failures(n_jobs);
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < n_jobs; i = next++) {
      try {
        results[i] = run_point(c, command, c.sizes[i]);
      } catch (const std::exception& e) {
        failures[i] = e.what();
        std::lock_guard lock(log_mutex);
        std::cerr << "qtherm: N = " << c.sizes[i] << " failed: " << e.what() << "\n";
      }
    }
  };
  {
    const std::size_t n_workers = std::min<std::size_t>(c.workers, n_jobs);
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
  }

  CampaignOutcome outcome;
  json failed = json::array();
  for (std::size_t i = 0; i < n_jobs; ++i) {
    if (results[i]) outcome.points.push_back(std::move(*results[i]));
    else failed.push_back({{"n_sites", c.sizes[i]}, {"error", failures[i]}});
  }
  outcome.exit_code = failed.empty() ? 0 : 3;

  std::string csv = sweep_csv_header() + "\n";
  for (const auto& p : outcome.points)
    for (const auto& r : p.records) csv += to_csv_row(r) + "\n";
  write_text(out_dir / "sweep.csv", csv);

  for (const auto& p : outcome.points) {
    const std::string tag = std::to_string(p.n_sites);
    if (p.sigma_z_series && p.survival_series) {
      std::string body = "t,obs,p0\n";
      for (std::size_t k = 0; k < p.sigma_z_series->times.size(); ++k)
        body += format_number(p.sigma_z_series->times[k]) + "," +
                format_number(p.sigma_z_series->values[k]) + "," +
                format_number(p.survival_series->values[k]) + "\n";
      write_text(out_dir / ("dynamics_" + tag + ".csv"), body);
    }
    if (p.otoc) {
      std::string body = "t,f_re,f_im_resid\n";
      for (std::size_t k = 0; k < p.otoc->f.times.size(); ++k)
        body += format_number(p.otoc->f.times[k]) + "," + format_number(p.otoc->f.values[k]) +
                "," + format_number(p.otoc->imag[k]) + "\n";
      write_text(out_dir / ("otoc_" + tag + ".csv"), body);
    }
    if (p.profile) {
      std::string body = "omega,mean_sq,count\n";
      for (std::size_t b = 0; b < p.profile->omega_bins.size(); ++b)
        body += format_number(p.profile->omega_bins[b]) + "," +
                format_number(p.profile->mean_sq[b]) + "," + std::to_string(p.profile->counts[b]) +
                "\n";
      write_text(out_dir / ("profile_" + tag + ".csv"), body);
    }
  }
  if (command == Subcommand::ansatz) {
    std::string body =
        "model,n_sites,sector_dim,init,residual_fro,max_abs_residual,eta_max_offblock,"
        "completeness_residual\n";
    for (const auto& p : outcome.points) {
      if (!p.ansatz || p.records.empty()) continue;
      const auto& r = p.records.front();
      body += r.model + "," + std::to_string(r.n_sites) + "," + std::to_string(r.sector_dim) +
              "," + r.init + "," + format_number(p.ansatz->residual_fro) + "," +
              format_number(p.ansatz->max_abs_residual) + "," +
              format_number(p.ansatz->eta_max_offblock) + "," +
              format_number(p.ansatz->completeness_residual) + "\n";
    }
    write_text(out_dir / "ansatz.csv", body);
  }

  // Summary: fits, acceptance flags, config echo.
  json summary;
  summary["version"] = kVersion;
  summary["csv_schema_version"] = kCsvSchemaVersion;
  summary["command"] = to_string(command);
  summary["generated_at"] = timestamp();
  summary["config"] = to_json(c);
  summary["failures"] = failed;

  json fits = json::object();
  json acceptance = json::object();
  acceptance["all_points_finite"] = failed.empty();
  for (const ObservableKind kind : c.observables) {
    std::vector<double> x, y;
    std::vector<int> sizes;
    for (const auto& p : outcome.points)
      for (const auto& r : p.records)
        if (r.observable == to_string(kind) && r.delta2 > 0.0) {
          x.push_back(r.ipr);
          y.push_back(r.delta2);
          sizes.push_back(r.n_sites);
        }
    if (x.size() < 3) continue;
    try {
      const LogLogFit f = fit_loglog_slope(x, y);
      json entry = fit_json(f);
      entry["n_points"] = x.size();
      json drift = json::array();
      for (std::size_t i = 1; i < x.size(); ++i)
        drift.push_back({{"from", sizes[i - 1]},
                         {"to", sizes[i]},
                         {"slope", std::log(y[i] / y[i - 1]) / std::log(x[i] / x[i - 1])}});
      entry["pairwise_slopes"] = drift;
      if (const auto range = expected_slope(c, kind)) {
        entry["expected_range"] = {range->lo, std::isfinite(range->hi) ? json(range->hi) : json()};
        acceptance["scaling_" + to_string(kind)] = f.slope >= range->lo && f.slope <= range->hi;
      }
      fits["delta2_vs_ipr_" + to_string(kind)] = entry;
    } catch (const std::exception& e) {
      fits["delta2_vs_ipr_" + to_string(kind)] = {{"error", e.what()}};
    }
  }
  summary["fits"] = fits;

  json otoc = json::array();
  double worst_otoc = 0.0;
  for (const auto& p : outcome.points) {
    if (p.records.empty()) continue;
    const auto& r = p.records.front();
    worst_otoc = std::max(worst_otoc, std::abs(r.fbar_ed - r.fbar_theory));
    json entry = {{"n_sites", r.n_sites},
                  {"fbar_ed", r.fbar_ed},
                  {"fbar_theory", r.fbar_theory},
                  {"otoc_bar", 2.0 * (1.0 - r.fbar_ed)}};
    if (p.otoc) entry["max_imag_residual"] = p.otoc->max_imag_residual;
    otoc.push_back(entry);
  }
  summary["otoc"] = otoc;
  if (c.init == InitKind::correlated && !outcome.points.empty())
    acceptance["otoc_theory_agreement"] = worst_otoc < 2e-2;

  if (c.model == ModelFamily::spin_boson) {
    json ww = json::array();
    bool ok = true;
    for (const auto& p : outcome.points) {
      json entry = p.extra;
      entry["n_modes"] = p.n_sites;
      ok = ok && p.extra.value("ipr_rel_error", 1.0) < 0.05 &&
           p.extra.value("delta2_rel_error", 1.0) < 0.10;
      ww.push_back(entry);
    }
    summary["wigner_weisskopf"] = ww;
    if (c.coupling == CouplingKind::constant) acceptance["wigner_weisskopf_agreement"] = ok;
  }

  json points = json::array();
  for (const auto& p : outcome.points) {
    json entry = {{"n_sites", p.n_sites}, {"gap_collisions", p.gap_collisions}};
    if (!p.records.empty()) entry["sector_dim"] = p.records.front().sector_dim;
    if (p.ansatz)
      entry["ansatz"] = {{"residual_fro", p.ansatz->residual_fro},
                         {"max_abs_residual", p.ansatz->max_abs_residual},
                         {"eta_max_offblock", p.ansatz->eta_max_offblock},
                         {"completeness_residual", p.ansatz->completeness_residual}};
    points.push_back(entry);
  }
  summary["points"] = points;
  summary["acceptance"] = acceptance;

  write_text(out_dir / "summary.json", summary.dump(2) + "\n");
  outcome.summary = std::move(summary);
  return outcome;
}

}  // namespace qtherm
