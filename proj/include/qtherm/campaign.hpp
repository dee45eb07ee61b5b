#pragma once

// Sweep runner: one independent job per system size (build, diagonalize,
// diagnose), scheduled over a bounded worker pool and serialized in
// config order.

#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "qtherm/ansatz.hpp"
#include "qtherm/config.hpp"
#include "qtherm/otoc.hpp"
#include "qtherm/quench.hpp"
#include "qtherm/spectral.hpp"

namespace qtherm {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kCsvSchemaVersion = 1;

enum class Subcommand { sweep, dynamics, otoc, spinboson, ansatz };

std::string to_string(Subcommand s);

struct DiagnosticsRecord {
  std::string model;
  int n_sites = 0;
  std::size_t sector_dim = 0;
  std::uint64_t seed = 0;
  std::string init;
  std::string observable;
  double ipr = 0.0;
  double i8 = 0.0;
  double delta2 = 0.0;
  double de_avg = 0.0;
  double two_time_avg = 0.0;
  double mc_avg = 0.0;
  double mc_window = 0.0;
  double fbar_ed = 0.0;
  double fbar_theory = 0.0;
  std::size_t n_degenerate_groups = 0;
  double wall_ms = 0.0;
};

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_stderr = 0.0;
  double ci_low = 0.0;   ///< 95% confidence interval on the slope
  double ci_high = 0.0;
};

/// Ordinary least squares of log y on log x. Needs >= 3 points, all positive.
LogLogFit fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Everything computed for one system size.
struct SweepPoint {
  int n_sites = 0;
  std::vector<DiagnosticsRecord> records;  ///< one per observable
  std::size_t gap_collisions = 0;
  std::optional<TimeSeries> sigma_z_series;
  std::optional<TimeSeries> survival_series;
  std::optional<OtocSeries> otoc;
  std::optional<AnsatzReport> ansatz;
  std::optional<OffDiagonalProfile> profile;
  nlohmann::json extra;  ///< model-specific scalars (Wigner-Weisskopf comparison)
};

/// Runs one sweep point; throws on numerical failure.
SweepPoint run_point(const CampaignConfig& config, Subcommand command, int n_sites);

struct CampaignOutcome {
  int exit_code = 0;  ///< 0 success, 3 numerical failure in some point
  std::vector<SweepPoint> points;
  nlohmann::json summary;
};

/// Runs every size and writes sweep.csv, summary.json and the per-command
/// series files under `out_dir`.
CampaignOutcome run_campaign(const CampaignConfig& config, Subcommand command,
                             const std::filesystem::path& out_dir);

std::string format_number(double x);
std::string sweep_csv_header();
std::string to_csv_row(const DiagnosticsRecord& r);

}  // namespace qtherm
