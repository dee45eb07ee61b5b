#pragma once

// Campaign configuration: a flat `key = value` text file, one entry per line,
// `#` starts a comment. Unknown keys are rejected.
//
//   model        nn_xxx | mixed_field | spin_boson
//   sizes        comma list of N and/or ranges a..b
//   sector       auto | full | <excitation count>
//   init         correlated | neel | bath_ground | eigenstate:<index>
//   observables  comma list of sigma_z, survival
//   grid         linear | log      (t_min used by log grids)
//   t_max, n_points, t_min, otoc (true|false), seed, workers, out, mc_window
//   model parameters: b_z_system j j_prime b_x_bath b_z_bath j_x j_z j_x_sb
//                     attach_site omega_z gamma coupling (constant|random)

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qtherm/models.hpp"

namespace qtherm {

enum class ModelFamily { nn_xxx, mixed_field, spin_boson };
enum class InitKind { correlated, neel, bath_ground, eigenstate };
enum class ObservableKind { sigma_z, survival };
enum class GridKind { linear, log };

struct SectorPolicy {
  enum class Kind { automatic, full, fixed } kind = Kind::automatic;
  int excitations = 0;
};

struct CampaignConfig {
  ModelFamily model = ModelFamily::nn_xxx;
  std::vector<int> sizes;
  SectorPolicy sector;
  InitKind init = InitKind::correlated;
  std::size_t eigenstate_index = 0;
  std::vector<ObservableKind> observables{ObservableKind::sigma_z};

  NnXxxParams nn_xxx;            // n_sites filled per sweep point
  MixedFieldChainParams mixed;   // n_sites filled per sweep point
  double omega_z = 0.6;
  double gamma = 0.2;
  CouplingKind coupling = CouplingKind::constant;

  GridKind grid = GridKind::linear;
  double t_max = 200.0;
  double t_min = 0.01;
  std::size_t n_points = 2000;
  bool otoc = false;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string out_dir = "out";
  double mc_window = 0.02;  ///< fraction of the spectral width
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line, std::string field)
      : std::runtime_error(format(message, line, field)), line_(line), field_(std::move(field)) {}

  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string format(const std::string& message, int line, const std::string& field);
  int line_;
  std::string field_;
};

CampaignConfig parse_config(std::string_view text);
CampaignConfig load_config(const std::filesystem::path& path);

/// Cross-field checks; throws ConfigError.
void validate(const CampaignConfig& config);

/// Excitation count used for a chain of `n_sites` (nullopt = full space).
std::optional<int> resolve_sector(const CampaignConfig& config, int n_sites);

std::string to_string(ModelFamily m);
std::string to_string(InitKind k);
std::string to_string(ObservableKind k);

nlohmann::json to_json(const CampaignConfig& config);

}  // namespace qtherm
