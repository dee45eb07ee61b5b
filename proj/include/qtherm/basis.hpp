#pragma once

// Product-state bases: spin-1/2 chains (full space or fixed excitation
// number) and the single-excitation manifold of the spin-boson model.
//
// Site 0 is the system spin. Bit i of a configuration is set when site i is
// in |up>.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace qtherm {

using Bits = std::uint32_t;

inline constexpr int kMaxSites = 24;

struct SpinConfiguration {
  Bits bits = 0;
  int n_sites = 0;

  int excitations() const noexcept { return std::popcount(bits); }
  bool is_up(int site) const noexcept { return (bits >> site) & 1u; }
};

class SectorBasis {
 public:
  int n_sites() const noexcept { return n_sites_; }
  /// Fixed excitation count, or nullopt for the full 2^N space.
  std::optional<int> n_excitations() const noexcept { return n_excitations_; }
  std::size_t size() const noexcept { return configs_.size(); }
  Bits operator[](std::size_t i) const noexcept { return configs_[i]; }
  std::span<const Bits> configs() const noexcept { return configs_; }

  /// Ordinal of `bits`; throws LookupError when absent.
  std::size_t locate(Bits bits) const;
  /// Ordinal of `bits`, or nullopt when absent.
  std::optional<std::size_t> find(Bits bits) const noexcept;

 private:
  friend SectorBasis enumerate_sector(int, std::optional<int>);
  SectorBasis(int n_sites, std::optional<int> n_excitations, std::vector<Bits> configs)
      : n_sites_(n_sites), n_excitations_(n_excitations), configs_(std::move(configs)) {}

  int n_sites_;
  std::optional<int> n_excitations_;
  std::vector<Bits> configs_;  // strictly increasing
};

/// All configurations of `n_sites` spins with the given number of up spins
/// (or every configuration when `n_excitations` is nullopt), ascending by
/// bit pattern.
SectorBasis enumerate_sector(int n_sites, std::optional<int> n_excitations);

/// Ordinal of `config` in `basis`; throws LookupError when outside the sector.
std::size_t locate(const SectorBasis& basis, SpinConfiguration config);

/// Single-excitation manifold of a spin coupled to `n_modes` bosonic modes.
/// Ordinal 0 is |up,0>, ordinal n (1..N) is |down,1_n>.
struct SpinBosonBasis {
  int n_modes = 0;

  static constexpr std::size_t kExcitedSpin = 0;

  std::size_t size() const noexcept { return static_cast<std::size_t>(n_modes) + 1; }
  std::size_t mode_state(int n) const noexcept { return static_cast<std::size_t>(n); }
};

using AnyBasis = std::variant<SectorBasis, SpinBosonBasis>;
using BasisPtr = std::shared_ptr<const AnyBasis>;

std::size_t basis_size(const AnyBasis& basis) noexcept;

/// True when basis state `i` has the system spin in |up>.
bool system_up(const AnyBasis& basis, std::size_t i) noexcept;

/// Ordinals of all basis states with the system spin up, ascending.
std::vector<std::size_t> system_up_block(const AnyBasis& basis);

/// Per-state eigenvalue of the system sigma_z (+1 up, -1 down).
std::vector<double> system_sigma_z(const AnyBasis& basis);

}  // namespace qtherm
