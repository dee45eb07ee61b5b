#include "qtherm/basis.hpp"

#include <algorithm>
#include <string>

#include "qtherm/errors.hpp"

namespace qtherm {
namespace {

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::size_t result = 1;
  for (int i = 1; i <= k; ++i) result = result * static_cast<std::size_t>(n - k + i) / i;
  return result;
}

// Next larger integer with the same popcount (Gosper).
Bits next_same_popcount(Bits x) {
  const Bits smallest = x & (~x + 1u);
  const Bits ripple = x + smallest;
  return ripple | (((x ^ ripple) >> 2) / smallest);
}

}  // namespace

SectorBasis enumerate_sector(int n_sites, std::optional<int> n_excitations) {
  if (n_sites < 1) throw ParameterError("n_sites must be positive, got " + std::to_string(n_sites));
  if (n_sites > kMaxSites)
    throw CapacityError("n_sites " + std::to_string(n_sites) + " exceeds the cap of " +
                        std::to_string(kMaxSites));
  if (n_excitations && (*n_excitations < 0 || *n_excitations > n_sites))
    throw ParameterError("excitation count " + std::to_string(*n_excitations) +
                         " outside [0, " + std::to_string(n_sites) + "]");

  std::vector<Bits> configs;
  const Bits full = Bits{1} << n_sites;
  if (!n_excitations) {
    configs.resize(full);
    for (Bits b = 0; b < full; ++b) configs[b] = b;
  } else {
    const int k = *n_excitations;
    configs.reserve(binomial(n_sites, k));
    if (k == 0) {
      configs.push_back(0);
    } else {
      for (Bits b = (Bits{1} << k) - 1; b < full; b = next_same_popcount(b)) {
        configs.push_back(b);
        if (k == n_sites) break;
      }
    }
  }
  return SectorBasis(n_sites, n_excitations, std::move(configs));
}

std::optional<std::size_t> SectorBasis::find(Bits bits) const noexcept {
  auto it = std::lower_bound(configs_.begin(), configs_.end(), bits);
  if (it == configs_.end() || *it != bits) return std::nullopt;
  return static_cast<std::size_t>(it - configs_.begin());
}

std::size_t SectorBasis::locate(Bits bits) const {
  if (auto i = find(bits)) return *i;
  throw LookupError("configuration " + std::to_string(bits) + " is not in the sector");
}

std::size_t locate(const SectorBasis& basis, SpinConfiguration config) {
  if (config.n_sites != basis.n_sites())
    throw LookupError("configuration has " + std::to_string(config.n_sites) +
                      " sites, basis has " + std::to_string(basis.n_sites()));
  return basis.locate(config.bits);
}

std::size_t basis_size(const AnyBasis& basis) noexcept {
  return std::visit([](const auto& b) { return b.size(); }, basis);
}

bool system_up(const AnyBasis& basis, std::size_t i) noexcept {
  if (const auto* sector = std::get_if<SectorBasis>(&basis)) return (*sector)[i] & 1u;
  return i == SpinBosonBasis::kExcitedSpin;
}

std::vector<std::size_t> system_up_block(const AnyBasis& basis) {
  std::vector<std::size_t> block;
  const std::size_t n = basis_size(basis);
  for (std::size_t i = 0; i < n; ++i)
    if (system_up(basis, i)) block.push_back(i);
  return block;
}

std::vector<double> system_sigma_z(const AnyBasis& basis) {
  const std::size_t n = basis_size(basis);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = system_up(basis, i) ? 1.0 : -1.0;
  return values;
}

}  // namespace qtherm
