#include "qtherm/config.hpp"

#include <bit>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qtherm/quench.hpp"

namespace qtherm {
namespace {

struct Entry {
  std::string value;
  int line;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  return parts;
}

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  int line(const std::string& key) const { return has(key) ? entries_.at(key).line : 0; }
  const std::string& raw(const std::string& key) const { return entries_.at(key).value; }

  double real(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const auto& v = raw(key);
    try {
      std::size_t used = 0;
      const double x = std::stod(v, &used);
      if (used == v.size()) return x;
    } catch (const std::exception&) {
    }
    throw ConfigError("expected a number, got '" + v + "'", line(key), key);
  }

  template <class Int>
  Int integer(const std::string& key, Int fallback) const {
    if (!has(key)) return fallback;
    return parse_int<Int>(raw(key), key);
  }

  template <class Int>
  Int parse_int(const std::string& v, const std::string& key) const {
    Int x{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || ptr != v.data() + v.size())
      throw ConfigError("expected an integer, got '" + v + "'", line(key), key);
    return x;
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const auto& v = raw(key);
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw ConfigError("expected true or false, got '" + v + "'", line(key), key);
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    return has(key) ? raw(key) : fallback;
  }

 private:
  std::map<std::string, Entry> entries_;
};

const std::set<std::string> kKnownKeys = {
    "model",    "sizes",      "sector",   "init",      "observables", "grid",
    "t_max",    "n_points",   "t_min",    "otoc",      "seed",        "workers",
    "out",      "mc_window",  "b_z_system", "j",       "j_prime",     "b_x_bath",
    "b_z_bath", "j_x",        "j_z",      "j_x_sb",    "attach_site", "omega_z",
    "gamma",    "coupling"};

std::vector<int> parse_sizes(const Reader& r) {
  std::vector<int> sizes;
  for (const auto& item : split(r.raw("sizes"), ',')) {
    if (item.empty()) continue;
    if (const auto dots = item.find(".."); dots != std::string::npos) {
      const int lo = r.parse_int<int>(trim(item.substr(0, dots)), "sizes");
      const int hi = r.parse_int<int>(trim(item.substr(dots + 2)), "sizes");
      if (hi < lo) throw ConfigError("empty range '" + item + "'", r.line("sizes"), "sizes");
      for (int n = lo; n <= hi; ++n) sizes.push_back(n);
    } else {
      sizes.push_back(r.parse_int<int>(item, "sizes"));
    }
  }
  return sizes;
}

}  // namespace

std::string ConfigError::format(const std::string& message, int line, const std::string& field) {
  std::string out = "config";
  if (line > 0) out += " line " + std::to_string(line);
  if (!field.empty()) out += " field '" + field + "'";
  return out + ": " + message;
}

CampaignConfig parse_config(std::string_view text) {
  std::map<std::string, Entry> entries;
  std::istringstream in{std::string(text)};
  std::string raw_line;
  int line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    if (const auto hash = raw_line.find('#'); hash != std::string::npos) raw_line.resize(hash);
    const std::string line = trim(raw_line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no, "");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!kKnownKeys.count(key)) throw ConfigError("unknown key", line_no, key);
    if (entries.count(key)) throw ConfigError("duplicate key", line_no, key);
    if (value.empty()) throw ConfigError("missing value", line_no, key);
    entries.emplace(key, Entry{value, line_no});
  }

  const Reader r(std::move(entries));
  CampaignConfig c;

  if (!r.has("model")) throw ConfigError("required key missing", 0, "model");
  const auto& model = r.raw("model");
  if (model == "nn_xxx") c.model = ModelFamily::nn_xxx;
  else if (model == "mixed_field") c.model = ModelFamily::mixed_field;
  else if (model == "spin_boson") c.model = ModelFamily::spin_boson;
  else throw ConfigError("unknown model '" + model + "'", r.line("model"), "model");

  if (!r.has("sizes")) throw ConfigError("required key missing", 0, "sizes");
  c.sizes = parse_sizes(r);

  if (r.has("sector")) {
    const auto& s = r.raw("sector");
    if (s == "auto") c.sector.kind = SectorPolicy::Kind::automatic;
    else if (s == "full") c.sector.kind = SectorPolicy::Kind::full;
    else c.sector = {SectorPolicy::Kind::fixed, r.parse_int<int>(s, "sector")};
  }

  if (r.has("init")) {
    const auto& s = r.raw("init");
    if (s == "correlated") c.init = InitKind::correlated;
    else if (s == "neel") c.init = InitKind::neel;
    else if (s == "bath_ground") c.init = InitKind::bath_ground;
    else if (s.rfind("eigenstate:", 0) == 0) {
      c.init = InitKind::eigenstate;
      c.eigenstate_index = r.parse_int<std::size_t>(s.substr(11), "init");
    } else {
      throw ConfigError("unknown initial state '" + s + "'", r.line("init"), "init");
    }
  }

  if (r.has("observables")) {
    c.observables.clear();
    for (const auto& o : split(r.raw("observables"), ',')) {
      if (o == "sigma_z") c.observables.push_back(ObservableKind::sigma_z);
      else if (o == "survival") c.observables.push_back(ObservableKind::survival);
      else throw ConfigError("unknown observable '" + o + "'", r.line("observables"), "observables");
    }
  }

  if (r.has("grid")) {
    const auto& g = r.raw("grid");
    if (g == "linear") c.grid = GridKind::linear;
    else if (g == "log") c.grid = GridKind::log;
    else throw ConfigError("grid must be linear or log", r.line("grid"), "grid");
  }
  c.t_max = r.real("t_max", c.t_max);
  c.t_min = r.real("t_min", c.t_min);
  c.n_points = r.integer<std::size_t>("n_points", c.n_points);
  c.otoc = r.boolean("otoc", c.otoc);
  c.seed = r.integer<std::uint64_t>("seed", c.seed);
  c.workers = r.integer<unsigned>("workers", c.workers);
  c.out_dir = r.text("out", c.out_dir);
  c.mc_window = r.real("mc_window", c.mc_window);

  c.nn_xxx.b_z_system = r.real("b_z_system", c.nn_xxx.b_z_system);
  c.nn_xxx.j = r.real("j", c.nn_xxx.j);
  c.nn_xxx.j_prime = r.real("j_prime", c.nn_xxx.j_prime);

  c.mixed.b_z_system = r.real("b_z_system", c.mixed.b_z_system);
  c.mixed.b_x_bath = r.real("b_x_bath", c.mixed.b_x_bath);
  c.mixed.b_z_bath = r.real("b_z_bath", c.mixed.b_z_bath);
  c.mixed.j_x = r.real("j_x", c.mixed.j_x);
  c.mixed.j_z = r.real("j_z", c.mixed.j_z);
  c.mixed.j_x_sb = r.real("j_x_sb", c.mixed.j_x_sb);
  c.mixed.attach_site = r.integer<int>("attach_site", c.mixed.attach_site);

  c.omega_z = r.real("omega_z", c.omega_z);
  c.gamma = r.real("gamma", c.gamma);
  if (r.has("coupling")) {
    const auto& s = r.raw("coupling");
    if (s == "constant") c.coupling = CouplingKind::constant;
    else if (s == "random") c.coupling = CouplingKind::random;
    else throw ConfigError("coupling must be constant or random", r.line("coupling"), "coupling");
  }

  validate(c);
  return c;
}

CampaignConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string(), 0, "");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::optional<int> resolve_sector(const CampaignConfig& c, int n_sites) {
  switch (c.sector.kind) {
    case SectorPolicy::Kind::full: return std::nullopt;
    case SectorPolicy::Kind::fixed: return c.sector.excitations;
    case SectorPolicy::Kind::automatic: break;
  }
  if (c.model == ModelFamily::mixed_field) return std::nullopt;
  switch (c.init) {
    case InitKind::correlated: return std::popcount(correlated_configuration(n_sites));
    case InitKind::neel: return std::popcount(neel_configuration(n_sites));
    default: return std::nullopt;
  }
}

void validate(const CampaignConfig& c) {
  if (c.sizes.empty()) throw ConfigError("at least one size is required", 0, "sizes");
  if (!(c.t_max > 0.0)) throw ConfigError("t_max must be positive", 0, "t_max");
  if (c.n_points < 2) throw ConfigError("n_points must be at least 2", 0, "n_points");
  if (c.grid == GridKind::log && !(c.t_min > 0.0 && c.t_min < c.t_max))
    throw ConfigError("log grid needs 0 < t_min < t_max", 0, "t_min");
  if (c.workers < 1) throw ConfigError("workers must be at least 1", 0, "workers");
  if (!(c.mc_window > 0.0)) throw ConfigError("mc_window must be positive", 0, "mc_window");
  if (c.observables.empty()) throw ConfigError("at least one observable is required", 0, "observables");

  for (int n : c.sizes) {
    switch (c.model) {
      case ModelFamily::nn_xxx:
        if (n < 2 || n > 16)
          throw ConfigError("NN-XXX sizes must lie in [2, 16], got " + std::to_string(n), 0, "sizes");
        break;
      case ModelFamily::mixed_field:
        if (n < 2 || n > 13)
          throw ConfigError("mixed-field sizes must lie in [2, 13], got " + std::to_string(n), 0,
                            "sizes");
        if (c.mixed.attach_site > n)
          throw ConfigError("attach_site exceeds chain length " + std::to_string(n), 0,
                            "attach_site");
        break;
      case ModelFamily::spin_boson:
        if (n < 2 || n > 4000)
          throw ConfigError("spin-boson mode counts must lie in [2, 4000]", 0, "sizes");
        break;
    }
    if (c.model != ModelFamily::spin_boson && c.sector.kind == SectorPolicy::Kind::fixed &&
        (c.sector.excitations < 0 || c.sector.excitations > n))
      throw ConfigError("excitation count outside [0, " + std::to_string(n) + "]", 0, "sector");
  }

  if (c.model == ModelFamily::mixed_field && c.sector.kind == SectorPolicy::Kind::fixed)
    throw ConfigError("the mixed-field chain does not conserve magnetization; use sector = full", 0,
                      "sector");
  if (c.init == InitKind::bath_ground && c.model != ModelFamily::mixed_field)
    throw ConfigError("bath_ground is defined for the mixed-field chain only", 0, "init");
  if (c.model == ModelFamily::spin_boson && c.init == InitKind::neel)
    throw ConfigError("the spin-boson model has no Neel state", 0, "init");
  if (c.model == ModelFamily::spin_boson && !(c.gamma > 0.0))
    throw ConfigError("gamma must be positive", 0, "gamma");
  if (c.model == ModelFamily::nn_xxx && c.nn_xxx.j == 0.0)
    throw ConfigError("J must be non-zero", 0, "j");
  if (c.model != ModelFamily::spin_boson) {
    for (int n : c.sizes) {
      const auto k = resolve_sector(c, n);
      if (!k) continue;
      Bits bits = 0;
      if (c.init == InitKind::correlated) bits = correlated_configuration(n);
      else if (c.init == InitKind::neel) bits = neel_configuration(n);
      else continue;
      if (std::popcount(bits) != *k)
        throw ConfigError("initial state at N = " + std::to_string(n) + " has " +
                              std::to_string(std::popcount(bits)) +
                              " excitations, sector holds " + std::to_string(*k),
                          0, "sector");
    }
  }
}

std::string to_string(ModelFamily m) {
  switch (m) {
    case ModelFamily::nn_xxx: return "nn_xxx";
    case ModelFamily::mixed_field: return "mixed_field";
    case ModelFamily::spin_boson: return "spin_boson";
  }
  return "?";
}

std::string to_string(InitKind k) {
  switch (k) {
    case InitKind::correlated: return "correlated";
    case InitKind::neel: return "neel";
    case InitKind::bath_ground: return "bath_ground";
    case InitKind::eigenstate: return "eigenstate";
  }
  return "?";
}

std::string to_string(ObservableKind k) {
  return k == ObservableKind::sigma_z ? "sigma_z" : "survival";
}

nlohmann::json to_json(const CampaignConfig& c) {
  nlohmann::json j;
  j["model"] = to_string(c.model);
  j["sizes"] = c.sizes;
  switch (c.sector.kind) {
    case SectorPolicy::Kind::automatic: j["sector"] = "auto"; break;
    case SectorPolicy::Kind::full: j["sector"] = "full"; break;
    case SectorPolicy::Kind::fixed: j["sector"] = c.sector.excitations; break;
  }
  j["init"] = c.init == InitKind::eigenstate
                  ? "eigenstate:" + std::to_string(c.eigenstate_index)
                  : to_string(c.init);
  auto& obs = j["observables"] = nlohmann::json::array();
  for (auto o : c.observables) obs.push_back(to_string(o));
  switch (c.model) {
    case ModelFamily::nn_xxx:
      j["b_z_system"] = c.nn_xxx.b_z_system;
      j["j"] = c.nn_xxx.j;
      j["j_prime"] = c.nn_xxx.j_prime;
      break;
    case ModelFamily::mixed_field:
      j["b_z_system"] = c.mixed.b_z_system;
      j["b_x_bath"] = c.mixed.b_x_bath;
      j["b_z_bath"] = c.mixed.b_z_bath;
      j["j_x"] = c.mixed.j_x;
      j["j_z"] = c.mixed.j_z;
      j["j_x_sb"] = c.mixed.j_x_sb;
      j["attach_site"] = c.mixed.attach_site;
      break;
    case ModelFamily::spin_boson:
      j["omega_z"] = c.omega_z;
      j["gamma"] = c.gamma;
      j["coupling"] = c.coupling == CouplingKind::constant ? "constant" : "random";
      break;
  }
  j["grid"] = c.grid == GridKind::linear ? "linear" : "log";
  j["t_max"] = c.t_max;
  j["t_min"] = c.t_min;
  j["n_points"] = c.n_points;
  j["otoc"] = c.otoc;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["out"] = c.out_dir;
  j["mc_window"] = c.mc_window;
  return j;
}

}  // namespace qtherm
