#include "cfacq/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace cfacq {

namespace {

enum class KeyKind { real, integer, boolean, seed };

struct KeySpec {
  const char* name;
  KeyKind kind;
  const char* default_value;
};

// Reference geometry and modeling defaults; desk-scale grids sized so every
// propagation leg passes sampling validation with wide margin.
constexpr KeySpec kKeys[] = {
    {"geometry.wavelength_um", KeyKind::real, "0.532"},
    {"geometry.d1_um", KeyKind::real, "60000"},
    {"geometry.d2_um", KeyKind::real, "75000"},
    {"geometry.d_um", KeyKind::real, "135000"},
    {"grids.source.center_um", KeyKind::real, "0"},
    {"grids.source.spacing_um", KeyKind::real, "1.95"},
    {"grids.source.count", KeyKind::integer, "1664"},
    {"grids.object.center_um", KeyKind::real, "0"},
    {"grids.object.spacing_um", KeyKind::real, "1.171875"},
    {"grids.object.count", KeyKind::integer, "1024"},
    {"grids.detector.center_um", KeyKind::real, "0"},
    {"grids.detector.spacing_um", KeyKind::real, "1"},
    {"grids.detector.count", KeyKind::integer, "801"},
    {"object.cos_freq_per_um", KeyKind::real, "0.05"},
    {"object.rect_offset_um", KeyKind::real, "150"},
    {"object.rect_width_um", KeyKind::real, "105"},
    {"object.support_width_um", KeyKind::real, "1000"},
    {"plates.p_prime_on", KeyKind::boolean, "true"},
    {"plates.p_prime_phase_rad", KeyKind::real, "-0.78539816339744828"},
    {"source.mean_intensity", KeyKind::real, "1"},
    {"source.n_realizations", KeyKind::integer, "20000"},
    {"run.shared_noise", KeyKind::boolean, "false"},
    {"run.chunk_size", KeyKind::integer, "128"},
    {"seed", KeyKind::seed, "12345"},
};

const KeySpec* find_key(const std::string& name) {
  for (const auto& spec : kKeys)
    if (name == spec.name) return &spec;
  return nullptr;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_real(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const double parsed = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || value.empty() || errno == ERANGE)
    throw ConfigError(ConfigErrorCode::schema,
                      "key '" + key + "': cannot parse '" + value +
                          "' as a number");
  return parsed;
}

long long parse_integer(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const long long parsed = std::strtoll(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty() || errno == ERANGE)
    throw ConfigError(ConfigErrorCode::schema,
                      "key '" + key + "': cannot parse '" + value +
                          "' as an integer");
  return parsed;
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty() ||
      errno == ERANGE || value.front() == '-')
    throw ConfigError(ConfigErrorCode::schema,
                      "key '" + key + "': cannot parse '" + value +
                          "' as an unsigned integer");
  return parsed;
}

bool parse_boolean(const std::string& key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError(ConfigErrorCode::schema,
                    "key '" + key + "': expected 'true' or 'false', got '" +
                        value + "'");
}

std::string normalize(const KeySpec& spec, const std::string& value) {
  char buffer[64];
  switch (spec.kind) {
    case KeyKind::real:
      std::snprintf(buffer, sizeof(buffer), "%.17g",
                    parse_real(spec.name, value));
      return buffer;
    case KeyKind::integer:
      std::snprintf(buffer, sizeof(buffer), "%lld",
                    parse_integer(spec.name, value));
      return buffer;
    case KeyKind::seed:
      std::snprintf(buffer, sizeof(buffer), "%llu",
                    static_cast<unsigned long long>(
                        parse_seed(spec.name, value)));
      return buffer;
    case KeyKind::boolean:
      return parse_boolean(spec.name, value) ? "true" : "false";
  }
  return value;
}

Grid make_grid(const std::map<std::string, std::string>& kv,
               const std::string& prefix) {
  const double center = parse_real(prefix + ".center_um",
                                   kv.at(prefix + ".center_um"));
  const double spacing = parse_real(prefix + ".spacing_um",
                                    kv.at(prefix + ".spacing_um"));
  const long long count =
      parse_integer(prefix + ".count", kv.at(prefix + ".count"));
  if (!(spacing > 0.0) || count < 1 || count > (1 << 22))
    throw ConfigError(ConfigErrorCode::value,
                      "grid '" + prefix +
                          "': spacing must be positive and count in [1, 2^22]");
  return Grid(center, spacing, static_cast<int>(count));
}

}  // namespace

const char* ConfigError::code_name() const {
  switch (code) {
    case ConfigErrorCode::schema:
      return "schema";
    case ConfigErrorCode::value:
      return "value";
    case ConfigErrorCode::geometry:
      return "geometry";
    case ConfigErrorCode::sampling:
      return "sampling";
  }
  return "unknown";
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t hash = 14695981039346656037ull;
  for (const unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::map<std::string, std::string> default_config_map() {
  std::map<std::string, std::string> kv;
  for (const auto& spec : kKeys) kv[spec.name] = spec.default_value;
  return kv;
}

RunConfig parse_config(
    const std::string& text,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  std::map<std::string, std::string> given;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError(ConfigErrorCode::schema,
                        "line " + std::to_string(line_no) +
                            ": expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (find_key(key) == nullptr)
      throw ConfigError(ConfigErrorCode::schema, "unknown key '" + key + "'");
    if (given.count(key) != 0)
      throw ConfigError(ConfigErrorCode::schema,
                        "duplicate key '" + key + "'");
    given[key] = value;
  }
  for (const auto& [key, value] : overrides) {
    if (find_key(key) == nullptr)
      throw ConfigError(ConfigErrorCode::schema, "unknown key '" + key + "'");
    given[key] = value;
  }

  // merge onto defaults, normalizing every value
  std::map<std::string, std::string> kv;
  for (const auto& spec : kKeys) {
    const auto it = given.find(spec.name);
    kv[spec.name] =
        normalize(spec, it == given.end() ? spec.default_value : it->second);
  }

  RunConfig rc;

  rc.experiment.geometry.wavelength_um =
      parse_real("geometry.wavelength_um", kv["geometry.wavelength_um"]);
  rc.experiment.geometry.d1_um =
      parse_real("geometry.d1_um", kv["geometry.d1_um"]);
  rc.experiment.geometry.d2_um =
      parse_real("geometry.d2_um", kv["geometry.d2_um"]);
  rc.experiment.geometry.d_um = parse_real("geometry.d_um", kv["geometry.d_um"]);
  try {
    rc.experiment.geometry.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(ConfigErrorCode::geometry, e.what());
  }

  try {
    rc.experiment.source.grid = make_grid(kv, "grids.source");
    rc.experiment.object_grid = make_grid(kv, "grids.object");
    rc.experiment.detector_grid = make_grid(kv, "grids.detector");

    rc.object.cos_freq_per_um =
        parse_real("object.cos_freq_per_um", kv["object.cos_freq_per_um"]);
    rc.object.rect_offset_um =
        parse_real("object.rect_offset_um", kv["object.rect_offset_um"]);
    rc.object.rect_width_um =
        parse_real("object.rect_width_um", kv["object.rect_width_um"]);
    rc.object.support_width_um =
        parse_real("object.support_width_um", kv["object.support_width_um"]);
    rc.object.validate();
    rc.experiment.transmittance =
        sample_transmittance(rc.experiment.object_grid, rc.object);

    rc.experiment.plates = PlatePair::standard(
        parse_boolean("plates.p_prime_on", kv["plates.p_prime_on"]),
        parse_real("plates.p_prime_phase_rad", kv["plates.p_prime_phase_rad"]));
    rc.experiment.plates.validate();

    rc.experiment.source.mean_intensity =
        parse_real("source.mean_intensity", kv["source.mean_intensity"]);
    rc.experiment.source.master_seed = parse_seed("seed", kv["seed"]);
    rc.experiment.source.validate();

    const long long n =
        parse_integer("source.n_realizations", kv["source.n_realizations"]);
    if (n < 1 || n > (1ll << 31))
      throw std::invalid_argument(
          "source.n_realizations must be in [1, 2^31]");
    rc.experiment.realizations = static_cast<int>(n);

    rc.experiment.shared_noise =
        parse_boolean("run.shared_noise", kv["run.shared_noise"]);
    const long long chunk =
        parse_integer("run.chunk_size", kv["run.chunk_size"]);
    if (chunk < 1 || chunk > (1 << 20))
      throw std::invalid_argument("run.chunk_size must be in [1, 2^20]");
    rc.experiment.chunk_size = static_cast<int>(chunk);

    if (rc.experiment.detector_grid.center_um != 0.0)
      throw std::invalid_argument("detector grid must be centered at 0");
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(ConfigErrorCode::value, e.what());
  }

  for (const auto& leg :
       {std::tuple{&rc.experiment.source.grid, &rc.experiment.object_grid,
                   rc.experiment.geometry.d1_um, "x->xi"},
        std::tuple{&rc.experiment.object_grid, &rc.experiment.detector_grid,
                   rc.experiment.geometry.d2_um, "xi->eta"},
        std::tuple{&rc.experiment.source.grid, &rc.experiment.detector_grid,
                   rc.experiment.geometry.d_um, "x->eta"}}) {
    const SamplingReport r =
        validate_sampling(*std::get<0>(leg), *std::get<1>(leg),
                          std::get<2>(leg),
                          rc.experiment.geometry.wavelength_um);
    if (!r.pass)
      throw ConfigError(ConfigErrorCode::sampling,
                        std::string("leg ") + std::get<3>(leg) + ": " +
                            r.detail);
  }

  std::ostringstream canonical;
  for (const auto& [key, value] : kv) canonical << key << " = " << value << "\n";
  rc.canonical_text = canonical.str();
  char digest[17];
  std::snprintf(digest, sizeof(digest), "%016llx",
                static_cast<unsigned long long>(fnv1a64(rc.canonical_text)));
  rc.digest = digest;
  return rc;
}

RunConfig default_config() { return parse_config(""); }

}  // namespace cfacq
