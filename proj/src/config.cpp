#include "mimosim/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mimosim {

namespace {

using nlohmann::json;

template <typename T>
void read_field(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config: bad value type for key '") + key + "'");
    }
}

constexpr const char* kKeys[] = {
    "num_cells",       "num_users",      "num_antennas",    "pilot_len",
    "frame_len",       "intercell_factor", "uplink_power",  "downlink_power",
    "num_pilots",      "max_class",      "persistence_tol", "rng_seed",
};

}  // namespace

SystemConfig load_config(const std::string& text) {
    json j;
    try {
        j = text.empty() ? json::object() : json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: parse failure: ") + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config: top level must be a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : kKeys) {
            if (key == k) {
                known = true;
                break;
            }
        }
        if (!known) throw ConfigError("config: unknown key '" + key + "'");
    }

    SystemConfig c;
    read_field(j, "num_cells", c.num_cells);
    read_field(j, "num_users", c.num_users);
    read_field(j, "num_antennas", c.num_antennas);
    read_field(j, "pilot_len", c.pilot_len);
    read_field(j, "frame_len", c.frame_len);
    read_field(j, "intercell_factor", c.intercell_factor);
    read_field(j, "uplink_power", c.uplink_power);
    read_field(j, "downlink_power", c.downlink_power);
    read_field(j, "num_pilots", c.num_pilots);
    read_field(j, "max_class", c.max_class);
    read_field(j, "persistence_tol", c.persistence_tol);
    read_field(j, "rng_seed", c.rng_seed);
    return validate(c);
}

SystemConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_config(buf.str());
}

SystemConfig validate(const SystemConfig& config) {
    auto fail = [](const std::string& field, const std::string& bound) {
        throw ValidationError("config: " + field + " " + bound);
    };
    if (config.num_cells < 1) fail("num_cells", "must be >= 1");
    if (config.num_users < 1) fail("num_users", "must be >= 1");
    if (config.num_antennas < 1) fail("num_antennas", "must be >= 1");
    if (config.pilot_len < 1) fail("pilot_len", "must be >= 1");
    if (config.frame_len < 1) fail("frame_len", "must be >= 1");
    if (config.pilot_len >= config.frame_len) {
        fail("pilot_len", "must be < frame_len (a frame needs data symbols)");
    }
    if (config.intercell_factor < 0.0 || config.intercell_factor > 1.0) {
        fail("intercell_factor", "must be in [0, 1]");
    }
    if (!(config.uplink_power > 0.0)) fail("uplink_power", "must be > 0");
    if (!(config.downlink_power > 0.0)) fail("downlink_power", "must be > 0");
    if (config.num_pilots < 1) fail("num_pilots", "must be >= 1");
    if (config.max_class < 1) fail("max_class", "must be >= 1");
    if (!(config.persistence_tol > 0.0 && config.persistence_tol < 1.0)) {
        fail("persistence_tol", "must be in (0, 1)");
    }
    return config;
}

std::string emit_config(const SystemConfig& c) {
    json j;
    j["num_cells"] = c.num_cells;
    j["num_users"] = c.num_users;
    j["num_antennas"] = c.num_antennas;
    j["pilot_len"] = c.pilot_len;
    j["frame_len"] = c.frame_len;
    j["intercell_factor"] = c.intercell_factor;
    j["uplink_power"] = c.uplink_power;
    j["downlink_power"] = c.downlink_power;
    j["num_pilots"] = c.num_pilots;
    j["max_class"] = c.max_class;
    j["persistence_tol"] = c.persistence_tol;
    j["rng_seed"] = c.rng_seed;
    return j.dump(2);
}

}  // namespace mimosim
