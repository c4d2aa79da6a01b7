#include "lgbeam/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace lgbeam {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
}

void reject_unknown(const json& j, const std::string& path,
                    std::initializer_list<const char*> allowed) {
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items())
        if (!keys.count(key)) fail(path.empty() ? key : path + "." + key, "unknown key");
}

double get_number(const json& j, const std::string& path, const char* key,
                  std::optional<double> fallback = std::nullopt) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        fail(path + "." + key, "missing required key");
    }
    const json& v = j.at(key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

int get_int(const json& j, const std::string& path, const char* key,
            std::optional<int> fallback = std::nullopt) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        fail(path + "." + key, "missing required key");
    }
    const json& v = j.at(key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<int>();
}

bool get_bool(const json& j, const std::string& path, const char* key, bool fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_boolean()) fail(path + "." + key, "expected a boolean");
    return v.get<bool>();
}

HologramSpecD parse_hologram(const json& j, const std::string& path, double w0) {
    require_object(j, path);
    reject_unknown(j, path, {"dm", "period_over_w0", "depth", "profile", "x0_over_w0",
                             "y0_over_w0"});
    HologramSpecD h;
    h.dm = get_int(j, path, "dm", 1);
    h.period = get_number(j, path, "period_over_w0", 0.1) * w0;
    h.depth = get_number(j, path, "depth", 2.0 * std::numbers::pi);
    h.x0 = get_number(j, path, "x0_over_w0", 0.0) * w0;
    h.y0 = get_number(j, path, "y0_over_w0", 0.0) * w0;
    if (j.contains("profile")) {
        const json& p = j.at("profile");
        if (!p.is_string()) fail(path + ".profile", "expected \"binary\" or \"blazed\"");
        const std::string s = p.get<std::string>();
        if (s == "binary")
            h.profile = Profile::binary;
        else if (s == "blazed")
            h.profile = Profile::blazed;
        else
            fail(path + ".profile", "expected \"binary\" or \"blazed\"");
    }
    if (!(h.period > 0)) fail(path + ".period_over_w0", "must be > 0");
    if (h.depth < 0) fail(path + ".depth", "must be >= 0");
    return h;
}

InterferometerArmD parse_arm(const json& j, const std::string& path, double w0) {
    require_object(j, path);
    reject_unknown(j, path, {"attenuation", "phase", "hologram", "order"});
    InterferometerArmD arm;
    arm.attenuation = get_number(j, path, "attenuation", 1.0);
    arm.phase = get_number(j, path, "phase", 0.0);
    arm.order = get_int(j, path, "order", 1);
    if (arm.attenuation < 0 || arm.attenuation > 1)
        fail(path + ".attenuation", "must lie in [0, 1]");
    if (j.contains("hologram")) arm.hologram = parse_hologram(j.at("hologram"), path + ".hologram", w0);
    return arm;
}

RunConfig parse_document(const json& doc) {
    require_object(doc, "");
    reject_unknown(doc, "", {"grid", "beam", "hologram", "scan", "interferometer", "output_dir"});

    RunConfig cfg;

    if (!doc.contains("beam")) fail("beam", "missing required section");
    {
        const json& j = doc.at("beam");
        require_object(j, "beam");
        reject_unknown(j, "beam", {"w0", "wavelength"});
        cfg.beam.w0 = get_number(j, "beam", "w0", 1.0);
        cfg.beam.wavelength = get_number(j, "beam", "wavelength", cfg.beam.w0 / 1000.0);
        if (!(cfg.beam.w0 > 0)) fail("beam.w0", "must be > 0");
        if (!(cfg.beam.wavelength > 0)) fail("beam.wavelength", "must be > 0");
    }

    if (!doc.contains("grid")) fail("grid", "missing required section");
    {
        const json& j = doc.at("grid");
        require_object(j, "grid");
        reject_unknown(j, "grid", {"n", "extent_over_w0"});
        cfg.grid_n = get_int(j, "grid", "n", 1024);
        cfg.extent_over_w0 = get_number(j, "grid", "extent_over_w0", 8.0);
        if (cfg.grid_n < 2) fail("grid.n", "must be >= 2");
        if (!(cfg.extent_over_w0 > 0)) fail("grid.extent_over_w0", "must be > 0");
    }

    if (doc.contains("hologram"))
        cfg.hologram = parse_hologram(doc.at("hologram"), "hologram", cfg.beam.w0);

    if (doc.contains("scan")) {
        const json& j = doc.at("scan");
        require_object(j, "scan");
        reject_unknown(j, "scan", {"axis", "start_over_w0", "stop_over_w0", "steps", "detectors"});
        RunConfig::Scan s;
        if (j.contains("axis")) {
            const json& a = j.at("axis");
            if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
                fail("scan.axis", "expected [x, y]");
            s.axis_x = a[0].get<double>();
            s.axis_y = a[1].get<double>();
            if (!(std::hypot(s.axis_x, s.axis_y) > 0)) fail("scan.axis", "must be nonzero");
        }
        s.start_over_w0 = get_number(j, "scan", "start_over_w0", -2.0);
        s.stop_over_w0 = get_number(j, "scan", "stop_over_w0", 2.0);
        s.steps = get_int(j, "scan", "steps", 81);
        if (s.steps < 2) fail("scan.steps", "must be >= 2");
        if (!(s.stop_over_w0 > s.start_over_w0)) fail("scan.stop_over_w0", "must exceed start_over_w0");
        if (j.contains("detectors")) {
            const json& d = j.at("detectors");
            require_object(d, "scan.detectors");
            reject_unknown(d, "scan.detectors", {"gauss", "lg", "higher_orders"});
            s.detect_gauss = get_bool(d, "scan.detectors", "gauss", true);
            s.detect_lg = get_bool(d, "scan.detectors", "lg", true);
            s.detect_higher = get_bool(d, "scan.detectors", "higher_orders", true);
        }
        cfg.scan = s;
    }

    if (doc.contains("interferometer")) {
        const json& j = doc.at("interferometer");
        require_object(j, "interferometer");
        reject_unknown(j, "interferometer", {"arm_a", "arm_b"});
        RunConfig::Interferometer mz;
        if (!j.contains("arm_a")) fail("interferometer.arm_a", "missing required key");
        if (!j.contains("arm_b")) fail("interferometer.arm_b", "missing required key");
        mz.arm_a = parse_arm(j.at("arm_a"), "interferometer.arm_a", cfg.beam.w0);
        mz.arm_b = parse_arm(j.at("arm_b"), "interferometer.arm_b", cfg.beam.w0);
        cfg.interferometer = mz;
    }

    if (doc.contains("output_dir")) {
        const json& j = doc.at("output_dir");
        if (!j.is_string()) fail("output_dir", "expected a string");
        cfg.output_dir = j.get<std::string>();
        if (cfg.output_dir.empty()) fail("output_dir", "must be non-empty");
    }

    return cfg;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("JSON parse error: ") + e.what());
    }
    return parse_document(doc);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace lgbeam
