#include "aldus/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

#include "aldus/error.hpp"

namespace aldus {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ConfigError(field + " " + what);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
}

const json& require(const json& obj, const std::string& where, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(where + "." + key + " is required");
    return *it;
}

double get_number(const json& v, const std::string& field) {
    if (!v.is_number()) fail(field, "must be a number");
    return v.get<double>();
}

std::uint64_t get_uint(const json& v, const std::string& field) {
    if (!v.is_number_unsigned()) fail(field, "must be a non-negative integer");
    return v.get<std::uint64_t>();
}

int get_int(const json& v, const std::string& field) {
    if (!v.is_number_integer()) fail(field, "must be an integer");
    return v.get<int>();
}

Vec3 get_vec3(const json& v, const std::string& field) {
    if (!v.is_array() || v.size() != 3) fail(field, "must be an array of 3 numbers");
    return {get_number(v[0], field + "[0]"), get_number(v[1], field + "[1]"),
            get_number(v[2], field + "[2]")};
}

Vec3 get_positive_vec3(const json& v, const std::string& field) {
    const Vec3 out = get_vec3(v, field);
    if (out.x <= 0.0 || out.y <= 0.0 || out.z <= 0.0) fail(field, "must be strictly positive");
    return out;
}

Box parse_box(const json& v, const std::string& field) {
    if (!v.is_object()) fail(field, "must be an object");
    check_keys(v, field, {"center", "half_extents"});
    return Box{get_vec3(require(v, field, "center"), field + ".center"),
               get_positive_vec3(require(v, field, "half_extents"), field + ".half_extents")};
}

Ellipsoid parse_ellipsoid(const json& v, const std::string& field) {
    if (!v.is_object()) fail(field, "must be an object");
    check_keys(v, field, {"center", "semi_axes"});
    return Ellipsoid{get_vec3(require(v, field, "center"), field + ".center"),
                     get_positive_vec3(require(v, field, "semi_axes"), field + ".semi_axes")};
}

SensorModel parse_sensor(const json& v) {
    if (!v.is_object()) fail("sensor", "must be an object");
    check_keys(v, "sensor", {"preset", "overrides"});
    const json& preset = require(v, "sensor", "preset");
    if (!preset.is_string()) fail("sensor.preset", "must be a string");
    SensorModel m = sensor_preset(preset.get<std::string>());

    const auto ov = v.find("overrides");
    if (ov == v.end()) return m;
    if (!ov->is_object()) fail("sensor.overrides", "must be an object");
    check_keys(*ov, "sensor.overrides",
               {"vertical_angles", "azimuth_steps", "max_range", "min_range", "range_noise_sigma",
                "detection_threshold", "intensity_scale", "rotation_rate"});
    for (const auto& item : ov->items()) {
        const std::string field = "sensor.overrides." + item.key();
        const json& val = item.value();
        if (item.key() == "vertical_angles") {
            if (!val.is_array() || val.empty()) fail(field, "must be a non-empty array");
            std::vector<double> angles;
            for (std::size_t i = 0; i < val.size(); ++i) {
                angles.push_back(get_number(val[i], field + "[" + std::to_string(i) + "]"));
            }
            for (std::size_t i = 1; i < angles.size(); ++i) {
                if (angles[i] <= angles[i - 1]) fail(field, "must be strictly ascending");
            }
            m.vertical_angles_deg = std::move(angles);
        } else if (item.key() == "azimuth_steps") {
            const int steps = get_int(val, field);
            if (steps < 1) fail(field, "must be >= 1");
            m.azimuth_steps = steps;
        } else if (item.key() == "max_range") {
            m.max_range = get_number(val, field);
        } else if (item.key() == "min_range") {
            m.min_range = get_number(val, field);
        } else if (item.key() == "range_noise_sigma") {
            m.range_noise_sigma = get_number(val, field);
            if (m.range_noise_sigma < 0.0) fail(field, "must be >= 0");
        } else if (item.key() == "detection_threshold") {
            m.detection_threshold = get_number(val, field);
            if (m.detection_threshold < 0.0) fail(field, "must be >= 0");
        } else if (item.key() == "intensity_scale") {
            m.intensity_scale = get_number(val, field);
            if (m.intensity_scale <= 0.0) fail(field, "must be > 0");
        } else if (item.key() == "rotation_rate") {
            m.rotation_rate_hz = get_number(val, field);
            if (m.rotation_rate_hz <= 0.0) fail(field, "must be > 0");
        }
    }
    if (m.min_range < 0.0) fail("sensor.overrides.min_range", "must be >= 0");
    if (m.min_range >= m.max_range) fail("sensor.overrides.min_range", "must be < max_range");
    return m;
}

SceneObject parse_scene_object(const json& v, const std::string& field) {
    if (!v.is_object()) fail(field, "must be an object");
    check_keys(v, field, {"id", "label", "reflectivity", "box", "triangles"});
    SceneObject obj;
    obj.id = get_int(require(v, field, "id"), field + ".id");
    if (obj.id < 0) fail(field + ".id", "must be >= 0");
    if (const auto it = v.find("label"); it != v.end()) {
        if (!it->is_string()) fail(field + ".label", "must be a string");
        obj.label = it->get<std::string>();
    }
    obj.reflectivity = get_number(require(v, field, "reflectivity"), field + ".reflectivity");
    if (obj.reflectivity < 0.0 || obj.reflectivity > 1.0) {
        fail(field + ".reflectivity", "must be in [0, 1]");
    }
    const bool has_box = v.contains("box");
    const bool has_tris = v.contains("triangles");
    if (has_box == has_tris) fail(field, "must have exactly one of 'box' or 'triangles'");
    if (has_box) {
        obj.geometry = parse_box(v["box"], field + ".box");
    } else {
        const json& tris = v["triangles"];
        if (!tris.is_array() || tris.empty()) {
            fail(field + ".triangles", "must be a non-empty array");
        }
        std::vector<Triangle> list;
        for (std::size_t i = 0; i < tris.size(); ++i) {
            const std::string tf = field + ".triangles[" + std::to_string(i) + "]";
            const json& t = tris[i];
            if (!t.is_array() || t.size() != 3) fail(tf, "must be an array of 3 vertices");
            Triangle tri{get_vec3(t[0], tf + "[0]"), get_vec3(t[1], tf + "[1]"),
                         get_vec3(t[2], tf + "[2]")};
            if (tri.area() <= 1e-12) fail(tf, "is degenerate (area <= 1e-12 m^2)");
            list.push_back(tri);
        }
        obj.geometry = std::move(list);
    }
    return obj;
}

DustCloud parse_cloud(const json& v, const std::string& field) {
    if (!v.is_object()) fail(field, "must be an object");
    check_keys(v, field,
               {"id", "box", "ellipsoid", "number_density", "particle_radius",
                "extinction_efficiency", "backscatter_albedo"});
    DustCloud cloud;
    cloud.id = get_int(require(v, field, "id"), field + ".id");
    if (cloud.id < 0) fail(field + ".id", "must be >= 0");
    const bool has_box = v.contains("box");
    const bool has_ell = v.contains("ellipsoid");
    if (has_box == has_ell) fail(field, "must have exactly one of 'box' or 'ellipsoid'");
    if (has_box) {
        cloud.shape = parse_box(v["box"], field + ".box");
    } else {
        cloud.shape = parse_ellipsoid(v["ellipsoid"], field + ".ellipsoid");
    }
    cloud.number_density =
        get_number(require(v, field, "number_density"), field + ".number_density");
    if (cloud.number_density < 0.0) fail(field + ".number_density", "must be >= 0");
    cloud.particle_radius =
        get_number(require(v, field, "particle_radius"), field + ".particle_radius");
    if (cloud.particle_radius <= 0.0) fail(field + ".particle_radius", "must be > 0");
    if (const auto it = v.find("extinction_efficiency"); it != v.end()) {
        cloud.extinction_efficiency = get_number(*it, field + ".extinction_efficiency");
        if (cloud.extinction_efficiency <= 0.0) {
            fail(field + ".extinction_efficiency", "must be > 0");
        }
    }
    if (const auto it = v.find("backscatter_albedo"); it != v.end()) {
        cloud.backscatter_albedo = get_number(*it, field + ".backscatter_albedo");
        if (cloud.backscatter_albedo < 0.0 || cloud.backscatter_albedo > 1.0) {
            fail(field + ".backscatter_albedo", "must be in [0, 1]");
        }
    }
    return cloud;
}

OutputSpec parse_output(const json& v) {
    if (!v.is_object()) fail("output", "must be an object");
    check_keys(v, "output", {"format", "path"});
    OutputSpec out;
    if (const auto it = v.find("format"); it != v.end()) {
        if (!it->is_string()) fail("output.format", "must be a string");
        out.format = it->get<std::string>();
        if (out.format != "csv" && out.format != "pcd" && out.format != "stream") {
            fail("output.format", "must be one of: csv, pcd, stream");
        }
    }
    if (const auto it = v.find("path"); it != v.end()) {
        if (!it->is_string()) fail("output.path", "must be a string");
        out.path = it->get<std::string>();
    }
    if (out.format == "stream" && out.path.find(':') == std::string::npos) {
        fail("output.path", "must be host:port for the stream format");
    }
    return out;
}

json render_vec3(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json render_shape_box(const Box& b) {
    return json{{"center", render_vec3(b.center)}, {"half_extents", render_vec3(b.half_extents)}};
}

json render_sensor(const ScenarioConfig& c) {
    json out{{"preset", c.sensor_preset}};
    const SensorModel base = sensor_preset(c.sensor_preset);
    json ov = json::object();
    if (c.sensor.vertical_angles_deg != base.vertical_angles_deg) {
        ov["vertical_angles"] = c.sensor.vertical_angles_deg;
    }
    if (c.sensor.azimuth_steps != base.azimuth_steps) ov["azimuth_steps"] = c.sensor.azimuth_steps;
    if (c.sensor.max_range != base.max_range) ov["max_range"] = c.sensor.max_range;
    if (c.sensor.min_range != base.min_range) ov["min_range"] = c.sensor.min_range;
    if (c.sensor.range_noise_sigma != base.range_noise_sigma) {
        ov["range_noise_sigma"] = c.sensor.range_noise_sigma;
    }
    if (c.sensor.detection_threshold != base.detection_threshold) {
        ov["detection_threshold"] = c.sensor.detection_threshold;
    }
    if (c.sensor.intensity_scale != base.intensity_scale) {
        ov["intensity_scale"] = c.sensor.intensity_scale;
    }
    if (c.sensor.rotation_rate_hz != base.rotation_rate_hz) {
        ov["rotation_rate"] = c.sensor.rotation_rate_hz;
    }
    if (!ov.empty()) out["overrides"] = std::move(ov);
    return out;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(e.what());  // nlohmann reports line and column
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");
    check_keys(root, "config", {"sensor", "pose", "scene", "clouds", "seed", "frames", "output"});

    ScenarioConfig cfg;
    const json& sensor_json = require(root, "config", "sensor");
    cfg.sensor = parse_sensor(sensor_json);
    cfg.sensor_preset = sensor_json.at("preset").get<std::string>();

    if (const auto it = root.find("pose"); it != root.end()) {
        if (!it->is_object()) fail("pose", "must be an object");
        check_keys(*it, "pose", {"origin", "yaw_deg"});
        if (const auto o = it->find("origin"); o != it->end()) {
            cfg.pose.origin = get_vec3(*o, "pose.origin");
        }
        if (const auto y = it->find("yaw_deg"); y != it->end()) {
            cfg.pose.yaw_deg = get_number(*y, "pose.yaw_deg");
        }
    }

    if (const auto it = root.find("scene"); it != root.end()) {
        if (!it->is_array()) fail("scene", "must be an array");
        std::set<int> ids;
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string field = "scene[" + std::to_string(i) + "]";
            SceneObject obj = parse_scene_object((*it)[i], field);
            if (!ids.insert(obj.id).second) fail(field + ".id", "is not unique within the scene");
            cfg.scene.push_back(std::move(obj));
        }
    }

    if (const auto it = root.find("clouds"); it != root.end()) {
        if (!it->is_array()) fail("clouds", "must be an array");
        std::set<int> ids;
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string field = "clouds[" + std::to_string(i) + "]";
            DustCloud cloud = parse_cloud((*it)[i], field);
            if (!ids.insert(cloud.id).second) fail(field + ".id", "is not unique among clouds");
            cfg.clouds.push_back(std::move(cloud));
        }
    }

    if (const auto it = root.find("seed"); it != root.end()) {
        cfg.seed = get_uint(*it, "seed");
    }
    if (const auto it = root.find("frames"); it != root.end()) {
        cfg.frames = get_uint(*it, "frames");
        if (cfg.frames < 1) fail("frames", "must be >= 1");
    }
    if (const auto it = root.find("output"); it != root.end()) {
        cfg.output = parse_output(*it);
    }
    return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string render_config(const ScenarioConfig& c) {
    json root;
    root["sensor"] = render_sensor(c);
    root["pose"] = json{{"origin", render_vec3(c.pose.origin)}, {"yaw_deg", c.pose.yaw_deg}};
    json scene = json::array();
    for (const SceneObject& obj : c.scene) {
        json o{{"id", obj.id}, {"label", obj.label}, {"reflectivity", obj.reflectivity}};
        if (const Box* box = std::get_if<Box>(&obj.geometry)) {
            o["box"] = render_shape_box(*box);
        } else {
            json tris = json::array();
            for (const Triangle& t : std::get<std::vector<Triangle>>(obj.geometry)) {
                tris.push_back(
                    json::array({render_vec3(t.a), render_vec3(t.b), render_vec3(t.c)}));
            }
            o["triangles"] = std::move(tris);
        }
        scene.push_back(std::move(o));
    }
    root["scene"] = std::move(scene);
    json clouds = json::array();
    for (const DustCloud& cloud : c.clouds) {
        json o{{"id", cloud.id},
               {"number_density", cloud.number_density},
               {"particle_radius", cloud.particle_radius},
               {"extinction_efficiency", cloud.extinction_efficiency},
               {"backscatter_albedo", cloud.backscatter_albedo}};
        if (const Box* box = std::get_if<Box>(&cloud.shape)) {
            o["box"] = render_shape_box(*box);
        } else {
            const Ellipsoid& e = std::get<Ellipsoid>(cloud.shape);
            o["ellipsoid"] =
                json{{"center", render_vec3(e.center)}, {"semi_axes", render_vec3(e.semi_axes)}};
        }
        clouds.push_back(std::move(o));
    }
    root["clouds"] = std::move(clouds);
    root["seed"] = c.seed;
    root["frames"] = c.frames;
    root["output"] = json{{"format", c.output.format}, {"path", c.output.path}};
    return root.dump(2) + "\n";
}

}  // namespace aldus
