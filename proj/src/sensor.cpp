#include "aldus/sensor.hpp"

#include <algorithm>
#include <cmath>

#include "aldus/error.hpp"

namespace aldus {

const std::vector<std::string>& sensor_preset_names() {
    static const std::vector<std::string> names = {"vlp16", "os1-64"};
    return names;
}

SensorModel sensor_preset(const std::string& name) {
    SensorModel m;
    m.name = name;
    if (name == "vlp16") {
        for (int c = 0; c < 16; ++c) m.vertical_angles_deg.push_back(-15.0 + 2.0 * c);
        m.azimuth_steps = 1800;  // 0.2 deg
        m.max_range = 100.0;
        m.min_range = 0.9;
        m.rotation_rate_hz = 10.0;
        return m;
    }
    if (name == "os1-64") {
        for (int c = 0; c < 64; ++c) m.vertical_angles_deg.push_back(-22.5 + 45.0 * c / 63.0);
        m.azimuth_steps = 1024;
        m.max_range = 120.0;
        m.min_range = 0.8;
        m.rotation_rate_hz = 10.0;
        return m;
    }
    std::string valid;
    for (const auto& n : sensor_preset_names()) {
        if (!valid.empty()) valid += ", ";
        valid += n;
    }
    throw ConfigError("unknown sensor preset '" + name + "'; valid presets: " + valid);
}

double normalize_deg(double deg) {
    double d = std::fmod(deg, 360.0);
    if (d < 0.0) d += 360.0;
    return d;
}

Vec3 beam_direction(const SensorModel& sensor, int channel, int azimuth_index, double yaw_deg) {
    const double el = deg2rad(sensor.vertical_angles_deg[channel]);
    const double az = deg2rad(double(azimuth_index) * sensor.azimuth_step_deg() + yaw_deg);
    const double cos_el = std::cos(el);
    return {cos_el * std::cos(az), cos_el * std::sin(az), std::sin(el)};
}

std::vector<Ray> scan_rays(const SensorModel& sensor, const Pose& pose) {
    std::vector<Ray> rays;
    rays.reserve(sensor.beams_per_frame());
    for (int c = 0; c < sensor.channels(); ++c) {
        for (int a = 0; a < sensor.azimuth_steps; ++a) {
            rays.push_back(Ray{pose.origin, beam_direction(sensor, c, a, pose.yaw_deg), c, a});
        }
    }
    return rays;
}

double target_return_intensity(double reflectivity, double range, double transmittance,
                               const IntensityCalib& calib) {
    return calib.scale * reflectivity * transmittance * transmittance / (range * range);
}

std::optional<Detection> detect(double intensity, double range, const SensorModel& sensor,
                                double noise_draw) {
    if (intensity < sensor.detection_threshold) return std::nullopt;
    if (range < sensor.min_range || range > sensor.max_range) return std::nullopt;
    double reported = range + sensor.range_noise_sigma * noise_draw;
    reported = std::clamp(reported, sensor.min_range, sensor.max_range);
    const double clamped = std::min(intensity, 255.0);
    return Detection{reported, static_cast<int>(std::lround(clamped))};
}

}  // namespace aldus
