#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aldus/scene.hpp"

namespace aldus {

struct Pose {
    Vec3 origin;
    double yaw_deg = 0.0;
    friend bool operator==(const Pose&, const Pose&) = default;
};

struct IntensityCalib {
    double scale = 25600.0;       // K: a perfect reflector at 10 m saturates
    double min_detectable = 0.5;  // detection threshold
    double max_value = 255.0;
    friend bool operator==(const IntensityCalib&, const IntensityCalib&) = default;
};

// Datasheet-level description of a spinning LIDAR.
struct SensorModel {
    std::string name;
    std::vector<double> vertical_angles_deg;  // ascending, one per channel
    int azimuth_steps = 1;
    double max_range = 100.0;          // m
    double min_range = 0.5;            // m
    double range_noise_sigma = 0.03;   // m; zero in regression fixtures
    double detection_threshold = 0.5;  // intensity units
    double intensity_scale = 25600.0;  // K
    double rotation_rate_hz = 10.0;

    int channels() const { return static_cast<int>(vertical_angles_deg.size()); }
    double azimuth_step_deg() const { return 360.0 / azimuth_steps; }
    std::uint64_t beams_per_frame() const {
        return static_cast<std::uint64_t>(channels()) * azimuth_steps;
    }
    IntensityCalib calib() const { return {intensity_scale, detection_threshold, 255.0}; }

    friend bool operator==(const SensorModel&, const SensorModel&) = default;
};

// Built-in datasheet presets. Throws ConfigError for unknown names.
SensorModel sensor_preset(const std::string& name);
const std::vector<std::string>& sensor_preset_names();

double normalize_deg(double deg);  // into [0, 360)

// Direction of beam (channel, azimuth index) under the given yaw. Shared by
// the scan generator and recorded-point ray reconstruction so both paths
// produce bit-identical rays.
Vec3 beam_direction(const SensorModel& sensor, int channel, int azimuth_index, double yaw_deg);

// One full revolution, channel-major order, channels * azimuth_steps rays.
std::vector<Ray> scan_rays(const SensorModel& sensor, const Pose& pose);

// I = K * reflectivity * T^2 / R^2 (two-way transmittance, monostatic).
double target_return_intensity(double reflectivity, double range, double transmittance,
                               const IntensityCalib& calib);

struct Detection {
    double range;
    int intensity;  // quantized 0..255
};

// Threshold + range gate, Gaussian range noise, 0..255 quantization.
std::optional<Detection> detect(double intensity, double range, const SensorModel& sensor,
                                double noise_draw);

}  // namespace aldus
