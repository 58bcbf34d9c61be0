#pragma once

// Shared scenario builders for the test and acceptance suites. The garage
// scenario mirrors the reference measurement layout: car at 16 m, truck at
// 40 m, fully enclosed room so every beam returns in clear air. Target front
// faces are placed so the beams at azimuth 0 on the -1 and +1 degree channels
// report ranges of exactly 16.0 m and 40.0 m.

#include <cmath>

#include "aldus/config.hpp"
#include "aldus/vec3.hpp"

namespace aldus::testing {

inline double car_front_x() { return 16.0 * std::cos(deg2rad(-1.0)); }
inline double truck_front_x() { return 40.0 * std::cos(deg2rad(1.0)); }

inline constexpr int kCarId = 0;
inline constexpr int kTruckId = 1;

inline ScenarioConfig garage_scenario() {
    ScenarioConfig cfg;
    cfg.sensor_preset = "vlp16";
    cfg.sensor = sensor_preset("vlp16");
    cfg.sensor.range_noise_sigma = 0.0;  // regression fixtures are noise-free
    cfg.pose = Pose{{0.0, 0.0, 1.6}, 0.0};

    const double cf = car_front_x();
    const double tf = truck_front_x();
    cfg.scene = {
        SceneObject{kCarId, Box{{cf + 2.0, 0.0, 0.75}, {2.0, 0.9, 0.75}}, 0.4, "car"},
        SceneObject{kTruckId, Box{{tf + 4.0, 0.0, 2.0}, {4.0, 1.25, 2.0}}, 0.5, "truck"},
        // Garage shell; reflectivities are uncalibrated defaults.
        SceneObject{2, Box{{25.0, 0.0, -0.05}, {28.5, 8.5, 0.05}}, 0.2, "floor"},
        SceneObject{3, Box{{25.0, 0.0, 5.05}, {28.5, 8.5, 0.05}}, 0.5, "ceiling"},
        SceneObject{4, Box{{25.0, 8.25, 2.5}, {28.5, 0.25, 2.55}}, 0.5, "wall_left"},
        SceneObject{5, Box{{25.0, -8.25, 2.5}, {28.5, 0.25, 2.55}}, 0.5, "wall_right"},
        SceneObject{6, Box{{53.25, 0.0, 2.5}, {0.25, 8.5, 2.55}}, 0.5, "wall_front"},
        SceneObject{7, Box{{-3.25, 0.0, 2.5}, {0.25, 8.5, 2.55}}, 0.5, "wall_back"},
    };
    cfg.seed = 0;
    cfg.frames = 1;
    cfg.output = OutputSpec{"csv", "-"};
    return cfg;
}

// The standard test cloud: front face 6 m from the sensor, 4 m deep, covering
// every sightline to the car and the truck.
inline DustCloud garage_cloud(double number_density) {
    DustCloud cloud;
    cloud.id = 0;
    cloud.shape = Box{{8.0, 0.0, 1.25}, {2.0, 3.0, 1.25}};
    cloud.number_density = number_density;
    cloud.particle_radius = 5e-6;
    cloud.extinction_efficiency = 2.0;
    cloud.backscatter_albedo = 0.5;
    return cloud;
}

inline ScenarioConfig garage_with_cloud(double number_density) {
    ScenarioConfig cfg = garage_scenario();
    cfg.clouds = {garage_cloud(number_density)};
    return cfg;
}

// Empty scene with a single cloud; used for the statistics that need
// target-free frames (depth distribution, distance falloff).
inline ScenarioConfig open_cloud_scenario(double front_distance, double number_density,
                                          double backscatter_albedo) {
    ScenarioConfig cfg;
    cfg.sensor_preset = "vlp16";
    cfg.sensor = sensor_preset("vlp16");
    cfg.sensor.range_noise_sigma = 0.0;
    cfg.pose = Pose{{0.0, 0.0, 0.0}, 0.0};
    DustCloud cloud;
    cloud.id = 0;
    cloud.shape = Box{{front_distance + 2.0, 0.0, 0.0}, {2.0, 3.0, 2.5}};
    cloud.number_density = number_density;
    cloud.particle_radius = 5e-6;
    cloud.backscatter_albedo = backscatter_albedo;
    cfg.clouds = {cloud};
    cfg.seed = 0;
    cfg.frames = 1;
    return cfg;
}

}  // namespace aldus::testing
