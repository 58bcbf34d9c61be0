#pragma once

#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "aldus/scene.hpp"

namespace aldus {

struct IntensityCalib;  // sensor.hpp

struct Ellipsoid {
    Vec3 center;
    Vec3 semi_axes;  // strictly positive
    friend bool operator==(const Ellipsoid&, const Ellipsoid&) = default;
};

using CloudShape = std::variant<Box, Ellipsoid>;

// Bounded volume of identical spherical particles, optically homogeneous.
// Material variants (flour, cement, ...) map onto different parameter tuples
// rather than distinct code paths.
struct DustCloud {
    int id = 0;
    CloudShape shape;
    double number_density = 0.0;         // particles per m^3
    double particle_radius = 5e-6;       // m
    double extinction_efficiency = 2.0;  // geometric-optics limit, particles >> wavelength
    double backscatter_albedo = 0.5;     // lumped receiver-side backscatter fraction
    friend bool operator==(const DustCloud&, const DustCloud&) = default;
};

// alpha = N * Q_ext * pi * r^2  [1/m]; zero iff the cloud is empty.
double extinction_coefficient(const DustCloud& cloud);

struct CloudSegment {
    int cloud_id;
    double t_in;
    double t_out;
};

// In-cloud intervals along the ray, clipped to [0, max_t] and sorted by t_in.
// Intervals of distinct clouds may overlap; see merge_segments.
std::vector<CloudSegment> cloud_segments(const Ray& ray, std::span<const DustCloud> clouds,
                                         double max_t);

// Disjoint sub-segment carrying the summed extinction coefficient of every
// covering cloud (independent particle populations). cloud_id is the
// strongest contributor, ties to the lower id.
struct MergedSegment {
    double t_in;
    double t_out;
    double alpha;
    int cloud_id;
};

std::vector<MergedSegment> merge_segments(std::span<const CloudSegment> segments,
                                          std::span<const DustCloud> clouds);

// Beer-Lambert: T = exp(-sum alpha_i * L_i).
double transmittance(std::span<const std::pair<double, double>> alpha_length);

double total_optical_depth(std::span<const MergedSegment> segments);

struct ScatterEvent {
    int cloud_id;
    double t_scatter;       // m along the ray
    double depth_in_cloud;  // in-cloud distance traversed before the event
};

// Exponential free-path sampling: walk the segments until the accumulated
// optical depth reaches -ln(u); nothing when the beam's total optical depth
// is smaller (the beam exits the clouds unscattered). u must lie in (0, 1).
std::optional<ScatterEvent> sample_scatter(std::span<const MergedSegment> segments, double u);

// I = K * albedo * exp(-alpha * depth_in_cloud) / t^2. The outbound
// attenuation is already encoded in the sampling distribution; only the
// return trip through the cloud is applied here.
double dust_return_intensity(const ScatterEvent& event, const DustCloud& cloud,
                             const IntensityCalib& calib);

}  // namespace aldus
