#include "aldus/medium.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "aldus/sensor.hpp"

namespace aldus {

double extinction_coefficient(const DustCloud& cloud) {
    return cloud.number_density * cloud.extinction_efficiency * std::numbers::pi *
           cloud.particle_radius * cloud.particle_radius;
}

std::vector<CloudSegment> cloud_segments(const Ray& ray, std::span<const DustCloud> clouds,
                                         double max_t) {
    std::vector<CloudSegment> segments;
    for (const DustCloud& cloud : clouds) {
        const auto iv = std::visit(
            [&](const auto& shape) -> std::optional<RayInterval> {
                if constexpr (std::is_same_v<std::decay_t<decltype(shape)>, Box>) {
                    return intersect_box(ray, shape);
                } else {
                    return intersect_ellipsoid(ray, shape.center, shape.semi_axes);
                }
            },
            cloud.shape);
        if (!iv) continue;
        const double t_in = iv->first;
        const double t_out = std::min(iv->second, max_t);
        if (t_out <= t_in) continue;
        segments.push_back({cloud.id, t_in, t_out});
    }
    std::sort(segments.begin(), segments.end(), [](const CloudSegment& a, const CloudSegment& b) {
        return a.t_in != b.t_in ? a.t_in < b.t_in : a.cloud_id < b.cloud_id;
    });
    return segments;
}

namespace {

double alpha_of(std::span<const DustCloud> clouds, int cloud_id) {
    for (const DustCloud& c : clouds) {
        if (c.id == cloud_id) return extinction_coefficient(c);
    }
    return 0.0;
}

}  // namespace

std::vector<MergedSegment> merge_segments(std::span<const CloudSegment> segments,
                                          std::span<const DustCloud> clouds) {
    std::vector<MergedSegment> merged;
    if (segments.empty()) return merged;
    if (segments.size() == 1) {
        const CloudSegment& s = segments.front();
        merged.push_back({s.t_in, s.t_out, alpha_of(clouds, s.cloud_id), s.cloud_id});
        return merged;
    }

    std::vector<double> cuts;
    cuts.reserve(segments.size() * 2);
    for (const CloudSegment& s : segments) {
        cuts.push_back(s.t_in);
        cuts.push_back(s.t_out);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i];
        const double b = cuts[i + 1];
        const double mid = 0.5 * (a + b);
        double alpha_sum = 0.0;
        double alpha_best = -1.0;
        int dominant = -1;
        for (const CloudSegment& s : segments) {
            if (s.t_in <= mid && mid < s.t_out) {
                const double alpha = alpha_of(clouds, s.cloud_id);
                alpha_sum += alpha;
                if (alpha > alpha_best || (alpha == alpha_best && s.cloud_id < dominant)) {
                    alpha_best = alpha;
                    dominant = s.cloud_id;
                }
            }
        }
        if (dominant < 0) continue;  // gap between clouds
        if (!merged.empty() && merged.back().t_out == a && merged.back().alpha == alpha_sum &&
            merged.back().cloud_id == dominant) {
            merged.back().t_out = b;
        } else {
            merged.push_back({a, b, alpha_sum, dominant});
        }
    }
    return merged;
}

double transmittance(std::span<const std::pair<double, double>> alpha_length) {
    double tau = 0.0;
    for (const auto& [alpha, length] : alpha_length) tau += alpha * length;
    return std::exp(-tau);
}

double total_optical_depth(std::span<const MergedSegment> segments) {
    double tau = 0.0;
    for (const MergedSegment& s : segments) tau += s.alpha * (s.t_out - s.t_in);
    return tau;
}

std::optional<ScatterEvent> sample_scatter(std::span<const MergedSegment> segments, double u) {
    const double tau_target = -std::log(u);
    double tau = 0.0;
    double depth = 0.0;   // in-cloud distance traversed so far
    for (const MergedSegment& s : segments) {
        const double length = s.t_out - s.t_in;
        const double tau_seg = s.alpha * length;
        if (s.alpha > 0.0 && tau + tau_seg >= tau_target) {
            const double dt = (tau_target - tau) / s.alpha;  // linear inversion, constant alpha
            return ScatterEvent{s.cloud_id, s.t_in + dt, depth + dt};
        }
        tau += tau_seg;
        depth += length;
    }
    return std::nullopt;
}

double dust_return_intensity(const ScatterEvent& event, const DustCloud& cloud,
                             const IntensityCalib& calib) {
    const double alpha = extinction_coefficient(cloud);
    return calib.scale * cloud.backscatter_albedo * std::exp(-alpha * event.depth_in_cloud) /
           (event.t_scatter * event.t_scatter);
}

}  // namespace aldus
