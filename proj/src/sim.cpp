#include "aldus/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

namespace aldus {

namespace {

const DustCloud* cloud_by_id(std::span<const DustCloud> clouds, int id) {
    for (const DustCloud& c : clouds) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

const SceneObject* object_by_id(std::span<const SceneObject> scene, int id) {
    for (const SceneObject& o : scene) {
        if (o.id == id) return &o;
    }
    return nullptr;
}

LidarReturn make_return(const Ray& ray, const ScenarioConfig& config, const Detection& det,
                        ReturnKind kind, int source_id) {
    LidarReturn r;
    r.channel = ray.channel;
    r.azimuth_index = ray.azimuth_index;
    r.azimuth_deg = normalize_deg(double(ray.azimuth_index) * config.sensor.azimuth_step_deg() +
                                  config.pose.yaw_deg);
    r.range = det.range;
    r.intensity = det.intensity;
    r.kind = kind;
    r.source_id = source_id;
    r.point = ray.origin + det.range * ray.direction;
    return r;
}

}  // namespace

BeamContext make_beam_context(const ScenarioConfig& config, int channel, int azimuth_index) {
    BeamContext ctx;
    ctx.ray = Ray{config.pose.origin,
                  beam_direction(config.sensor, channel, azimuth_index, config.pose.yaw_deg),
                  channel, azimuth_index};
    ctx.hit = nearest_hit(ctx.ray, config.scene);
    const double max_t = ctx.hit ? ctx.hit->range : config.sensor.max_range;
    const auto raw = cloud_segments(ctx.ray, config.clouds, max_t);
    ctx.segments = merge_segments(raw, config.clouds);
    return ctx;
}

std::optional<LidarReturn> simulate_beam(const Ray& ray, const ScenarioConfig& config,
                                         const BeamRng& rng) {
    const SensorModel& sensor = config.sensor;
    const auto hit = nearest_hit(ray, config.scene);
    const double max_t = hit ? hit->range : sensor.max_range;
    const auto merged = merge_segments(cloud_segments(ray, config.clouds, max_t), config.clouds);

    // Both draws happen on every beam to keep the keying stable across branches.
    const double u = rng.uniform(kDrawScatter);
    const double noise = rng.gaussian(kDrawRangeNoise);

    const auto event = sample_scatter(merged, u);
    if (event && (!hit || event->t_scatter < hit->range)) {
        const DustCloud* cloud = cloud_by_id(config.clouds, event->cloud_id);
        const double intensity = dust_return_intensity(*event, *cloud, sensor.calib());
        const auto det = detect(intensity, event->t_scatter, sensor, noise);
        if (!det) return std::nullopt;
        return make_return(ray, config, *det, ReturnKind::Dust, event->cloud_id);
    }
    if (hit) {
        const SceneObject* obj = object_by_id(config.scene, hit->object_id);
        const double tmit = std::exp(-total_optical_depth(merged));
        const double intensity =
            target_return_intensity(obj->reflectivity, hit->range, tmit, sensor.calib());
        const auto det = detect(intensity, hit->range, sensor, noise);
        if (!det) return std::nullopt;
        return make_return(ray, config, *det, ReturnKind::Target, hit->object_id);
    }
    return std::nullopt;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? int(hw) : 1;
}

Frame simulate_frame(const ScenarioConfig& config, std::uint64_t frame_id, int threads) {
    const std::vector<Ray> rays = scan_rays(config.sensor, config.pose);
    std::vector<std::optional<LidarReturn>> slots(rays.size());

    const auto worker = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const BeamRng rng(config.seed, frame_id, rays[i].channel, rays[i].azimuth_index);
            slots[i] = simulate_beam(rays[i], config, rng);
        }
    };

    const int n = std::min<int>(resolve_threads(threads), int(rays.size()));
    if (n <= 1) {
        worker(0, rays.size());
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n);
        const std::size_t chunk = (rays.size() + n - 1) / n;
        for (int t = 0; t < n; ++t) {
            const std::size_t lo = std::size_t(t) * chunk;
            const std::size_t hi = std::min(rays.size(), lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    Frame frame;
    frame.frame_id = frame_id;
    frame.sensor_name = config.sensor.name;
    frame.seed = config.seed;
    frame.returns.reserve(rays.size());
    for (auto& slot : slots) {
        if (slot) {
            frame.returns.push_back(std::move(*slot));
        } else {
            ++frame.dropped_count;
        }
    }
    return frame;
}

RunSummary run_scenario(const ScenarioConfig& config, FrameSink& sink, int threads) {
    RunSummary summary;
    const auto start = std::chrono::steady_clock::now();
    for (std::uint64_t id = 0; id < config.frames; ++id) {
        const Frame frame = simulate_frame(config, id, threads);
        sink.write(frame);
        ++summary.frames;
        summary.beams += config.sensor.beams_per_frame();
    }
    sink.finish();
    summary.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return summary;
}

}  // namespace aldus
