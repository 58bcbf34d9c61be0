#include "aldus/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aldus {

namespace {
constexpr double kBaryEps = 1e-12;
}

std::optional<RayInterval> intersect_box(const Ray& ray, const Box& box) {
    double t_enter = 0.0;  // clip to t >= 0
    double t_exit = std::numeric_limits<double>::infinity();
    for (int axis = 0; axis < 3; ++axis) {
        const double o = ray.origin[axis];
        const double d = ray.direction[axis];
        const double lo = box.center[axis] - box.half_extents[axis];
        const double hi = box.center[axis] + box.half_extents[axis];
        if (d == 0.0) {
            if (o < lo || o > hi) return std::nullopt;
            continue;
        }
        double ta = (lo - o) / d;
        double tb = (hi - o) / d;
        if (ta > tb) std::swap(ta, tb);
        t_enter = std::max(t_enter, ta);
        t_exit = std::min(t_exit, tb);
        if (t_enter > t_exit) return std::nullopt;
    }
    return RayInterval{t_enter, t_exit};
}

std::optional<RayInterval> intersect_ellipsoid(const Ray& ray, const Vec3& center,
                                               const Vec3& semi_axes) {
    // Scale into unit-sphere space and solve the quadratic.
    const Vec3 p{(ray.origin.x - center.x) / semi_axes.x, (ray.origin.y - center.y) / semi_axes.y,
                 (ray.origin.z - center.z) / semi_axes.z};
    const Vec3 d{ray.direction.x / semi_axes.x, ray.direction.y / semi_axes.y,
                 ray.direction.z / semi_axes.z};
    const double a = d.squared_norm();
    const double b = 2.0 * dot(p, d);
    const double c = p.squared_norm() - 1.0;
    const double disc = b * b - 4.0 * a * c;
    if (disc <= 0.0) return std::nullopt;
    const double sq = std::sqrt(disc);
    double t0 = (-b - sq) / (2.0 * a);
    double t1 = (-b + sq) / (2.0 * a);
    if (t1 <= 0.0) return std::nullopt;
    t0 = std::max(t0, 0.0);
    if (t0 >= t1) return std::nullopt;
    return RayInterval{t0, t1};
}

std::optional<double> intersect_triangle(const Ray& ray, const Triangle& tri) {
    const Vec3 e1 = tri.b - tri.a;
    const Vec3 e2 = tri.c - tri.a;
    const Vec3 pvec = cross(ray.direction, e2);
    const double det = dot(e1, pvec);
    if (std::abs(det) < 1e-14) return std::nullopt;  // parallel to the plane
    const double inv_det = 1.0 / det;
    const Vec3 tvec = ray.origin - tri.a;
    const double u = dot(tvec, pvec) * inv_det;
    if (u < -kBaryEps || u > 1.0 + kBaryEps) return std::nullopt;
    const Vec3 qvec = cross(tvec, e1);
    const double v = dot(ray.direction, qvec) * inv_det;
    if (v < -kBaryEps || u + v > 1.0 + kBaryEps) return std::nullopt;
    const double t = dot(e2, qvec) * inv_det;
    if (t <= 0.0) return std::nullopt;
    return t;
}

namespace {

std::optional<double> object_range(const Ray& ray, const SceneObject& obj) {
    if (const Box* box = std::get_if<Box>(&obj.geometry)) {
        const auto iv = intersect_box(ray, *box);
        // t_enter == 0 means the origin is inside; an interior box face is
        // never a lidar return.
        if (!iv || iv->first <= 0.0) return std::nullopt;
        return iv->first;
    }
    const auto& tris = std::get<std::vector<Triangle>>(obj.geometry);
    std::optional<double> best;
    for (const Triangle& tri : tris) {
        const auto t = intersect_triangle(ray, tri);
        if (t && (!best || *t < *best)) best = t;
    }
    return best;
}

}  // namespace

std::optional<Hit> nearest_hit(const Ray& ray, std::span<const SceneObject> scene) {
    std::optional<Hit> best;
    for (const SceneObject& obj : scene) {
        const auto t = object_range(ray, obj);
        if (!t) continue;
        if (!best || *t < best->range || (*t == best->range && obj.id < best->object_id)) {
            best = Hit{obj.id, *t};
        }
    }
    return best;
}

}  // namespace aldus
