#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "aldus/vec3.hpp"

namespace aldus {

struct Ray {
    Vec3 origin;
    Vec3 direction;  // unit length
    int channel = 0;
    int azimuth_index = 0;
};

struct Box {
    Vec3 center;
    Vec3 half_extents;  // strictly positive
    friend bool operator==(const Box&, const Box&) = default;
};

struct Triangle {
    Vec3 a, b, c;
    friend bool operator==(const Triangle&, const Triangle&) = default;
    double area() const { return 0.5 * cross(b - a, c - a).norm(); }
};

using ObjectGeometry = std::variant<Box, std::vector<Triangle>>;

// Opaque Lambertian target: car, truck, wall, floor...
struct SceneObject {
    int id = 0;
    ObjectGeometry geometry;
    double reflectivity = 0.5;  // in [0, 1]
    std::string label;
    friend bool operator==(const SceneObject&, const SceneObject&) = default;
};

struct Hit {
    int object_id;
    double range;  // nearest opaque intersection along the ray, > 0
};

// Parametric interval of a ray inside a convex solid, clipped to t >= 0.
using RayInterval = std::pair<double, double>;

// Slab test. Returns the interval clipped to the forward half-line; nothing
// if the ray misses or the box lies entirely behind the origin.
std::optional<RayInterval> intersect_box(const Ray& ray, const Box& box);

std::optional<RayInterval> intersect_ellipsoid(const Ray& ray, const Vec3& center,
                                               const Vec3& semi_axes);

// Moller-Trumbore; smallest t > 0, with a small barycentric tolerance so
// edge-grazing beams are not dropped. Degenerate triangles are rejected at
// scene-load time, not here.
std::optional<double> intersect_triangle(const Ray& ray, const Triangle& tri);

// Minimum-range intersection over all objects; ties break to the lower id.
std::optional<Hit> nearest_hit(const Ray& ray, std::span<const SceneObject> scene);

}  // namespace aldus
