#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mobmap {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter is outside its domain.
struct ParameterError : Error {
    using Error::Error;
};

/// Not enough points to evaluate the requested operation.
struct InsufficientDataError : Error {
    using Error::Error;
};

/// Neighbourhood carries no usable geometry (e.g. all points identical).
struct DegenerateNeighborhoodError : Error {
    using Error::Error;
};

/// RANSAC could not find a plane with at least 3 inliers.
struct NoPlaneFoundError : Error {
    using Error::Error;
};

/// 2D triangulation is undefined (all points collinear / fewer than 3).
struct TriangulationError : Error {
    using Error::Error;
};

/// GPR kernel matrix factorization failed for the given hyperparameters.
struct HyperparameterError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

/// Pipeline failure with the failing stage name attached.
struct StageError : Error {
    StageError(const std::string& stage_name, const std::string& what_arg)
        : Error(stage_name + ": " + what_arg), stage(stage_name) {}
    std::string stage;
};

// ---------------------------------------------------------------------------
// Vec3
// ---------------------------------------------------------------------------

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) {
        x += o.x; y += o.y; z += o.z;
        return *this;
    }
    Vec3& operator-=(const Vec3& o) {
        x -= o.x; y -= o.y; z -= o.z;
        return *this;
    }
    constexpr bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }

    constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    constexpr double squared_norm() const { return dot(*this); }
    double norm() const { return std::sqrt(squared_norm()); }
    Vec3 normalized() const {
        const double n = norm();
        return n > 0.0 ? *this / n : Vec3{};
    }
    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// Angle between two vectors in radians, safe against rounding at +/-1.
inline double angle_between(const Vec3& a, const Vec3& b) {
    const double den = a.norm() * b.norm();
    if (den == 0.0) return 0.0;
    double c = a.dot(b) / den;
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return std::acos(c);
}

// ---------------------------------------------------------------------------
// PointCloud
// ---------------------------------------------------------------------------

struct Rgb8 {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    constexpr bool operator==(const Rgb8&) const = default;
};

/// Ordered point collection with an optional parallel color array.
/// When colors are present they have exactly one entry per point.
struct PointCloud {
    std::vector<Vec3> points;
    std::vector<Rgb8> colors;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
    bool has_colors() const { return !colors.empty(); }

    void reserve(std::size_t n) {
        points.reserve(n);
        if (has_colors()) colors.reserve(n);
    }
    void push_back(const Vec3& p) { points.push_back(p); }
    void push_back(const Vec3& p, const Rgb8& c) {
        points.push_back(p);
        colors.push_back(c);
    }
};

}  // namespace mobmap
