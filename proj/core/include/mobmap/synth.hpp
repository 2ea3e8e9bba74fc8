#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mobmap/types.hpp"

namespace mobmap {
namespace synth {

/// Look-at camera pose in world coordinates. The emitted cloud uses the usual
/// sensor convention: +Z forward, +X right, +Y down, viewpoint at the origin.
struct CameraPose {
    Vec3 position{0.0, -1.5, 1.2};
    Vec3 target{0.0, 0.5, 0.0};
};

/// One scene primitive. World frame is z-up with the floor plane at z = 0.
struct Primitive {
    enum class Kind { floor, wall, ramp, box, corrugation, step };
    Kind kind = Kind::floor;

    Vec3 center{0, 0, 0};   // x,y footprint center; z via base_z
    double width = 2.0;     // extent along x
    double depth = 2.0;     // extent along y (or along the slope for ramps)
    double height = 0.3;    // box/wall/step height
    double angle_deg = 30;  // ramp inclination
    double amplitude = 0.05;  // corrugation
    double period = 0.5;      // corrugation wavelength along x
    double base_z = 0.0;
    double density = 0.0;   // points/m^2 override; 0 uses the scene density
};

struct SceneSpec {
    std::vector<Primitive> primitives;
    double density = 1e4;        // points/m^2
    double noise_sigma = 0.0;    // meters, applied along the local surface normal
    std::size_t outlier_count = 0;
    std::uint64_t seed = 1;
    std::size_t target_points = 0;  // when > 0, scale counts to hit this total
    CameraPose camera;
    bool world_frame = false;  // emit world coordinates instead of sensor frame
};

/// Ground truth for one labeled face.
struct FaceTruth {
    int label = 0;
    std::string name;
    Vec3 normal;        // in the emitted frame
    double slope_deg = 0.0;   // vs. the world up direction, folded to [0,90]
    double roughness = 1.0;   // analytic (quadrature for corrugations)
};

/// Cloud plus per-point primitive labels (-1 marks injected outliers) and
/// per-face analytic truth. `viewpoint` is the sensor position in the
/// emitted frame.
struct LabeledCloud {
    PointCloud cloud;
    std::vector<int> labels;
    std::vector<FaceTruth> faces;
    Vec3 viewpoint;
};

/// Deterministic scene sampler: uniform surface sampling per primitive,
/// Gaussian noise along the local normal, box faces culled against the
/// camera position.
LabeledCloud generate(const SceneSpec& spec);

/// Mean of sqrt(1 + (2*pi*amp/period)^2 cos^2) over one period: the analytic
/// area ratio of a corrugated sheet against its base plane.
double corrugation_roughness(double amplitude, double period);

/// Parse a primitive descriptor like "box:cx=0,cy=0.4,w=0.3,h=0.3" or
/// "floor:w=2,d=2". Throws ParameterError on unknown kinds or keys.
Primitive parse_primitive(const std::string& descriptor);

}  // namespace synth
}  // namespace mobmap
