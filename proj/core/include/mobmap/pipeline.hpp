#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mobmap/camera.hpp"
#include "mobmap/filters.hpp"
#include "mobmap/mobility.hpp"
#include "mobmap/normals.hpp"
#include "mobmap/plane.hpp"
#include "mobmap/segmentation.hpp"
#include "mobmap/types.hpp"

namespace mobmap {

/// Every tunable of the processing stages. Parameter domains are validated
/// when the pipeline runs.
struct PipelineConfig {
    // data reduction + denoising
    double voxel_edge = 0.01;     // meters
    double max_depth = 2.0;       // meters
    std::size_t denoise_k = 30;
    double denoise_alpha = 1.0;

    // normals
    std::size_t normal_k = 30;
    Vec3 viewpoint{0, 0, 0};

    // ground removal / per-segment plane fits
    RansacConfig ransac;
    std::uint64_t ransac_seed = 1;

    // color segmentation
    double color_threshold = 6.0;
    double grow_radius = 0.0;  // <= 0 derives 2.5 * voxel_edge
    std::size_t min_segment_size = 30;
    std::uint64_t grow_seed = 1;

    // mobility
    GprConfig gpr;

    // projection
    CameraIntrinsics camera;

    double effective_grow_radius() const {
        return grow_radius > 0.0 ? grow_radius : 2.5 * voxel_edge;
    }
};

/// Wall-clock and size record of one stage, in fixed pipeline order.
struct StageRecord {
    std::string name;
    double ms = 0.0;
    std::size_t points_processed = 0;  // stage input size
};

struct PipelineResult {
    PointCloud working;          // cloud after denoise + reduction
    OrientedNormalField normals;
    std::vector<Rgb8> rgbn;      // RGB-N colors, parallel to `working`
    PlaneModel ground_plane;
    MobilityMap map;             // entry indices refer to `working`
    std::vector<StageRecord> stages;
};

/// Full pipeline: denoise -> reduce -> normals -> RGB-N -> ground removal ->
/// region growing -> surface properties -> mobility scoring.
/// Stage failures are rethrown as StageError with the stage name attached.
PipelineResult run_pipeline(const PointCloud& input, const PipelineConfig& cfg);

/// Deterministic JSON report (schema 1): configuration, per-stage point
/// counts, ground plane, per-segment properties and scores. Wall-clock
/// timings are only embedded when `with_timings` is set, since they change
/// between runs.
std::string report_json(const PipelineResult& result, const PipelineConfig& cfg,
                        bool with_timings = false);

/// Mobility colormap color per working-cloud point.
std::vector<Rgb8> score_colors(const PipelineResult& result);

}  // namespace mobmap
