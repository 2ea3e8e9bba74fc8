#include "mobmap/pipeline.hpp"

#include <chrono>
#include <utility>

#include <json.hpp>

namespace mobmap {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Deterministic per-segment seed derived from the base seed (splitmix64).
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

PipelineResult run_pipeline(const PointCloud& input, const PipelineConfig& cfg) {
    PipelineResult result;
    auto run_stage = [&](const std::string& name, std::size_t points, auto&& body) {
        const auto start = Clock::now();
        try {
            body();
        } catch (const StageError&) {
            throw;
        } catch (const Error& e) {
            throw StageError(name, e.what());
        }
        result.stages.push_back({name, ms_since(start), points});
    };

    // Denoise
    PointCloud denoised;
    run_stage("Denoise", input.size(), [&] {
        denoised = denoise_statistical(input, cfg.denoise_k, cfg.denoise_alpha).first;
    });

    // Data reduction: voxel downsampling, then depth range cut.
    run_stage("Data reduction", denoised.size(), [&] {
        result.working = range_filter(voxel_downsample(denoised, cfg.voxel_edge), cfg.max_depth);
    });
    denoised = PointCloud{};

    // Normal estimation
    KdTree working_index({});
    run_stage("Normal estimation", result.working.size(), [&] {
        working_index = KdTree(result.working);
        result.normals =
            estimate_normals(result.working, working_index, cfg.normal_k, cfg.viewpoint);
    });

    // RGB-N coding
    run_stage("RGB-N coding", result.working.size(), [&] {
        result.rgbn = rgbn_encode(result.normals);
        result.working.colors = result.rgbn;
    });

    // Ground removal
    GroundRemoval ground;
    run_stage("Ground removal", result.working.size(), [&] {
        ground = remove_ground(result.working, result.normals, cfg.ransac, cfg.ransac_seed);
        result.ground_plane = ground.plane;
    });

    // Color segmentation over the remaining cloud.
    std::vector<Segment> segments;
    run_stage("Color segmentation", ground.rest.size(), [&] {
        if (ground.rest.empty()) return;
        const KdTree rest_index(ground.rest);
        std::vector<bool> admissible(ground.rest.size());
        for (std::size_t i = 0; i < ground.rest.size(); ++i) {
            admissible[i] = ground.rest_normals.valid(i);
        }
        GrowConfig grow;
        grow.color_threshold = cfg.color_threshold;
        grow.radius = cfg.effective_grow_radius();
        grow.min_segment_size = cfg.min_segment_size;
        segments = region_grow(ground.rest, rest_index, grow, cfg.grow_seed, &admissible);
    });

    // Surface properties per segment.
    std::vector<SurfaceProperties> props(segments.size());
    run_stage("Surface properties estimation", ground.rest.size(), [&] {
        const Vec3 ground_normal = result.ground_plane.normal();
        for (std::size_t s = 0; s < segments.size(); ++s) {
            if (segments[s].undersized) continue;
            props[s] = estimate_surface(ground.rest, segments[s].indices, ground_normal,
                                        cfg.ransac, mix_seed(cfg.ransac_seed, s), cfg.viewpoint);
        }
    });

    // Mobility mapping
    run_stage("Mobility mapping", ground.rest.size(), [&] {
        const GprModel model = GprModel::fit(MobilityRuleTable::standard(), cfg.gpr);

        ScoredSegment ground_entry;
        ground_entry.id = 0;
        ground_entry.kind = ScoredSegment::Kind::ground;
        ground_entry.indices = ground.ground;
        ground_entry.score = 1.0;  // the reference plane of the slope measure
        ground_entry.props.defined = true;
        ground_entry.props.plane = ground.plane;
        result.map.entries.push_back(std::move(ground_entry));

        for (std::size_t s = 0; s < segments.size(); ++s) {
            ScoredSegment entry;
            entry.id = static_cast<int>(s) + 1;
            entry.indices.reserve(segments[s].indices.size());
            for (std::size_t i : segments[s].indices) {
                entry.indices.push_back(ground.rest_to_original[i]);
            }
            if (segments[s].undersized) {
                entry.kind = ScoredSegment::Kind::undersized;
                entry.score = 0.0;
            } else if (!props[s].defined) {
                entry.kind = ScoredSegment::Kind::undefined;
                entry.score = 0.0;
            } else {
                entry.kind = ScoredSegment::Kind::scored;
                entry.props = props[s];
                entry.score = model.predict(props[s].slope_deg, props[s].rough);
            }
            result.map.entries.push_back(std::move(entry));
        }
    });

    return result;
}

std::string report_json(const PipelineResult& result, const PipelineConfig& cfg,
                        bool with_timings) {
    nlohmann::ordered_json doc;
    doc["schema"] = 1;

    doc["config"] = {
        {"voxel_edge", cfg.voxel_edge},
        {"max_depth", cfg.max_depth},
        {"denoise_k", cfg.denoise_k},
        {"denoise_alpha", cfg.denoise_alpha},
        {"normal_k", cfg.normal_k},
        {"viewpoint", {cfg.viewpoint.x, cfg.viewpoint.y, cfg.viewpoint.z}},
        {"ransac_p", cfg.ransac.success_prob},
        {"ransac_epsilon", cfg.ransac.outlier_ratio},
        {"ransac_dt", cfg.ransac.distance_threshold},
        {"ransac_cap", cfg.ransac.max_iterations},
        {"ransac_seed", cfg.ransac_seed},
        {"color_threshold", cfg.color_threshold},
        {"grow_radius", cfg.effective_grow_radius()},
        {"min_segment_size", cfg.min_segment_size},
        {"grow_seed", cfg.grow_seed},
        {"sigma_f", cfg.gpr.sigma_f},
        {"lambda", cfg.gpr.length_scale},
        {"sigma_n", cfg.gpr.noise},
    };

    doc["stages"] = nlohmann::ordered_json::array();
    for (const StageRecord& s : result.stages) {
        nlohmann::ordered_json stage{{"name", s.name}, {"points_processed", s.points_processed}};
        if (with_timings) stage["time_ms"] = s.ms;
        doc["stages"].push_back(stage);
    }

    doc["ground"] = {
        {"plane", {result.ground_plane.a, result.ground_plane.b, result.ground_plane.c,
                   result.ground_plane.d}},
        {"points", result.map.entries.empty() ? 0 : result.map.entries.front().indices.size()},
        {"score", 1.0},
    };

    doc["segments"] = nlohmann::ordered_json::array();
    for (const ScoredSegment& seg : result.map.entries) {
        if (seg.kind == ScoredSegment::Kind::ground) continue;
        nlohmann::ordered_json entry;
        entry["id"] = seg.id;
        entry["points"] = seg.indices.size();
        switch (seg.kind) {
            case ScoredSegment::Kind::scored: entry["kind"] = "scored"; break;
            case ScoredSegment::Kind::undersized: entry["kind"] = "undersized"; break;
            default: entry["kind"] = "undefined"; break;
        }
        if (seg.kind == ScoredSegment::Kind::scored) {
            entry["plane"] = {seg.props.plane.a, seg.props.plane.b, seg.props.plane.c,
                              seg.props.plane.d};
            entry["slope_deg"] = seg.props.slope_deg;
            entry["roughness"] = seg.props.rough;
        }
        entry["score"] = seg.score;
        doc["segments"].push_back(entry);
    }

    return doc.dump(2) + "\n";
}

std::vector<Rgb8> score_colors(const PipelineResult& result) {
    std::vector<Rgb8> colors(result.working.size(), mobility_color(0.0));
    for (const ScoredSegment& seg : result.map.entries) {
        const Rgb8 c = mobility_color(seg.score);
        for (std::size_t i : seg.indices) colors[i] = c;
    }
    return colors;
}

}  // namespace mobmap
