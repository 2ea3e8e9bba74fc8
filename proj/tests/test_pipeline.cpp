#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mobmap/pipeline.hpp"
#include "mobmap/synth.hpp"

using namespace mobmap;

namespace {

synth::SceneSpec floor_ramp_scene() {
    synth::SceneSpec spec;
    spec.primitives.push_back(synth::parse_primitive("floor:w=1.6,d=1.6,cy=0.4"));
    spec.primitives.push_back(
        synth::parse_primitive("ramp:angle=15,w=0.5,d=0.5,cy=0.3,z0=0.08,density=30000"));
    spec.density = 15000;
    spec.noise_sigma = 0.0005;
    spec.seed = 40;
    spec.camera.position = {0, -1.2, 1.0};
    spec.camera.target = {0, 0.4, 0};
    return spec;
}

}  // namespace

TEST_CASE("floor+ramp scene: ground scores 1, the ramp lands in its table bin") {
    const auto scene = synth::generate(floor_ramp_scene());

    PipelineConfig cfg;
    const auto result = run_pipeline(scene.cloud, cfg);

    REQUIRE(!result.map.entries.empty());
    const auto& ground = result.map.entries.front();
    CHECK(ground.kind == ScoredSegment::Kind::ground);
    CHECK(ground.score == 1.0);

    std::vector<const ScoredSegment*> scored;
    for (const auto& e : result.map.entries) {
        if (e.kind == ScoredSegment::Kind::scored) scored.push_back(&e);
    }
    REQUIRE(scored.size() == 1);  // the ramp
    CHECK(scored[0]->props.slope_deg == doctest::Approx(15.0).epsilon(0.05));
    CHECK(scored[0]->props.rough == doctest::Approx(1.0).epsilon(0.01));
    // Table row 1-1.2, column 10-20.
    CHECK(std::abs(scored[0]->score - 0.75) < 0.05);
}

TEST_CASE("stage records follow the fixed order with non-increasing reduction counts") {
    const auto scene = synth::generate(floor_ramp_scene());
    PipelineConfig cfg;
    const auto result = run_pipeline(scene.cloud, cfg);

    const std::vector<std::string> expected{
        "Denoise",          "Data reduction",     "Normal estimation",
        "RGB-N coding",     "Ground removal",     "Color segmentation",
        "Surface properties estimation",          "Mobility mapping"};
    REQUIRE(result.stages.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(result.stages[i].name == expected[i]);
    }
    // Input sizes shrink through the reducing stages.
    CHECK(result.stages[1].points_processed <= result.stages[0].points_processed);
    CHECK(result.stages[2].points_processed <= result.stages[1].points_processed);
    CHECK(result.stages[5].points_processed <= result.stages[4].points_processed);
}

TEST_CASE("report JSON is byte-identical across runs and carries the schema") {
    const auto scene = synth::generate(floor_ramp_scene());
    PipelineConfig cfg;
    const auto a = run_pipeline(scene.cloud, cfg);
    const auto b = run_pipeline(scene.cloud, cfg);
    const std::string ja = report_json(a, cfg);
    const std::string jb = report_json(b, cfg);
    CHECK(ja == jb);
    CHECK(ja.find("\"schema\": 1") != std::string::npos);
    CHECK(ja.find("\"time_ms\"") == std::string::npos);  // timings only on request

    const std::string with_times = report_json(a, cfg, true);
    CHECK(with_times.find("\"time_ms\"") != std::string::npos);
}

TEST_CASE("report point counts match the clouds handed between stages") {
    const auto scene = synth::generate(floor_ramp_scene());
    PipelineConfig cfg;
    const auto result = run_pipeline(scene.cloud, cfg);

    CHECK(result.stages[0].points_processed == scene.cloud.size());
    CHECK(result.stages[2].points_processed == result.working.size());
    std::size_t mapped = 0;
    for (const auto& e : result.map.entries) mapped += e.indices.size();
    const std::size_t ground_points = result.map.entries.front().indices.size();
    CHECK(result.stages[5].points_processed <= result.working.size() - ground_points + 1);
    CHECK(mapped <= result.working.size());
    // Every mapped index points into the working cloud.
    for (const auto& e : result.map.entries) {
        for (std::size_t i : e.indices) CHECK(i < result.working.size());
    }
}

TEST_CASE("empty and undersized inputs fail with a stage-tagged error") {
    PipelineConfig cfg;
    CHECK_THROWS_AS(run_pipeline(PointCloud{}, cfg), StageError);
    try {
        run_pipeline(PointCloud{}, cfg);
    } catch (const StageError& e) {
        CHECK(e.stage == "Denoise");
    }
}

TEST_CASE("score_colors paints ground green") {
    const auto scene = synth::generate(floor_ramp_scene());
    PipelineConfig cfg;
    const auto result = run_pipeline(scene.cloud, cfg);
    const auto colors = score_colors(result);
    REQUIRE(colors.size() == result.working.size());
    for (std::size_t i : result.map.entries.front().indices) {
        CHECK(colors[i] == Rgb8{0, 255, 0});
    }
}
