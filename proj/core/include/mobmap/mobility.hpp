#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mobmap/surface.hpp"
#include "mobmap/types.hpp"

namespace mobmap {

/// Empirical mobility rule: a (roughness bin x slope bin) grid of scores in
/// {0, 0.25, 0.5, 0.75, 1}. Bins are left-closed right-open; the last bin of
/// each axis is unbounded. Scores never increase with slope or roughness.
class MobilityRuleTable {
public:
    static constexpr int kSlopeBins = 5;      // 0-10, 10-20, 20-30, 30-40, >40 degrees
    static constexpr int kRoughnessBins = 7;  // 1-1.2 ... 2.0-2.2, >2.2

    /// The empirical rule grid this scoring scheme ships with.
    static MobilityRuleTable standard();

    double lookup(double slope_deg, double roughness) const;
    double at(int roughness_bin, int slope_bin) const {
        return scores_[roughness_bin][slope_bin];
    }

    /// Bin representatives used as GPR training inputs: slope midpoints
    /// {5,15,25,35} plus 45 for the open bin; roughness midpoints
    /// {1.1,...,2.1} plus 2.3 for the open bin.
    std::vector<std::array<double, 2>> training_inputs() const;
    std::vector<double> training_targets() const;

    static int slope_bin(double slope_deg);
    static int roughness_bin(double roughness);

private:
    std::array<std::array<double, kSlopeBins>, kRoughnessBins> scores_{};
};

/// Squared-exponential covariance sigma_f^2 * exp(-|xi-xj|^2 / (2 lambda^2)).
double se_kernel(const std::array<double, 2>& xi, const std::array<double, 2>& xj,
                 double sigma_f, double lambda);

struct GprConfig {
    double sigma_f = 1.0;
    double length_scale = 0.1;  // lambda, on inputs normalized to [0,1]
    double noise = 1e-2;        // sigma_n
};

/// Gaussian process regression over the rule table: inputs (slope, roughness)
/// normalized per-dimension to [0,1] over the training range, SE kernel,
/// solve vector cached at fit time so predictions are O(n).
class GprModel {
public:
    /// Throws HyperparameterError when K + sigma_n^2 I is not positive definite.
    static GprModel fit(const MobilityRuleTable& table, const GprConfig& cfg = {});
    static GprModel fit(std::vector<std::array<double, 2>> inputs, std::vector<double> targets,
                        const GprConfig& cfg = {});

    /// Mean prediction at (slope, roughness); inputs are clamped to the
    /// training range and the output to [0,1].
    double predict(double slope_deg, double roughness) const;

    const GprConfig& config() const { return cfg_; }

private:
    GprConfig cfg_;
    std::vector<std::array<double, 2>> inputs_;  // normalized
    std::vector<double> alpha_;                  // (K + sigma_n^2 I)^{-1} y
    double slope_min_ = 0, slope_max_ = 1;
    double rough_min_ = 0, rough_max_ = 1;
};

/// One scored entry of a mobility map. Indices refer to the cloud the map was
/// built against (the reduced working cloud in the pipeline).
struct ScoredSegment {
    enum class Kind : std::uint8_t { ground, scored, undersized, undefined };
    int id = 0;
    Kind kind = Kind::scored;
    std::vector<std::size_t> indices;
    SurfaceProperties props;
    double score = 0.0;
};

struct MobilityMap {
    std::vector<ScoredSegment> entries;  // ground first when present
};

}  // namespace mobmap
