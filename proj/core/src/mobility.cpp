#include "mobmap/mobility.hpp"

#include <algorithm>
#include <cmath>

namespace mobmap {

namespace {

constexpr std::array<double, 4> kSlopeEdges{10.0, 20.0, 30.0, 40.0};
constexpr std::array<double, 6> kRoughnessEdges{1.2, 1.4, 1.6, 1.8, 2.0, 2.2};
constexpr std::array<double, 5> kSlopeReps{5.0, 15.0, 25.0, 35.0, 45.0};
constexpr std::array<double, 7> kRoughnessReps{1.1, 1.3, 1.5, 1.7, 1.9, 2.1, 2.3};

// Cholesky factorization in place; returns false on a non-positive pivot.
bool cholesky(std::vector<double>& a, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) diag -= a[j * n + k] * a[j * n + k];
        if (diag <= 0.0) return false;
        const double root = std::sqrt(diag);
        a[j * n + j] = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) v -= a[i * n + k] * a[j * n + k];
            a[i * n + j] = v / root;
        }
    }
    return true;
}

std::vector<double> cholesky_solve(const std::vector<double>& l, std::size_t n,
                                   const std::vector<double>& rhs) {
    std::vector<double> x = rhs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) x[i] -= l[i * n + k] * x[k];
        x[i] /= l[i * n + i];
    }
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t k = i + 1; k < n; ++k) x[i] -= l[k * n + i] * x[k];
        x[i] /= l[i * n + i];
    }
    return x;
}

}  // namespace

MobilityRuleTable MobilityRuleTable::standard() {
    MobilityRuleTable t;
    t.scores_ = {{{1.00, 0.75, 0.50, 0.25, 0.00},
                  {0.75, 0.50, 0.25, 0.00, 0.00},
                  {0.50, 0.25, 0.00, 0.00, 0.00},
                  {0.25, 0.00, 0.00, 0.00, 0.00},
                  {0.00, 0.00, 0.00, 0.00, 0.00},
                  {0.00, 0.00, 0.00, 0.00, 0.00},
                  {0.00, 0.00, 0.00, 0.00, 0.00}}};
    return t;
}

int MobilityRuleTable::slope_bin(double slope_deg) {
    for (int i = 0; i < static_cast<int>(kSlopeEdges.size()); ++i) {
        if (slope_deg < kSlopeEdges[i]) return i;
    }
    return kSlopeBins - 1;
}

int MobilityRuleTable::roughness_bin(double roughness) {
    for (int i = 0; i < static_cast<int>(kRoughnessEdges.size()); ++i) {
        if (roughness < kRoughnessEdges[i]) return i;
    }
    return kRoughnessBins - 1;
}

double MobilityRuleTable::lookup(double slope_deg, double roughness) const {
    if (slope_deg < 0.0) throw ParameterError("rule_lookup: slope must be >= 0");
    const double r = std::max(roughness, 1.0);  // Eq.-8 values below 1 clamp up
    return scores_[roughness_bin(r)][slope_bin(slope_deg)];
}

std::vector<std::array<double, 2>> MobilityRuleTable::training_inputs() const {
    std::vector<std::array<double, 2>> inputs;
    inputs.reserve(kSlopeReps.size() * kRoughnessReps.size());
    for (double r : kRoughnessReps) {
        for (double s : kSlopeReps) inputs.push_back({s, r});
    }
    return inputs;
}

std::vector<double> MobilityRuleTable::training_targets() const {
    std::vector<double> targets;
    targets.reserve(kSlopeReps.size() * kRoughnessReps.size());
    for (int r = 0; r < kRoughnessBins; ++r) {
        for (int s = 0; s < kSlopeBins; ++s) targets.push_back(scores_[r][s]);
    }
    return targets;
}

double se_kernel(const std::array<double, 2>& xi, const std::array<double, 2>& xj,
                 double sigma_f, double lambda) {
    if (!(lambda > 0.0)) throw ParameterError("se_kernel: lambda must be > 0");
    const double d0 = xi[0] - xj[0];
    const double d1 = xi[1] - xj[1];
    return sigma_f * sigma_f * std::exp(-(d0 * d0 + d1 * d1) / (2.0 * lambda * lambda));
}

GprModel GprModel::fit(const MobilityRuleTable& table, const GprConfig& cfg) {
    return fit(table.training_inputs(), table.training_targets(), cfg);
}

GprModel GprModel::fit(std::vector<std::array<double, 2>> inputs, std::vector<double> targets,
                       const GprConfig& cfg) {
    if (inputs.empty()) throw ParameterError("gpr_fit: no training points");
    if (inputs.size() != targets.size()) {
        throw ParameterError("gpr_fit: inputs and targets differ in length");
    }
    if (!(cfg.length_scale > 0.0)) throw HyperparameterError("gpr_fit: lambda must be > 0");

    GprModel model;
    model.cfg_ = cfg;

    model.slope_min_ = model.slope_max_ = inputs[0][0];
    model.rough_min_ = model.rough_max_ = inputs[0][1];
    for (const auto& x : inputs) {
        model.slope_min_ = std::min(model.slope_min_, x[0]);
        model.slope_max_ = std::max(model.slope_max_, x[0]);
        model.rough_min_ = std::min(model.rough_min_, x[1]);
        model.rough_max_ = std::max(model.rough_max_, x[1]);
    }
    const double sspan = model.slope_max_ - model.slope_min_;
    const double rspan = model.rough_max_ - model.rough_min_;
    model.inputs_.resize(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        model.inputs_[i] = {sspan > 0.0 ? (inputs[i][0] - model.slope_min_) / sspan : 0.0,
                            rspan > 0.0 ? (inputs[i][1] - model.rough_min_) / rspan : 0.0};
    }

    const std::size_t n = model.inputs_.size();
    std::vector<double> k(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            k[i * n + j] = se_kernel(model.inputs_[i], model.inputs_[j], cfg.sigma_f,
                                     cfg.length_scale);
        }
        k[i * n + i] += cfg.noise * cfg.noise;
    }
    if (!cholesky(k, n)) {
        throw HyperparameterError("gpr_fit: K + sigma_n^2 I is not positive definite");
    }
    model.alpha_ = cholesky_solve(k, n, targets);
    return model;
}

double GprModel::predict(double slope_deg, double roughness) const {
    const double sspan = slope_max_ - slope_min_;
    const double rspan = rough_max_ - rough_min_;
    // The training range bounds the inputs the robot can negotiate at all.
    const std::array<double, 2> xt{
        std::clamp(sspan > 0.0 ? (slope_deg - slope_min_) / sspan : 0.0, 0.0, 1.0),
        std::clamp(rspan > 0.0 ? (roughness - rough_min_) / rspan : 0.0, 0.0, 1.0)};

    double m = 0.0;
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
        m += se_kernel(xt, inputs_[i], cfg_.sigma_f, cfg_.length_scale) * alpha_[i];
    }
    return std::clamp(m, 0.0, 1.0);
}

}  // namespace mobmap
