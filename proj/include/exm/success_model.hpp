#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "exm/core.hpp"

namespace exm {

struct GpHyperparams {
    std::vector<double> length_scales;  // one per parameter, meters
    double signal_variance = 1.0;
    double noise_variance = 0.01;
};

void validateHyperparams(const GpHyperparams& hyper);

/// Squared-exponential kernel with per-axis length scales.
double seKernel(const GpHyperparams& hyper, const ActionParameterization& a,
                const ActionParameterization& b);

class ModelFitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// GP regressor over action parameterizations. Zero prior mean, targets
/// used raw in [0,1], posterior mean clamped to [0,1] at prediction time,
/// so the model reverts to "likely failure" away from data.
class SuccessModel {
public:
    SuccessModel() = default;

    double predict(const ActionParameterization& x) const;

    std::size_t trainingCount() const { return inputs_.size(); }
    const std::vector<ActionParameterization>& inputs() const { return inputs_; }
    const std::vector<double>& targets() const { return targets_; }
    const GpHyperparams& hyper() const { return hyper_; }
    double jitterUsed() const { return jitter_used_; }

    /// Plain-text dump: hyperparameters plus one input/target row per
    /// training point, %.17g so that load() round-trips exactly.
    void dump(std::ostream& os) const;
    static SuccessModel load(std::istream& is);

    friend SuccessModel fitSuccessModelData(std::vector<ActionParameterization> inputs,
                                            std::vector<double> targets,
                                            const GpHyperparams& hyper);

private:
    std::vector<ActionParameterization> inputs_;
    std::vector<double> targets_;
    GpHyperparams hyper_;
    Eigen::VectorXd alpha_;  // (K + sigma_n^2 I + jitter I)^-1 y
    double jitter_used_ = 0.0;
};

SuccessModel fitSuccessModelData(std::vector<ActionParameterization> inputs,
                                 std::vector<double> targets, const GpHyperparams& hyper);

/// Fits on the experiences' parameterizations and labels.
SuccessModel fitSuccessModel(const std::vector<Experience>& experiences,
                             const GpHyperparams& hyper);

/// New model trained on failed (forced label 0) plus corrected (forced
/// label 1) experiences only, reusing the old model's hyperparameters.
SuccessModel refitWithSynthetic(const SuccessModel& model,
                                const std::vector<Experience>& failed,
                                const std::vector<Experience>& corrected);

}  // namespace exm
