#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "exm/diagnosis.hpp"

namespace exm {

struct CorrectionConfig {
    int s_max = 10;          // candidate parameterizations per failure
    double kappa = 2.0;      // gamma shape, >= 1
    DiagnosisConfig diagnosis;
    // retain every candidate with its score (for validity checks)
    bool retain_candidates = false;
};

void validateCorrectionConfig(const CorrectionConfig& cfg, const ParameterSpace& space);

struct CorrectionResult {
    std::optional<ActionParameterization> corrected;  // x*, absent when nothing valid
    double predicted = 0.0;        // success likelihood of x*
    int candidates_valid = 0;      // candidates that passed the precondition filter
    Diagnosis diagnosis;
    // (candidate, score) pairs for valid candidates; filled only when
    // retain_candidates is set
    std::vector<std::pair<ActionParameterization, double>> valid_candidates;
};

/// One signed counter-update: -sgn(delta) * Gamma(shape=kappa, scale=|delta|).
/// The magnitude's density peaks at (kappa-1)*|delta|, so kappa = 2 favors
/// updates directly opposite the falsifying offset and larger kappa favors
/// larger jumps.
double sampleGammaCorrection(double delta, double kappa, RngHandle& rng);

/// Diagnoses the failure, then samples s_max candidates x + Q where Q
/// perturbs only the diagnosed coordinates away from the falsifying
/// parameterization, keeps those satisfying the preconditions, and returns
/// the one with maximal predicted success (ties -> lowest candidate index).
CorrectionResult correctExperience(const ExecutionModel& model, int q,
                                   const ActionParameterization& x,
                                   const CorrectionConfig& cfg, const RngHandle& rng);

struct CorrectedDataset {
    std::vector<Experience> failed_sources;  // label 0, one per corrected failure
    std::vector<Experience> synthetic;       // label 1, the corrections
    int skipped = 0;                         // failures without a valid correction
};

/// Runs correctExperience over every failure; pairs each synthetic
/// experience with its source failure.
CorrectedDataset buildCorrectedDataset(const ExecutionModel& model,
                                       const std::vector<Experience>& failures,
                                       const CorrectionConfig& cfg, const RngHandle& rng);

}  // namespace exm
