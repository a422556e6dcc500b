#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "exm/execution_model.hpp"

namespace exm {

struct DiagnosisConfig {
    int k_max = 200;                // samples per search region
    std::vector<double> sigma0;     // initial per-parameter standard deviations
    double r = 0.05;                // region expansion ratio
    int i_max = 50;                 // maximum region expansions before giving up
    int n = 50;                     // stability runs
    double alpha = 0.8;             // acceptance proportion in (0,1]
};

void validateDiagnosisConfig(const DiagnosisConfig& cfg, const ParameterSpace& space);

/// Result of a single perturbation search.
struct SingleDiagnosis {
    bool found = false;
    std::set<std::string> relations;     // violated-relation candidates
    ActionParameterization falsifying;   // x_f; equals x off the affected axes
    int expansions = 0;                  // region growths applied
    std::vector<double> sigma_final;     // standard deviations of the last region searched
};

/// Aggregated, stability-filtered diagnosis.
struct Diagnosis {
    std::set<std::string> candidates;          // D after the frequency filter
    ActionParameterization falsifying;         // x_f
    std::map<std::string, double> frequencies; // appearance proportion of every relation seen
    int expansions_used = 0;                   // worst case over the runs
};

struct DiagnosisScore {
    int true_positives = 0;
    int false_positives = 0;
    int false_negatives = 0;
};

/// One perturbation search around the failed parameterization x: batches
/// of k_max Gaussian samples, violated-relation bookkeeping with conflict
/// removal after every hit, and multiplicative region expansion whenever a
/// batch comes up empty. `found == false` after i_max expansions.
SingleDiagnosis diagnoseOnce(const ExecutionModel& model, int q,
                             const ActionParameterization& x, const DiagnosisConfig& cfg,
                             RngHandle& rng);

/// n independent diagnoseOnce runs on split RNG streams; keeps relations
/// whose appearance proportion strictly exceeds alpha and averages the
/// per-relation falsifying coordinates over the runs containing them.
Diagnosis diagnoseStable(const ExecutionModel& model, int q, const ActionParameterization& x,
                         const DiagnosisConfig& cfg, const RngHandle& rng);

/// The frequency filter used by diagnoseStable: keep iff count/n > alpha.
bool keptByFrequency(int count, int n, double alpha);

DiagnosisScore scoreDiagnosis(const std::set<std::string>& predicted,
                              const std::set<std::string>& truth);

}  // namespace exm
