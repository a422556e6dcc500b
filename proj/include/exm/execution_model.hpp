#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "exm/core.hpp"
#include "exm/relations.hpp"
#include "exm/success_model.hpp"

namespace exm {

/// Relational constraints per qualitative mode: R_q is the set of
/// relations that must hold (and the only ones allowed to hold) for the
/// action to succeed under mode q.
struct PreconditionModel {
    std::map<int, std::set<std::string>> modes;

    const std::set<std::string>& mode(int q) const;
};

/// The composite execution model: relational preconditions plus the
/// continuous success predictor, over one parameter space.
struct ExecutionModel {
    ParameterSpace space;
    RelationVocabulary vocab;
    PreconditionModel preconditions;
    SuccessModel success;
};

/// Validates all components against each other (dimensions, relation
/// names, disjointness of each R_q) and assembles the model.
ExecutionModel makeExecutionModel(ParameterSpace space, RelationVocabulary vocab,
                                  PreconditionModel preconditions, SuccessModel success);

/// Extracts a single-mode precondition model from successful experiences:
/// R_1 = relations true in at least `beta` of the successes.
PreconditionModel learnPreconditions(const RelationVocabulary& vocab,
                                     const std::vector<Experience>& successes,
                                     double beta = 0.95);

/// R-satisfaction under mode q (exact truth-set match).
bool satisfies(const RelationVocabulary& vocab, const PreconditionModel& R, int q,
               const ActionParameterization& x);

/// Predicted success likelihood, clamped to [0,1].
double predictSuccess(const SuccessModel& model, const ActionParameterization& x);

/// Draws an executable parameterization: uniform proposals over the
/// space, thinned by predicted success relative to the best seen so far,
/// with the relational filter applied last. Empty after maxIter proposals.
std::optional<ActionParameterization> sampleExecution(const ExecutionModel& model, int q,
                                                      int maxIter, RngHandle& rng);

/// One-file bundle: space, vocabulary, preconditions and the GP dump.
void saveExecutionModel(const ExecutionModel& model, const std::string& path);
ExecutionModel loadExecutionModel(const std::string& path);

// JSON (de)serialization of the vocabulary config schema:
//   {name, parameter, axis, kind, thresholds, group}
nlohmann::json vocabularyToJson(const RelationVocabulary& vocab);
RelationVocabulary vocabularyFromJson(const nlohmann::json& arr);

}  // namespace exm
