#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "exm/core.hpp"

namespace exm {

enum class PredicateKind {
    BelowThreshold,   // value < thresholds[0]
    AboveThreshold,   // value > thresholds[0]
    InsideInterval,   // thresholds[0] <= value <= thresholds[1]
};

/// One spatial predicate over a single action parameter.
///
/// `parameter` is the image of the relation under the relation->parameter
/// mapping: the one parameter whose value decides the relation. `axis` is
/// the coordinate the predicate reads; since relations depend on exactly
/// one parameter, the two must agree. Relations that can never hold
/// simultaneously share a `group` id.
struct RelationDef {
    std::string name;
    int parameter = 0;
    int axis = 0;
    PredicateKind kind = PredicateKind::BelowThreshold;
    double lo = 0.0;  // single threshold for Below/Above; interval lower bound otherwise
    double hi = 0.0;  // interval upper bound; unused for Below/Above
    std::string group;  // empty = not in any disjoint group
};

class RelationVocabulary {
public:
    RelationVocabulary() = default;
    explicit RelationVocabulary(std::vector<RelationDef> relations);

    std::size_t size() const { return relations_.size(); }
    const RelationDef& rel(std::size_t i) const { return relations_.at(i); }
    const std::vector<RelationDef>& relations() const { return relations_; }
    int indexOf(const std::string& name) const;  // -1 if absent
    const RelationDef& rel(const std::string& name) const;  // throws on unknown name

    /// The mapping M: relation name -> parameter index it affects.
    int parameterOf(const std::string& name) const;

    /// Names of all relations sharing the given relation's group
    /// (including itself); singleton for ungrouped relations.
    std::vector<std::string> groupMembers(const std::string& name) const;

private:
    std::vector<RelationDef> relations_;
};

struct RelationalState {
    std::vector<bool> truth;  // aligned with the vocabulary

    std::set<std::string> trueNames(const RelationVocabulary& vocab) const;
};

/// Validating constructor for externally supplied truth assignments;
/// rejects states with two true relations in one disjoint group.
RelationalState makeRelationalState(const RelationVocabulary& vocab,
                                    std::vector<bool> truth);

bool evalPredicate(const RelationDef& rel, double value);

/// Deterministically evaluates every predicate of the vocabulary on x.
RelationalState extractRelations(const RelationVocabulary& vocab,
                                 const ActionParameterization& x);

/// Structural checks: every parameter covered by at least one relation
/// (the mapping is surjective), each disjoint group confined to a single
/// parameter with pairwise disjoint predicate regions, names unique,
/// indices in range. Returns human-readable violations; empty = valid.
std::vector<std::string> validateVocabulary(const ParameterSpace& space,
                                            const RelationVocabulary& vocab);

// Per-parameter record of the perturbed coordinate value that triggered a
// violation; the "zeros everywhere except at the parameter" update vector
// collapses to one scalar per parameter index.
using ViolationMap = std::map<int, double>;

/// Drops every member of any disjoint group with two or more relations in
/// D, and removes ViolationMap entries whose justifying relations are all
/// gone. Idempotent.
std::pair<std::set<std::string>, ViolationMap> removeConflicts(
    const RelationVocabulary& vocab, std::set<std::string> D, ViolationMap X);

/// True iff extractRelations(x) marks true exactly the given required set
/// and false everything else in the vocabulary.
bool satisfiesRelationSet(const RelationVocabulary& vocab,
                          const std::set<std::string>& required,
                          const ActionParameterization& x);

}  // namespace exm
