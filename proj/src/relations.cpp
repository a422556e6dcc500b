#include "exm/relations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace exm {

RelationVocabulary::RelationVocabulary(std::vector<RelationDef> relations)
    : relations_(std::move(relations)) {}

int RelationVocabulary::indexOf(const std::string& name) const {
    for (std::size_t i = 0; i < relations_.size(); ++i) {
        if (relations_[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

const RelationDef& RelationVocabulary::rel(const std::string& name) const {
    const int i = indexOf(name);
    if (i < 0) throw std::invalid_argument("unknown relation name: " + name);
    return relations_[static_cast<std::size_t>(i)];
}

int RelationVocabulary::parameterOf(const std::string& name) const {
    return rel(name).parameter;
}

std::vector<std::string> RelationVocabulary::groupMembers(const std::string& name) const {
    const RelationDef& r = rel(name);
    if (r.group.empty()) return {r.name};
    std::vector<std::string> out;
    for (const auto& other : relations_) {
        if (other.group == r.group) out.push_back(other.name);
    }
    return out;
}

std::set<std::string> RelationalState::trueNames(const RelationVocabulary& vocab) const {
    std::set<std::string> out;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i]) out.insert(vocab.rel(i).name);
    }
    return out;
}

RelationalState makeRelationalState(const RelationVocabulary& vocab,
                                    std::vector<bool> truth) {
    if (truth.size() != vocab.size()) {
        throw std::invalid_argument("relational state: truth vector length mismatch");
    }
    std::map<std::string, int> true_per_group;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (!truth[i]) continue;
        const auto& g = vocab.rel(i).group;
        if (!g.empty() && ++true_per_group[g] > 1) {
            throw std::invalid_argument("relational state: disjoint group " + g +
                                        " has more than one true relation");
        }
    }
    return RelationalState{std::move(truth)};
}

bool evalPredicate(const RelationDef& rel, double value) {
    switch (rel.kind) {
        case PredicateKind::BelowThreshold: return value < rel.lo;
        case PredicateKind::AboveThreshold: return value > rel.lo;
        case PredicateKind::InsideInterval: return rel.lo <= value && value <= rel.hi;
    }
    return false;
}

RelationalState extractRelations(const RelationVocabulary& vocab,
                                 const ActionParameterization& x) {
    std::vector<bool> truth(vocab.size(), false);
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        const RelationDef& r = vocab.rel(i);
        if (r.axis < 0 || static_cast<std::size_t>(r.axis) >= x.size()) {
            throw std::invalid_argument("extractRelations: relation " + r.name +
                                        " reads axis " + std::to_string(r.axis) +
                                        " but x has dimension " + std::to_string(x.size()));
        }
        truth[i] = evalPredicate(r, x[static_cast<std::size_t>(r.axis)]);
    }
    return RelationalState{std::move(truth)};
}

namespace {

// Predicate region as a 1-D interval with open/closed ends.
struct Region {
    double lo, hi;
    bool lo_open, hi_open;
};

Region regionOf(const RelationDef& r) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (r.kind) {
        case PredicateKind::BelowThreshold: return {-inf, r.lo, true, true};
        case PredicateKind::AboveThreshold: return {r.lo, inf, true, true};
        case PredicateKind::InsideInterval: return {r.lo, r.hi, false, false};
    }
    return {0, 0, true, true};
}

bool regionsOverlap(const Region& a, const Region& b) {
    const double lo = std::max(a.lo, b.lo);
    const double hi = std::min(a.hi, b.hi);
    if (lo < hi) return true;
    if (lo > hi) return false;
    // touching boundary: overlap only if closed on both relevant sides
    const bool a_closed = (lo == a.lo) ? !a.lo_open : !a.hi_open;
    const bool b_closed = (lo == b.lo) ? !b.lo_open : !b.hi_open;
    return a_closed && b_closed;
}

}  // namespace

std::vector<std::string> validateVocabulary(const ParameterSpace& space,
                                            const RelationVocabulary& vocab) {
    std::vector<std::string> violations;

    std::set<std::string> names;
    for (const auto& r : vocab.relations()) {
        if (!names.insert(r.name).second) {
            violations.push_back("duplicate relation name " + r.name);
        }
        if (r.parameter < 0 || static_cast<std::size_t>(r.parameter) >= space.size()) {
            violations.push_back("relation " + r.name + " references parameter index " +
                                 std::to_string(r.parameter) + " outside the space");
            continue;
        }
        if (r.axis != r.parameter) {
            violations.push_back("relation " + r.name +
                                 " reads a different axis than the parameter it maps to");
        }
        if (r.kind == PredicateKind::InsideInterval && !(r.lo <= r.hi)) {
            violations.push_back("relation " + r.name + " has an inverted interval");
        }
    }

    // surjectivity of the relation->parameter mapping
    for (std::size_t p = 0; p < space.size(); ++p) {
        bool covered = false;
        for (const auto& r : vocab.relations()) {
            if (r.parameter == static_cast<int>(p)) { covered = true; break; }
        }
        if (!covered) {
            violations.push_back("parameter " + space.param(p).name + " has no relation");
        }
    }

    // disjoint groups: one parameter, pairwise disjoint regions
    std::map<std::string, std::vector<const RelationDef*>> groups;
    for (const auto& r : vocab.relations()) {
        if (!r.group.empty()) groups[r.group].push_back(&r);
    }
    for (const auto& [gname, members] : groups) {
        for (std::size_t i = 1; i < members.size(); ++i) {
            if (members[i]->parameter != members[0]->parameter) {
                violations.push_back("group " + gname + " spans multiple parameters");
                break;
            }
        }
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                if (members[i]->parameter != members[j]->parameter) continue;
                if (regionsOverlap(regionOf(*members[i]), regionOf(*members[j]))) {
                    violations.push_back("group " + gname + ": relations " + members[i]->name +
                                         " and " + members[j]->name + " are not disjoint");
                }
            }
        }
    }
    return violations;
}

std::pair<std::set<std::string>, ViolationMap> removeConflicts(
    const RelationVocabulary& vocab, std::set<std::string> D, ViolationMap X) {
    // count D-members per group
    std::map<std::string, int> group_count;
    for (const auto& name : D) {
        const RelationDef& r = vocab.rel(name);  // throws on unknown name
        if (!r.group.empty()) ++group_count[r.group];
    }

    std::set<std::string> removed;
    for (auto it = D.begin(); it != D.end();) {
        const RelationDef& r = vocab.rel(*it);
        if (!r.group.empty() && group_count[r.group] >= 2) {
            removed.insert(*it);
            it = D.erase(it);
        } else {
            ++it;
        }
    }

    if (!removed.empty()) {
        // drop X entries whose justifying relations were all removed
        for (auto it = X.begin(); it != X.end();) {
            bool justified = false;
            for (const auto& name : D) {
                if (vocab.parameterOf(name) == it->first) { justified = true; break; }
            }
            if (!justified) {
                it = X.erase(it);
            } else {
                ++it;
            }
        }
    }
    return {std::move(D), std::move(X)};
}

bool satisfiesRelationSet(const RelationVocabulary& vocab,
                          const std::set<std::string>& required,
                          const ActionParameterization& x) {
    const RelationalState state = extractRelations(vocab, x);
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        const bool needed = required.count(vocab.rel(i).name) > 0;
        if (state.truth[i] != needed) return false;
    }
    return true;
}

}  // namespace exm
