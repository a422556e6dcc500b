#include "exm/execution_model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace exm {

const std::set<std::string>& PreconditionModel::mode(int q) const {
    auto it = modes.find(q);
    if (it == modes.end()) {
        throw std::invalid_argument("unknown qualitative mode " + std::to_string(q));
    }
    return it->second;
}

ExecutionModel makeExecutionModel(ParameterSpace space, RelationVocabulary vocab,
                                  PreconditionModel preconditions, SuccessModel success) {
    const auto violations = validateVocabulary(space, vocab);
    if (!violations.empty()) {
        throw std::invalid_argument("execution model: invalid vocabulary: " + violations.front());
    }
    if (preconditions.modes.empty()) {
        throw std::invalid_argument("execution model: precondition model has no modes");
    }
    for (const auto& [q, rels] : preconditions.modes) {
        std::map<std::string, int> per_group;
        for (const auto& name : rels) {
            const RelationDef& r = vocab.rel(name);  // throws on unknown name
            if (!r.group.empty() && ++per_group[r.group] > 1) {
                throw std::invalid_argument("execution model: mode " + std::to_string(q) +
                                            " requires two relations of disjoint group " +
                                            r.group);
            }
        }
    }
    if (success.trainingCount() > 0 &&
        success.hyper().length_scales.size() != space.size()) {
        throw std::invalid_argument("execution model: success model dimension mismatch");
    }
    return ExecutionModel{std::move(space), std::move(vocab), std::move(preconditions),
                          std::move(success)};
}

PreconditionModel learnPreconditions(const RelationVocabulary& vocab,
                                     const std::vector<Experience>& successes, double beta) {
    if (successes.empty()) {
        throw std::invalid_argument("learnPreconditions: no successful experiences");
    }
    if (!(beta > 0.0) || beta > 1.0) {
        throw std::invalid_argument("learnPreconditions: beta must be in (0,1]");
    }
    for (const auto& e : successes) {
        if (e.label != 1.0) {
            throw std::invalid_argument("learnPreconditions: experience not labeled 1");
        }
    }

    std::vector<int> counts(vocab.size(), 0);
    for (const auto& e : successes) {
        const RelationalState state = extractRelations(vocab, e.params);
        for (std::size_t i = 0; i < vocab.size(); ++i) {
            if (state.truth[i]) ++counts[i];
        }
    }
    std::set<std::string> required;
    const double n = static_cast<double>(successes.size());
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        if (static_cast<double>(counts[i]) / n >= beta) required.insert(vocab.rel(i).name);
    }

    // with beta <= 0.5 two members of one group can both clear the bar
    std::map<std::string, int> per_group;
    for (const auto& name : required) {
        const auto& g = vocab.rel(name).group;
        if (!g.empty() && ++per_group[g] > 1) {
            throw std::runtime_error("learnPreconditions: relations of disjoint group " + g +
                                     " both pass beta=" + std::to_string(beta) +
                                     "; use beta > 0.5");
        }
    }
    PreconditionModel R;
    R.modes[1] = std::move(required);
    return R;
}

bool satisfies(const RelationVocabulary& vocab, const PreconditionModel& R, int q,
               const ActionParameterization& x) {
    return satisfiesRelationSet(vocab, R.mode(q), x);
}

double predictSuccess(const SuccessModel& model, const ActionParameterization& x) {
    return model.predict(x);
}

std::optional<ActionParameterization> sampleExecution(const ExecutionModel& model, int q,
                                                      int maxIter, RngHandle& rng) {
    if (maxIter < 1) throw std::invalid_argument("sampleExecution: maxIter must be >= 1");
    const auto& required = model.preconditions.mode(q);  // validates q up front
    (void)required;

    double max_seen = 0.0;
    const std::size_t dim = model.space.size();
    ActionParameterization x(dim, 0.0);
    for (int it = 0; it < maxIter; ++it) {
        for (std::size_t i = 0; i < dim; ++i) {
            x[i] = rng.uniform(model.space.param(i).lower, model.space.param(i).upper);
        }
        const double s = predictSuccess(model.success, x);
        if (s > max_seen) max_seen = s;
        const double accept = max_seen > 0.0 ? s / max_seen : 1.0;
        if (rng.uniform() <= accept && satisfies(model.vocab, model.preconditions, q, x)) {
            return x;
        }
    }
    return std::nullopt;
}

namespace {

using nlohmann::json;

json spaceToJson(const ParameterSpace& space) {
    json arr = json::array();
    for (const auto& p : space.params()) {
        arr.push_back({{"name", p.name}, {"lower", p.lower}, {"upper", p.upper}});
    }
    return arr;
}

ParameterSpace spaceFromJson(const json& arr) {
    std::vector<ParamDef> defs;
    for (const auto& p : arr) {
        defs.push_back({p.at("name").get<std::string>(), p.at("lower").get<double>(),
                        p.at("upper").get<double>()});
    }
    return makeSpace(defs);
}

std::string kindName(PredicateKind k) {
    switch (k) {
        case PredicateKind::BelowThreshold: return "below";
        case PredicateKind::AboveThreshold: return "above";
        case PredicateKind::InsideInterval: return "inside";
    }
    return "below";
}

PredicateKind kindFromName(const std::string& s) {
    if (s == "below") return PredicateKind::BelowThreshold;
    if (s == "above") return PredicateKind::AboveThreshold;
    if (s == "inside") return PredicateKind::InsideInterval;
    throw std::invalid_argument("unknown predicate kind: " + s);
}

}  // namespace

json vocabularyToJson(const RelationVocabulary& vocab) {
    json arr = json::array();
    for (const auto& r : vocab.relations()) {
        json thresholds = json::array({r.lo});
        if (r.kind == PredicateKind::InsideInterval) thresholds.push_back(r.hi);
        json o = {{"name", r.name},     {"parameter", r.parameter},
                  {"axis", r.axis},     {"kind", kindName(r.kind)},
                  {"thresholds", thresholds}};
        if (!r.group.empty()) o["group"] = r.group;
        arr.push_back(o);
    }
    return arr;
}

RelationVocabulary vocabularyFromJson(const json& arr) {
    std::vector<RelationDef> rels;
    for (const auto& o : arr) {
        RelationDef r;
        r.name = o.at("name").get<std::string>();
        r.parameter = o.at("parameter").get<int>();
        r.axis = o.contains("axis") ? o.at("axis").get<int>() : r.parameter;
        r.kind = kindFromName(o.at("kind").get<std::string>());
        const auto& t = o.at("thresholds");
        if (r.kind == PredicateKind::InsideInterval) {
            if (t.size() != 2) {
                throw std::invalid_argument("relation " + r.name + ": interval needs 2 thresholds");
            }
            r.lo = t.at(0).get<double>();
            r.hi = t.at(1).get<double>();
        } else {
            if (t.size() != 1) {
                throw std::invalid_argument("relation " + r.name + ": needs 1 threshold");
            }
            r.lo = t.at(0).get<double>();
        }
        if (o.contains("group")) r.group = o.at("group").get<std::string>();
        rels.push_back(std::move(r));
    }
    return RelationVocabulary(std::move(rels));
}

void saveExecutionModel(const ExecutionModel& model, const std::string& path) {
    json o;
    o["format"] = "execution-model";
    o["version"] = 1;
    o["space"] = spaceToJson(model.space);
    o["vocabulary"] = vocabularyToJson(model.vocab);
    json modes = json::object();
    for (const auto& [q, rels] : model.preconditions.modes) {
        modes[std::to_string(q)] = rels;
    }
    o["preconditions"] = modes;
    std::ostringstream gp;
    model.success.dump(gp);
    o["success_model"] = gp.str();

    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write execution model to " + path);
    f << o.dump(2) << "\n";
}

ExecutionModel loadExecutionModel(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read execution model from " + path);
    json o = json::parse(f);
    if (o.value("format", "") != "execution-model" || o.value("version", 0) != 1) {
        throw std::runtime_error("execution model file: bad format header");
    }
    ParameterSpace space = spaceFromJson(o.at("space"));
    RelationVocabulary vocab = vocabularyFromJson(o.at("vocabulary"));
    PreconditionModel R;
    for (const auto& [qs, rels] : o.at("preconditions").items()) {
        std::set<std::string> set;
        for (const auto& name : rels) set.insert(name.get<std::string>());
        R.modes[std::stoi(qs)] = std::move(set);
    }
    std::istringstream gp(o.at("success_model").get<std::string>());
    SuccessModel success = SuccessModel::load(gp);
    return makeExecutionModel(std::move(space), std::move(vocab), std::move(R),
                              std::move(success));
}

}  // namespace exm
