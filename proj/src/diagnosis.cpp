#include "exm/diagnosis.hpp"

#include <cmath>
#include <stdexcept>

namespace exm {

void validateDiagnosisConfig(const DiagnosisConfig& cfg, const ParameterSpace& space) {
    if (cfg.k_max < 1) throw std::invalid_argument("diagnosis config: k_max must be >= 1");
    if (cfg.sigma0.size() != space.size()) {
        throw std::invalid_argument("diagnosis config: sigma0 size must match the space");
    }
    for (double s : cfg.sigma0) {
        if (!(s > 0.0)) throw std::invalid_argument("diagnosis config: sigma0 must be > 0");
    }
    if (!(cfg.r > 0.0)) throw std::invalid_argument("diagnosis config: r must be > 0");
    if (cfg.i_max < 0) throw std::invalid_argument("diagnosis config: i_max must be >= 0");
    if (cfg.n < 1) throw std::invalid_argument("diagnosis config: n must be >= 1");
    if (!(cfg.alpha > 0.0) || cfg.alpha > 1.0) {
        throw std::invalid_argument("diagnosis config: alpha must be in (0,1]");
    }
}

SingleDiagnosis diagnoseOnce(const ExecutionModel& model, int q,
                             const ActionParameterization& x, const DiagnosisConfig& cfg,
                             RngHandle& rng) {
    requireDimension(model.space, x, "diagnoseOnce");
    validateDiagnosisConfig(cfg, model.space);
    const std::set<std::string>& required = model.preconditions.mode(q);
    const std::size_t dim = model.space.size();

    std::vector<double> sigma = cfg.sigma0;
    std::set<std::string> D;
    ViolationMap X;
    int expansions = 0;

    for (;;) {
        X.clear();
        ActionParameterization sample(dim, 0.0);
        for (int k = 0; k < cfg.k_max; ++k) {
            for (std::size_t i = 0; i < dim; ++i) {
                sample[i] = rng.normal(x[i], sigma[i]);
            }
            const RelationalState state = extractRelations(model.vocab, sample);
            const std::set<std::string> truths = state.trueNames(model.vocab);
            if (truths == required) continue;  // sample satisfies the mode, no violation
            // relations true under the sample but absent from R_q
            bool any = false;
            for (const auto& name : truths) {
                if (required.count(name)) continue;
                any = true;
                D.insert(name);
                // record only the coordinate of the parameter affecting the
                // relation; later violations of the same parameter overwrite
                X[model.vocab.parameterOf(name)] =
                    sample[static_cast<std::size_t>(model.vocab.parameterOf(name))];
            }
            if (any) {
                auto cleaned = removeConflicts(model.vocab, std::move(D), std::move(X));
                D = std::move(cleaned.first);
                X = std::move(cleaned.second);
            }
        }
        if (!D.empty()) break;
        if (expansions == cfg.i_max) {
            SingleDiagnosis res;
            res.found = false;
            res.falsifying = x;
            res.expansions = expansions;
            res.sigma_final = sigma;
            return res;
        }
        for (double& s : sigma) s += cfg.r * s;
        ++expansions;
    }

    SingleDiagnosis res;
    res.found = true;
    res.relations = std::move(D);
    res.falsifying = x;
    for (const auto& [param, value] : X) {
        res.falsifying[static_cast<std::size_t>(param)] = value;
    }
    res.expansions = expansions;
    res.sigma_final = std::move(sigma);
    return res;
}

bool keptByFrequency(int count, int n, double alpha) {
    return static_cast<double>(count) / static_cast<double>(n) > alpha;
}

Diagnosis diagnoseStable(const ExecutionModel& model, int q, const ActionParameterization& x,
                         const DiagnosisConfig& cfg, const RngHandle& rng) {
    requireDimension(model.space, x, "diagnoseStable");
    validateDiagnosisConfig(cfg, model.space);

    std::map<std::string, int> counts;
    std::map<std::string, double> value_sums;  // falsifying coordinate sums per relation
    int worst_expansions = 0;

    for (int run = 0; run < cfg.n; ++run) {
        RngHandle stream = rng.split(static_cast<std::uint64_t>(run));
        const SingleDiagnosis one = diagnoseOnce(model, q, x, cfg, stream);
        if (one.expansions > worst_expansions) worst_expansions = one.expansions;
        if (!one.found) continue;
        for (const auto& name : one.relations) {
            ++counts[name];
            const int param = model.vocab.parameterOf(name);
            value_sums[name] += one.falsifying[static_cast<std::size_t>(param)];
        }
    }

    Diagnosis out;
    out.falsifying = x;
    out.expansions_used = worst_expansions;
    for (const auto& [name, count] : counts) {
        out.frequencies[name] =
            static_cast<double>(count) / static_cast<double>(cfg.n);
        if (keptByFrequency(count, cfg.n, cfg.alpha)) out.candidates.insert(name);
    }

    // A permissive alpha (< 0.5) can let two relations of one group
    // through; the returned candidate set must stay conflict-free.
    if (!out.candidates.empty()) {
        ViolationMap dummy;
        auto cleaned = removeConflicts(model.vocab, std::move(out.candidates), std::move(dummy));
        out.candidates = std::move(cleaned.first);
    }

    for (const auto& name : out.candidates) {
        const int param = model.vocab.parameterOf(name);
        out.falsifying[static_cast<std::size_t>(param)] =
            value_sums[name] / static_cast<double>(counts[name]);
    }
    return out;
}

DiagnosisScore scoreDiagnosis(const std::set<std::string>& predicted,
                              const std::set<std::string>& truth) {
    DiagnosisScore s;
    for (const auto& p : predicted) {
        if (truth.count(p)) {
            ++s.true_positives;
        } else {
            ++s.false_positives;
        }
    }
    for (const auto& t : truth) {
        if (!predicted.count(t)) ++s.false_negatives;
    }
    return s;
}

}  // namespace exm
