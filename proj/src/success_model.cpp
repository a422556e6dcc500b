#include "exm/success_model.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace exm {

void validateHyperparams(const GpHyperparams& hyper) {
    if (hyper.length_scales.empty()) {
        throw std::invalid_argument("gp hyperparams: no length scales");
    }
    for (double l : hyper.length_scales) {
        if (!(l > 0.0)) throw std::invalid_argument("gp hyperparams: length scales must be > 0");
    }
    if (!(hyper.signal_variance > 0.0)) {
        throw std::invalid_argument("gp hyperparams: signal variance must be > 0");
    }
    if (!(hyper.noise_variance > 0.0)) {
        throw std::invalid_argument("gp hyperparams: noise variance must be > 0");
    }
}

double seKernel(const GpHyperparams& hyper, const ActionParameterization& a,
                const ActionParameterization& b) {
    if (a.size() != b.size() || a.size() != hyper.length_scales.size()) {
        throw std::invalid_argument("seKernel: dimension mismatch");
    }
    double q = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = (a[i] - b[i]) / hyper.length_scales[i];
        q += d * d;
    }
    return hyper.signal_variance * std::exp(-0.5 * q);
}

SuccessModel fitSuccessModelData(std::vector<ActionParameterization> inputs,
                                 std::vector<double> targets, const GpHyperparams& hyper) {
    validateHyperparams(hyper);
    if (inputs.empty()) throw std::invalid_argument("fitSuccessModel: no training data");
    if (inputs.size() != targets.size()) {
        throw std::invalid_argument("fitSuccessModel: inputs/targets size mismatch");
    }
    const std::size_t dim = hyper.length_scales.size();
    for (const auto& x : inputs) {
        if (x.size() != dim) {
            throw std::invalid_argument("fitSuccessModel: input dimension mismatch");
        }
    }

    const Eigen::Index n = static_cast<Eigen::Index>(inputs.size());
    Eigen::MatrixXd K(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const double k = seKernel(hyper, inputs[static_cast<std::size_t>(i)],
                                      inputs[static_cast<std::size_t>(j)]);
            K(i, j) = k;
            K(j, i) = k;
        }
    }
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y(i) = targets[static_cast<std::size_t>(i)];

    // Cholesky with jitter escalation 1e-10 .. 1e-4
    double jitter = 0.0;
    for (;;) {
        Eigen::MatrixXd A = K;
        A.diagonal().array() += hyper.noise_variance + jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(A);
        if (llt.info() == Eigen::Success) {
            SuccessModel m;
            m.inputs_ = std::move(inputs);
            m.targets_ = std::move(targets);
            m.hyper_ = hyper;
            m.alpha_ = llt.solve(y);
            m.jitter_used_ = jitter;
            return m;
        }
        if (jitter == 0.0) {
            jitter = 1e-10;
        } else if (jitter < 1e-4) {
            jitter *= 10.0;
        } else {
            throw ModelFitError(
                "fitSuccessModel: kernel matrix not positive definite even with jitter 1e-4 "
                "(n=" + std::to_string(n) + "); data is too degenerate for these hyperparameters");
        }
    }
}

SuccessModel fitSuccessModel(const std::vector<Experience>& experiences,
                             const GpHyperparams& hyper) {
    if (experiences.empty()) throw std::invalid_argument("fitSuccessModel: no experiences");
    std::vector<ActionParameterization> inputs;
    std::vector<double> targets;
    inputs.reserve(experiences.size());
    targets.reserve(experiences.size());
    for (const auto& e : experiences) {
        if (e.label < 0.0 || e.label > 1.0) {
            throw std::invalid_argument("fitSuccessModel: label outside [0,1]");
        }
        inputs.push_back(e.params);
        targets.push_back(e.label);
    }
    return fitSuccessModelData(std::move(inputs), std::move(targets), hyper);
}

double SuccessModel::predict(const ActionParameterization& x) const {
    if (inputs_.empty()) throw std::logic_error("predict: model not fitted");
    if (x.size() != hyper_.length_scales.size()) {
        throw std::invalid_argument("predict: dimension mismatch");
    }
    double mean = 0.0;
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
        mean += seKernel(hyper_, x, inputs_[i]) * alpha_(static_cast<Eigen::Index>(i));
    }
    if (mean < 0.0) mean = 0.0;
    if (mean > 1.0) mean = 1.0;
    return mean;
}

SuccessModel refitWithSynthetic(const SuccessModel& model,
                                const std::vector<Experience>& failed,
                                const std::vector<Experience>& corrected) {
    if (corrected.empty()) {
        throw std::invalid_argument("refitWithSynthetic: corrected set is empty");
    }
    std::vector<ActionParameterization> inputs;
    std::vector<double> targets;
    inputs.reserve(failed.size() + corrected.size());
    for (const auto& e : failed) {
        inputs.push_back(e.params);
        targets.push_back(0.0);
    }
    for (const auto& e : corrected) {
        inputs.push_back(e.params);
        targets.push_back(1.0);
    }
    return fitSuccessModelData(std::move(inputs), std::move(targets), model.hyper());
}

namespace {

std::string fmtDouble(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void SuccessModel::dump(std::ostream& os) const {
    os << "success-model 1\n";
    os << "dim " << hyper_.length_scales.size() << "\n";
    os << "count " << inputs_.size() << "\n";
    os << "length_scales";
    for (double l : hyper_.length_scales) os << " " << fmtDouble(l);
    os << "\n";
    os << "signal_variance " << fmtDouble(hyper_.signal_variance) << "\n";
    os << "noise_variance " << fmtDouble(hyper_.noise_variance) << "\n";
    os << "data\n";
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
        for (double v : inputs_[i]) os << fmtDouble(v) << " ";
        os << fmtDouble(targets_[i]) << "\n";
    }
}

SuccessModel SuccessModel::load(std::istream& is) {
    std::string tag;
    int version = 0;
    is >> tag >> version;
    if (!is || tag != "success-model" || version != 1) {
        throw std::runtime_error("success model load: bad header");
    }
    std::size_t dim = 0, count = 0;
    std::string key;
    is >> key >> dim;
    if (!is || key != "dim") throw std::runtime_error("success model load: missing dim");
    is >> key >> count;
    if (!is || key != "count") throw std::runtime_error("success model load: missing count");

    GpHyperparams hyper;
    is >> key;
    if (key != "length_scales") throw std::runtime_error("success model load: missing scales");
    hyper.length_scales.resize(dim);
    for (auto& l : hyper.length_scales) is >> l;
    is >> key >> hyper.signal_variance;
    if (key != "signal_variance") throw std::runtime_error("success model load: missing sigf");
    is >> key >> hyper.noise_variance;
    if (key != "noise_variance") throw std::runtime_error("success model load: missing sign");
    is >> key;
    if (!is || key != "data") throw std::runtime_error("success model load: missing data");

    std::vector<ActionParameterization> inputs(count, ActionParameterization(dim, 0.0));
    std::vector<double> targets(count, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
        for (auto& v : inputs[i]) is >> v;
        is >> targets[i];
    }
    if (!is) throw std::runtime_error("success model load: truncated data section");
    return fitSuccessModelData(std::move(inputs), std::move(targets), hyper);
}

}  // namespace exm
