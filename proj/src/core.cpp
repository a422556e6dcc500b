#include "exm/core.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace exm {

ParameterSpace::ParameterSpace(std::vector<ParamDef> params) : params_(std::move(params)) {
    if (params_.empty()) {
        throw std::invalid_argument("parameter space: empty definition list");
    }
    std::set<std::string> seen;
    for (const auto& p : params_) {
        if (!seen.insert(p.name).second) {
            throw std::invalid_argument("parameter space: duplicate name " + p.name);
        }
        if (!(p.lower < p.upper)) {
            throw std::invalid_argument("parameter space: inverted/empty bounds for " + p.name);
        }
        if (!std::isfinite(p.lower) || !std::isfinite(p.upper)) {
            throw std::invalid_argument("parameter space: non-finite bounds for " + p.name);
        }
    }
}

int ParameterSpace::indexOf(const std::string& name) const {
    for (std::size_t i = 0; i < params_.size(); ++i) {
        if (params_[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

ParameterSpace makeSpace(const std::vector<ParamDef>& definitions) {
    return ParameterSpace(definitions);
}

void requireDimension(const ParameterSpace& space, const ActionParameterization& x,
                      const char* where) {
    if (x.size() != space.size()) {
        throw std::invalid_argument(std::string(where) + ": dimension mismatch (got " +
                                    std::to_string(x.size()) + ", space has " +
                                    std::to_string(space.size()) + ")");
    }
}

ActionParameterization clampToSpace(const ParameterSpace& space,
                                    const ActionParameterization& x) {
    requireDimension(space, x, "clampToSpace");
    ActionParameterization out = x;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& p = space.param(i);
        if (out[i] < p.lower) out[i] = p.lower;
        if (out[i] > p.upper) out[i] = p.upper;
    }
    return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

RngHandle::RngHandle(std::uint64_t seed) : seed_(seed), engine_(seed) {}

RngHandle RngHandle::split(std::uint64_t stream) const {
    // Derive the child seed from (seed, stream) only; the parent's engine
    // state is not consumed, so split order does not matter.
    std::uint64_t s = seed_ ^ (0x632BE59BD9B4E019ULL * (stream + 1));
    splitmix64(s);
    std::uint64_t child = splitmix64(s);
    return RngHandle(child);
}

double RngHandle::uniform() {
    // 53-bit mantissa in [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngHandle::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double RngHandle::normal(double mean, double stddev) {
    // Box-Muller, one variate per call; the sine twin is discarded to keep
    // the stream a pure function of the call sequence.
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * M_PI * u2);
}

double RngHandle::gamma(double shape, double scale) {
    if (!(shape >= 1.0)) {
        throw std::invalid_argument("gamma: shape must be >= 1");
    }
    if (!(scale > 0.0)) {
        throw std::invalid_argument("gamma: scale must be > 0");
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = normal(0.0, 1.0);
        const double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        const double v = t * t * t;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
}

}  // namespace exm
