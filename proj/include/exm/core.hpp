#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace exm {

// All lengths are SI meters throughout; config files are expected to be
// in meters as well.

struct ParamDef {
    std::string name;
    double lower = 0.0;
    double upper = 0.0;
};

/// An ordered, validated set of scalar action parameters with box bounds.
class ParameterSpace {
public:
    ParameterSpace() = default;
    explicit ParameterSpace(std::vector<ParamDef> params);

    std::size_t size() const { return params_.size(); }
    const ParamDef& param(std::size_t i) const { return params_.at(i); }
    const std::vector<ParamDef>& params() const { return params_; }
    int indexOf(const std::string& name) const;  // -1 if absent

private:
    std::vector<ParamDef> params_;
};

// A concrete assignment of values to a ParameterSpace, index-aligned.
using ActionParameterization = std::vector<double>;

enum class Provenance {
    Observed,
    SyntheticCorrected,
};

struct Experience {
    ActionParameterization params;
    double label = 0.0;  // success likelihood in [0,1]; observed data uses {0,1}
    Provenance provenance = Provenance::Observed;
    // Ground-truth failure cause identifiers, when the data source provides
    // them (the simulator does). Empty optional = unannotated.
    std::optional<std::vector<std::string>> cause_labels;
};

/// Seeded random stream with reproducible, splittable sub-streams.
///
/// The engine is a stock mt19937_64, but the uniform/normal/gamma
/// transforms are implemented here so that the sample sequence depends
/// only on the seed and the call sequence, not on the standard library's
/// (unspecified) distribution algorithms. split(k) derives a statistically
/// independent stream for sub-task k; splitting the same handle with the
/// same k always yields the same stream.
class RngHandle {
public:
    explicit RngHandle(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }
    RngHandle split(std::uint64_t stream) const;

    double uniform();                        // [0, 1)
    double uniform(double lo, double hi);    // [lo, hi)
    double normal(double mean, double stddev);
    // Marsaglia-Tsang sampler; requires shape >= 1.
    double gamma(double shape, double scale);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

ParameterSpace makeSpace(const std::vector<ParamDef>& definitions);

// Coordinate-wise clamp into the space's bounds. Idempotent.
ActionParameterization clampToSpace(const ParameterSpace& space,
                                    const ActionParameterization& x);

void requireDimension(const ParameterSpace& space, const ActionParameterization& x,
                      const char* where);

}  // namespace exm
