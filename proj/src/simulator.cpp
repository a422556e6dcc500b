#include "exm/simulator.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace exm {

void validateScene(const HandleScene& scene) {
    for (double h : scene.bbox_half_extents) {
        if (!(h > 0.0)) throw std::invalid_argument("scene: bbox half extents must be positive");
    }
    if (!(scene.grasp_tolerance_y > 0.0) || !(scene.grasp_tolerance_z > 0.0)) {
        throw std::invalid_argument("scene: grasp tolerances must be positive");
    }
    if (scene.reach_min_front < 0.0 || !(scene.reach_min_front < scene.reach_max_front)) {
        throw std::invalid_argument("scene: need 0 <= min_front < max_front");
    }
    if (scene.drawer_face_margin < 0.0) {
        throw std::invalid_argument("scene: drawer_face_margin must be >= 0");
    }
    for (double s : scene.pose_noise_sigma) {
        if (s < 0.0) throw std::invalid_argument("scene: pose noise sigma must be >= 0");
    }
}

namespace {

const std::map<GraspCause, std::string> kCauseNames = {
    {GraspCause::TooFar, "too_far"},
    {GraspCause::CollisionWithDrawer, "collision_with_drawer"},
    {GraspCause::TooLeft, "too_left"},
    {GraspCause::TooRight, "too_right"},
    {GraspCause::TooHigh, "too_high"},
    {GraspCause::TooLow, "too_low"},
};

const std::map<GraspCause, std::string> kCauseRelations = {
    {GraspCause::TooFar, "far_in_front_of_x"},
    {GraspCause::CollisionWithDrawer, "too_close_x"},
    {GraspCause::TooLeft, "leftOf_y"},
    {GraspCause::TooRight, "rightOf_y"},
    {GraspCause::TooHigh, "above_z"},
    {GraspCause::TooLow, "below_z"},
};

double frontFace(const HandleScene& scene) { return scene.bbox_half_extents[0]; }

}  // namespace

const std::string& causeName(GraspCause c) { return kCauseNames.at(c); }

GraspCause causeFromName(const std::string& name) {
    for (const auto& [c, n] : kCauseNames) {
        if (n == name) return c;
    }
    throw std::invalid_argument("unknown grasp cause: " + name);
}

GraspOutcome simulateGrasp(const HandleScene& scene, const ActionParameterization& x) {
    if (x.size() != 3) {
        throw std::invalid_argument("simulateGrasp: expected a 3-parameter offset");
    }
    GraspOutcome out;
    const double face = frontFace(scene);
    const double lo_x = face + scene.reach_min_front + scene.drawer_face_margin;
    const double hi_x = face + scene.reach_max_front;
    if (x[0] > hi_x) out.causes.insert(GraspCause::TooFar);
    if (x[0] < lo_x) out.causes.insert(GraspCause::CollisionWithDrawer);
    if (x[1] > scene.grasp_tolerance_y) out.causes.insert(GraspCause::TooLeft);
    if (x[1] < -scene.grasp_tolerance_y) out.causes.insert(GraspCause::TooRight);
    if (x[2] > scene.grasp_tolerance_z) out.causes.insert(GraspCause::TooHigh);
    if (x[2] < -scene.grasp_tolerance_z) out.causes.insert(GraspCause::TooLow);
    out.success = out.causes.empty();
    return out;
}

std::set<std::string> causesToRelations(const std::set<GraspCause>& causes) {
    std::set<std::string> out;
    for (GraspCause c : causes) out.insert(kCauseRelations.at(c));
    return out;
}

std::set<std::string> causesToRelations(const std::vector<std::string>& cause_names) {
    std::set<GraspCause> causes;
    for (const auto& n : cause_names) causes.insert(causeFromName(n));
    return causesToRelations(causes);
}

std::vector<Experience> randomCampaign(const HandleScene& scene, int count, RngHandle& rng) {
    validateScene(scene);
    if (count < 1) throw std::invalid_argument("randomCampaign: count must be >= 1");
    const double face = frontFace(scene);
    const bool noisy = scene.pose_noise_sigma[0] > 0.0 || scene.pose_noise_sigma[1] > 0.0 ||
                       scene.pose_noise_sigma[2] > 0.0;

    std::vector<Experience> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        ActionParameterization x = {
            rng.uniform(face + kCampaignFrontMin, face + kCampaignFrontMax),
            rng.uniform(-scene.bbox_half_extents[1], scene.bbox_half_extents[1]),
            rng.uniform(-scene.bbox_half_extents[2], scene.bbox_half_extents[2]),
        };
        ActionParameterization executed = x;
        if (noisy) {
            for (int a = 0; a < 3; ++a) {
                executed[static_cast<std::size_t>(a)] +=
                    rng.normal(0.0, scene.pose_noise_sigma[static_cast<std::size_t>(a)]);
            }
        }
        const GraspOutcome outcome = simulateGrasp(scene, executed);
        Experience e;
        e.params = std::move(x);
        e.label = outcome.success ? 1.0 : 0.0;
        e.provenance = Provenance::Observed;
        std::vector<std::string> labels;
        for (GraspCause c : outcome.causes) labels.push_back(causeName(c));
        e.cause_labels = std::move(labels);
        out.push_back(std::move(e));
    }
    return out;
}

ParameterSpace graspSpace(double bound) {
    return makeSpace({{"x", -bound, bound}, {"y", -bound, bound}, {"z", -bound, bound}});
}

RelationVocabulary sceneVocabulary(const HandleScene& scene) {
    validateScene(scene);
    const double face = frontFace(scene);
    const double lo_x = face + scene.reach_min_front + scene.drawer_face_margin;
    const double hi_x = face + scene.reach_max_front;
    const double ty = scene.grasp_tolerance_y;
    const double tz = scene.grasp_tolerance_z;
    return RelationVocabulary({
        {"too_close_x", 0, 0, PredicateKind::BelowThreshold, lo_x, 0.0, "reach_x"},
        {"in_reach_x", 0, 0, PredicateKind::InsideInterval, lo_x, hi_x, "reach_x"},
        {"far_in_front_of_x", 0, 0, PredicateKind::AboveThreshold, hi_x, 0.0, "reach_x"},
        {"rightOf_y", 1, 1, PredicateKind::BelowThreshold, -ty, 0.0, "lateral_y"},
        {"aligned_y", 1, 1, PredicateKind::InsideInterval, -ty, ty, "lateral_y"},
        {"leftOf_y", 1, 1, PredicateKind::AboveThreshold, ty, 0.0, "lateral_y"},
        {"below_z", 2, 2, PredicateKind::BelowThreshold, -tz, 0.0, "vertical_z"},
        {"aligned_z", 2, 2, PredicateKind::InsideInterval, -tz, tz, "vertical_z"},
        {"above_z", 2, 2, PredicateKind::AboveThreshold, tz, 0.0, "vertical_z"},
    });
}

std::array<std::pair<double, double>, 3> successBox(const HandleScene& scene) {
    const double face = frontFace(scene);
    return {{
        {face + scene.reach_min_front + scene.drawer_face_margin, face + scene.reach_max_front},
        {-scene.grasp_tolerance_y, scene.grasp_tolerance_y},
        {-scene.grasp_tolerance_z, scene.grasp_tolerance_z},
    }};
}

void requireSceneAlignedVocabulary(const RelationVocabulary& vocab, const HandleScene& scene) {
    const RelationVocabulary ref = sceneVocabulary(scene);
    if (vocab.size() != ref.size()) {
        throw std::runtime_error("vocabulary/scene contract: relation count differs from the "
                                 "scene-aligned vocabulary");
    }
    for (const auto& want : ref.relations()) {
        const int i = vocab.indexOf(want.name);
        if (i < 0) {
            throw std::runtime_error("vocabulary/scene contract: missing relation " + want.name);
        }
        const RelationDef& got = vocab.rel(static_cast<std::size_t>(i));
        const bool same = got.parameter == want.parameter && got.axis == want.axis &&
                          got.kind == want.kind && std::abs(got.lo - want.lo) < 1e-12 &&
                          (got.kind != PredicateKind::InsideInterval ||
                           std::abs(got.hi - want.hi) < 1e-12) &&
                          got.group == want.group;
        if (!same) {
            throw std::runtime_error("vocabulary/scene contract: relation " + want.name +
                                     " does not match the scene thresholds");
        }
    }
}

}  // namespace exm
