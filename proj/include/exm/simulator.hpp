#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "exm/core.hpp"
#include "exm/relations.hpp"

namespace exm {

/// Deterministic desk-scale stand-in for the robot grasping a drawer
/// handle. Parameterizations are end-effector offsets from the center of
/// the handle's bounding box: x points from the handle toward the robot
/// (approach direction), +y is robot-left, +z is up.
struct HandleScene {
    std::array<double, 3> bbox_half_extents = {0.01, 0.09, 0.02};
    // off-center slack on y/z within which the fingers still close on the
    // handle; x has no tolerance of its own, the reach band governs it
    double grasp_tolerance_y = 0.04;
    double grasp_tolerance_z = 0.015;
    // grasping works with the end effector between min_front and max_front
    // in front of the bbox face; closer than min_front collides
    double reach_min_front = 0.0;
    double reach_max_front = 0.10;
    double drawer_face_margin = 0.0;  // folded into reach_min_front
    // optional perception/actuation noise used by randomCampaign only;
    // simulateGrasp itself stays deterministic
    std::array<double, 3> pose_noise_sigma = {0.0, 0.0, 0.0};
};

void validateScene(const HandleScene& scene);

enum class GraspCause {
    TooFar,
    CollisionWithDrawer,
    TooLeft,
    TooRight,
    TooHigh,
    TooLow,
};

const std::string& causeName(GraspCause c);
GraspCause causeFromName(const std::string& name);

struct GraspOutcome {
    bool success = false;
    std::set<GraspCause> causes;  // empty iff success
};

/// Pure threshold test of a grasp offset against the scene geometry.
GraspOutcome simulateGrasp(const HandleScene& scene, const ActionParameterization& x);

/// Maps ground-truth failure causes onto the vocabulary relations used as
/// diagnosis ground truth.
std::set<std::string> causesToRelations(const std::set<GraspCause>& causes);
std::set<std::string> causesToRelations(const std::vector<std::string>& cause_names);

// Campaign front band: offsets beyond the bbox face sampled for the
// approach axis, following the data-collection protocol.
inline constexpr double kCampaignFrontMin = 0.05;
inline constexpr double kCampaignFrontMax = 0.15;

/// Random execution campaign: y,z uniform within the bbox extents, x
/// uniform in [face + 0.05, face + 0.15]. Each experience is labeled by
/// simulateGrasp; when scene.pose_noise_sigma is nonzero the outcome is
/// evaluated at x + noise (commanded offset recorded, perturbed offset
/// executed), which is how perception error enters the dataset.
std::vector<Experience> randomCampaign(const HandleScene& scene, int count, RngHandle& rng);

/// The 3-parameter offset space the scene lives in.
ParameterSpace graspSpace(double bound = 0.2);

/// Scene-aligned default vocabulary: per axis one exhaustive disjoint
/// group of three relations. The y/z thresholds sit at the grasp
/// tolerances, the x group at the reach band, so that ground-truth causes
/// and extracted relations agree point for point.
RelationVocabulary sceneVocabulary(const HandleScene& scene);

/// Per-axis closed success intervals [lo, hi]; the success region is
/// exactly their product.
std::array<std::pair<double, double>, 3> successBox(const HandleScene& scene);

/// Asserts the configuration contract between a vocabulary and the scene:
/// thresholds must match sceneVocabulary(scene). Throws on mismatch.
void requireSceneAlignedVocabulary(const RelationVocabulary& vocab, const HandleScene& scene);

}  // namespace exm
