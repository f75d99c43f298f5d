#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "numkit/rng.hpp"
#include "numkit/tensor.hpp"

namespace manipenv {

enum class Task { ReachGoal, PushBlock, PickPlace };

std::string to_string(Task t);
Task task_from_string(const std::string& s);
int action_dim(Task t);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

double dist(const Vec2& a, const Vec2& b);

/// Kinematic constants and success thresholds for the 2-D arena [-1,1]^2.
namespace limits {
inline constexpr double kMaxStep = 0.08;        // effector translation per step
inline constexpr double kApertureRate = 0.25;   // aperture change per step at full command
inline constexpr double kContactDist = 0.12;    // effector/block contact distance
inline constexpr double kGraspDist = 0.05;      // max distance for a grasp
inline constexpr double kGraspAperture = 0.3;   // aperture below which the gripper holds
inline constexpr double kReachSuccess = 0.05;
inline constexpr double kBlockSuccess = 0.08;
inline constexpr int kEpisodeCap = 200;
inline constexpr int kExpertCap = 100;
inline constexpr int kObsSteps = 2;             // observation history depth
inline constexpr int kPoseDim = 3;              // x, y, aperture
}  // namespace limits

struct WorldState {
    Task task = Task::ReachGoal;
    Vec2 effector;
    double aperture = 1.0;  // 0 closed .. 1 open
    Vec2 block;             // push-block / pick-place only
    Vec2 goal;
    int step_count = 0;
    bool grasped = false;        // gripper currently holding the block
    bool grasp_happened = false; // latched
    bool success = false;        // latched
};

/// Success predicate on a state (also applied and latched inside step()).
bool task_success(const WorldState& s);

/// Point cloud + pose observation with a 2-deep history; the first step
/// duplicates the initial snapshot. points stacks the history clouds oldest
/// first as (kObsSteps * P) x 2 rows; poses is kObsSteps x kPoseDim.
struct Observation {
    numkit::Tensor points;
    numkit::Tensor poses;
};

/// Deterministic task environment. Same seed and action sequence reproduce
/// the trajectory bitwise. The point cloud is sampled from entity
/// silhouettes and FPS-downsampled to a fixed budget per snapshot.
class Env {
public:
    Env(Task task, uint64_t seed, int points_per_cloud = 64);

    const WorldState& state() const { return state_; }
    int points_per_cloud() const { return points_; }

    /// Applies one action (entries clamped to [-1,1]): delta position scaled
    /// by kMaxStep, plus an aperture-rate command for pick-place. The block
    /// moves when pushed (contact overlap with motion toward it) or carried
    /// (grasped).
    void step(const numkit::Tensor& action);

    Observation observe() const;

private:
    numkit::Tensor current_cloud() const;
    void snapshot();

    WorldState state_;
    int points_;
    std::vector<numkit::Tensor> cloud_hist_;  // most recent last, size kObsSteps
    std::vector<numkit::Tensor> pose_hist_;
};

}  // namespace manipenv
