#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "dfl/rng.hpp"

namespace dfl {

enum class TopologyKind { static_complete, static_random_geometric, mobility_waypoint };

std::string to_string(TopologyKind k);
TopologyKind topology_kind_from_string(const std::string& s);

struct TopologyParams {
  TopologyKind kind = TopologyKind::static_complete;
  int n_agents = 0;
  double area_side = 100.0;    // square world, geometric kinds
  double comm_radius = 60.0;   // link iff distance <= comm_radius
  double speed = 5.0;          // waypoint travel speed
  double dwell_time = 1.0;     // pause at each waypoint
  std::uint64_t seed = 0;
};

// Transition law of a token sitting at `source` at time `time`: uniform over
// the closed neighborhood {source} u N(source, time). Never empty, so an
// isolated agent self-transitions with probability 1.
struct TransitionDistribution {
  int source = 0;
  double time = 0.0;
  std::vector<int> support;
  std::vector<double> probs;
};

// Time-varying undirected connectivity graph of the agent swarm. Edge sets
// are queried lazily at arbitrary times; nothing is time-stepped. Waypoint
// trajectories are piecewise linear, extended on demand under a lock, so
// concurrent readers are safe.
class DynamicGraph {
 public:
  explicit DynamicGraph(const TopologyParams& params);

  int n_agents() const { return params_.n_agents; }
  TopologyKind kind() const { return params_.kind; }

  // All j != i with (i,j) in E(t); symmetric and self-edge free.
  std::vector<int> neighbors(int i, double t) const;

  TransitionDistribution transition(int i, double t) const;

  // Position in the square at time t (geometric kinds only).
  Eigen::Vector2d position(int i, double t) const;

  // Edge list with i < j.
  std::vector<std::pair<int, int>> edges(double t) const;

  bool is_connected(double t) const;

 private:
  struct Leg {
    double t0, t1;
    Eigen::Vector2d p0, p1;  // p0 == p1 encodes a dwell
  };

  void check_agent(int i, double t) const;
  void ensure_legs(int i, double t) const;

  TopologyParams params_;
  std::vector<Eigen::Vector2d> static_positions_;
  mutable std::mutex legs_mutex_;
  mutable std::vector<std::vector<Leg>> legs_;
  mutable std::vector<RandomStream> leg_rng_;
};

int sample_next(const TransitionDistribution& d, RandomStream& rng);

}  // namespace dfl
