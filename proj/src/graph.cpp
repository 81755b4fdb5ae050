#include "dfl/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace dfl {

std::string to_string(TopologyKind k) {
  switch (k) {
    case TopologyKind::static_complete: return "static-complete";
    case TopologyKind::static_random_geometric: return "static-random-geometric";
    case TopologyKind::mobility_waypoint: return "mobility-waypoint";
  }
  return "?";
}

TopologyKind topology_kind_from_string(const std::string& s) {
  if (s == "static-complete") return TopologyKind::static_complete;
  if (s == "static-random-geometric") return TopologyKind::static_random_geometric;
  if (s == "mobility-waypoint") return TopologyKind::mobility_waypoint;
  throw std::invalid_argument("unknown topology_kind '" + s +
                              "' (expected static-complete | static-random-geometric | "
                              "mobility-waypoint)");
}

DynamicGraph::DynamicGraph(const TopologyParams& params) : params_(params) {
  if (params_.n_agents < 1) throw std::invalid_argument("n_agents must be >= 1");
  if (params_.kind == TopologyKind::static_random_geometric) {
    RandomStream rng(derive_seed(params_.seed, seed_role::topology));
    static_positions_.reserve(params_.n_agents);
    for (int i = 0; i < params_.n_agents; ++i) {
      const double x = rng.uniform(0.0, params_.area_side);
      const double y = rng.uniform(0.0, params_.area_side);
      static_positions_.emplace_back(x, y);
    }
  } else if (params_.kind == TopologyKind::mobility_waypoint) {
    if (params_.speed <= 0.0) throw std::invalid_argument("speed must be > 0");
    legs_.resize(params_.n_agents);
    leg_rng_.reserve(params_.n_agents);
    for (int i = 0; i < params_.n_agents; ++i) {
      leg_rng_.emplace_back(derive_seed(params_.seed, seed_role::topology, i));
      RandomStream& rng = leg_rng_.back();
      const Eigen::Vector2d start(rng.uniform(0.0, params_.area_side),
                                  rng.uniform(0.0, params_.area_side));
      legs_[i].push_back(Leg{0.0, 0.0, start, start});
    }
  }
}

void DynamicGraph::check_agent(int i, double t) const {
  if (i < 0 || i >= params_.n_agents)
    throw std::invalid_argument("agent id " + std::to_string(i) + " out of range [0, " +
                                std::to_string(params_.n_agents) + ")");
  if (t < 0.0) throw std::invalid_argument("time must be >= 0");
}

void DynamicGraph::ensure_legs(int i, double t) const {
  auto& legs = legs_[i];
  auto& rng = leg_rng_[i];
  while (legs.back().t1 <= t) {
    const Leg& last = legs.back();
    const Eigen::Vector2d waypoint(rng.uniform(0.0, params_.area_side),
                                   rng.uniform(0.0, params_.area_side));
    const double travel = (waypoint - last.p1).norm() / params_.speed;
    legs.push_back(Leg{last.t1, last.t1 + travel, last.p1, waypoint});
    if (params_.dwell_time > 0.0)
      legs.push_back(Leg{legs.back().t1, legs.back().t1 + params_.dwell_time, waypoint, waypoint});
  }
}

Eigen::Vector2d DynamicGraph::position(int i, double t) const {
  check_agent(i, t);
  if (params_.kind == TopologyKind::static_random_geometric) return static_positions_[i];
  if (params_.kind != TopologyKind::mobility_waypoint)
    throw std::logic_error("position() undefined for static-complete topology");

  std::lock_guard<std::mutex> lock(legs_mutex_);
  ensure_legs(i, t);
  const auto& legs = legs_[i];
  auto it = std::upper_bound(legs.begin(), legs.end(), t,
                             [](double v, const Leg& l) { return v < l.t1; });
  if (it == legs.end()) it = std::prev(legs.end());
  const Leg& leg = *it;
  if (leg.t1 <= leg.t0) return leg.p1;
  const double a = std::clamp((t - leg.t0) / (leg.t1 - leg.t0), 0.0, 1.0);
  return leg.p0 + a * (leg.p1 - leg.p0);
}

std::vector<int> DynamicGraph::neighbors(int i, double t) const {
  check_agent(i, t);
  std::vector<int> out;
  if (params_.kind == TopologyKind::static_complete) {
    out.reserve(params_.n_agents - 1);
    for (int j = 0; j < params_.n_agents; ++j)
      if (j != i) out.push_back(j);
    return out;
  }
  const Eigen::Vector2d pi = position(i, t);
  for (int j = 0; j < params_.n_agents; ++j) {
    if (j == i) continue;
    if ((position(j, t) - pi).norm() <= params_.comm_radius) out.push_back(j);
  }
  return out;
}

TransitionDistribution DynamicGraph::transition(int i, double t) const {
  TransitionDistribution d;
  d.source = i;
  d.time = t;
  d.support = neighbors(i, t);
  d.support.insert(d.support.begin(), i);  // self-loop always in support
  d.probs.assign(d.support.size(), 1.0 / static_cast<double>(d.support.size()));
  return d;
}

std::vector<std::pair<int, int>> DynamicGraph::edges(double t) const {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < params_.n_agents; ++i)
    for (int j : neighbors(i, t))
      if (j > i) es.emplace_back(i, j);
  return es;
}

bool DynamicGraph::is_connected(double t) const {
  const int n = params_.n_agents;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int j : neighbors(i, t)) {
      if (!seen[j]) {
        seen[j] = 1;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == n;
}

int sample_next(const TransitionDistribution& d, RandomStream& rng) {
  if (d.support.empty()) throw std::invalid_argument("empty transition support");
  const double u = rng.uniform();
  double cum = 0.0;
  for (std::size_t k = 0; k < d.support.size(); ++k) {
    cum += d.probs[k];
    if (u < cum) return d.support[k];
  }
  return d.support.back();
}

}  // namespace dfl
