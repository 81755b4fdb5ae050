#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "dfl/graph.hpp"
#include "dfl/rng.hpp"

namespace dfl {

struct HyperParams {
  double rho = 2.0;      // augmented-Lagrangian constant, > 0
  double tau = 10.0;     // primal proximal step size, > 0
  double gamma = 1.0;    // dual step size, in (0, 2)
  double eta = 0.95;     // moment decay, in [0, 1)
  double lambda_e = 1e-2;
  int m_walks = 2;
  int n_agents = 10;
  int batch_size = 8;

  void validate() const;
};

// Model/dual/moment state of one agent plus the cached consensus contribution
// (x - y/rho) from before the most recent update, which the incremental token
// update needs.
struct AgentState {
  Eigen::MatrixXd x, y, mu, prev_contribution;
  std::uint64_t k = 0;  // local service clock

  static AgentState zeros(int q, int o);
};

// A walk's global-model estimate. z starts at zero; s counts hops.
struct Token {
  Eigen::MatrixXd z;
  int walk_id = 1;       // 1..M
  std::uint64_t s = 0;   // walk clock
  int location = 0;      // current agent

  static Token zeros(int q, int o, int walk_id, int location);
};

// One agent's local problem: frozen hidden features and targets.
struct LocalData {
  Eigen::MatrixXd w;  // D x Q
  Eigen::MatrixXd t;  // D x O
  int rows() const { return static_cast<int>(w.rows()); }
};

// mu+ = eta*mu + (1-eta)*g. Deliberately biased: no correction term.
Eigen::MatrixXd moment_update(const Eigen::MatrixXd& mu, const Eigen::MatrixXd& g, double eta);

// Closed-form argmin of the linearized-plus-proximal surrogate
//   mu.(x - x_k) + (rho/2)||z - x + y/rho||^2 + (tau/2)||x - x_k||^2,
// namely x+ = (rho*z + y + tau*x - mu)/(rho + tau). Assumes mu was refreshed
// for this service.
Eigen::MatrixXd primal_update(const AgentState& state, const Eigen::MatrixXd& token_z,
                              const HyperParams& hp);

// y+ = y + gamma*rho*(z - x_new), using the received token.
Eigen::MatrixXd dual_update(const AgentState& state, const Eigen::MatrixXd& token_z,
                            const Eigen::MatrixXd& x_new, const HyperParams& hp);

// z+ = z + (M/N)[(x+ - y+/rho) - prev_contribution]. Caller refreshes the cache.
Eigen::MatrixXd token_update(const Eigen::MatrixXd& token_z,
                             const Eigen::MatrixXd& prev_contribution,
                             const Eigen::MatrixXd& x_new, const Eigen::MatrixXd& y_new,
                             const HyperParams& hp);

// One full service: minibatch draw, stochastic gradient at the current x,
// moment refresh, primal, dual, incremental token update, clock bump. Atomic
// with respect to the agent's state.
void service_token(AgentState& agent, Token& token, const LocalData& data, const HyperParams& hp,
                   RandomStream& batch_rng);

// Re-locate the token along the transition law at time t; s += 1.
// Returns true when the token actually moved (a transmission happened).
bool hop_token(Token& token, const DynamicGraph& g, double t, RandomStream& rng);

// (1/M) sum of token payloads: the global solution estimate.
Eigen::MatrixXd consensus_model(const std::vector<Token>& tokens);

// max-norm gap of the token-sum identity
//   (1/M) sum_m z_m == (1/N) sum_i (x_i - y_i/rho),
// which exact bookkeeping keeps at zero up to roundoff.
double token_sum_identity_gap(const std::vector<Token>& tokens,
                              const std::vector<AgentState>& agents, const HyperParams& hp);

}  // namespace dfl
