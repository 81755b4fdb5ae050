#include "dfl/admm.hpp"

#include <stdexcept>

#include "dfl/elm.hpp"

namespace dfl {

void HyperParams::validate() const {
  if (rho <= 0.0) throw std::invalid_argument("rho must be > 0");
  if (tau <= 0.0) throw std::invalid_argument("tau must be > 0");
  if (gamma <= 0.0 || gamma >= 2.0) throw std::invalid_argument("gamma must be in (0, 2)");
  if (eta < 0.0 || eta >= 1.0) throw std::invalid_argument("eta must be in [0, 1)");
  if (lambda_e <= 0.0) throw std::invalid_argument("lambda_e must be > 0");
  if (m_walks < 1) throw std::invalid_argument("m_walks must be >= 1");
  if (n_agents < 1) throw std::invalid_argument("n_agents must be >= 1");
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
}

AgentState AgentState::zeros(int q, int o) {
  AgentState s;
  s.x = Eigen::MatrixXd::Zero(q, o);
  s.y = Eigen::MatrixXd::Zero(q, o);
  s.mu = Eigen::MatrixXd::Zero(q, o);
  s.prev_contribution = Eigen::MatrixXd::Zero(q, o);
  return s;
}

Token Token::zeros(int q, int o, int walk_id, int location) {
  Token t;
  t.z = Eigen::MatrixXd::Zero(q, o);
  t.walk_id = walk_id;
  t.location = location;
  return t;
}

Eigen::MatrixXd moment_update(const Eigen::MatrixXd& mu, const Eigen::MatrixXd& g, double eta) {
  if (mu.rows() != g.rows() || mu.cols() != g.cols())
    throw std::invalid_argument("moment/gradient shape mismatch");
  return eta * mu + (1.0 - eta) * g;
}

Eigen::MatrixXd primal_update(const AgentState& state, const Eigen::MatrixXd& token_z,
                              const HyperParams& hp) {
  return (hp.rho * token_z + state.y + hp.tau * state.x - state.mu) / (hp.rho + hp.tau);
}

Eigen::MatrixXd dual_update(const AgentState& state, const Eigen::MatrixXd& token_z,
                            const Eigen::MatrixXd& x_new, const HyperParams& hp) {
  return state.y + hp.gamma * hp.rho * (token_z - x_new);
}

Eigen::MatrixXd token_update(const Eigen::MatrixXd& token_z,
                             const Eigen::MatrixXd& prev_contribution,
                             const Eigen::MatrixXd& x_new, const Eigen::MatrixXd& y_new,
                             const HyperParams& hp) {
  const double scale = static_cast<double>(hp.m_walks) / static_cast<double>(hp.n_agents);
  return token_z + scale * ((x_new - y_new / hp.rho) - prev_contribution);
}

void service_token(AgentState& agent, Token& token, const LocalData& data, const HyperParams& hp,
                   RandomStream& batch_rng) {
  const std::vector<int> batch = draw_batch(data.rows(), hp.batch_size, batch_rng);
  const Eigen::MatrixXd g = stochastic_gradient(agent.x, data.w, data.t, hp.lambda_e, batch);
  agent.mu = moment_update(agent.mu, g, hp.eta);
  const Eigen::MatrixXd x_new = primal_update(agent, token.z, hp);
  const Eigen::MatrixXd y_new = dual_update(agent, token.z, x_new, hp);
  token.z = token_update(token.z, agent.prev_contribution, x_new, y_new, hp);
  agent.prev_contribution = x_new - y_new / hp.rho;
  agent.x = x_new;
  agent.y = y_new;
  agent.k += 1;
}

bool hop_token(Token& token, const DynamicGraph& g, double t, RandomStream& rng) {
  const int next = sample_next(g.transition(token.location, t), rng);
  const bool moved = next != token.location;
  token.location = next;
  token.s += 1;
  return moved;
}

Eigen::MatrixXd consensus_model(const std::vector<Token>& tokens) {
  if (tokens.empty()) throw std::invalid_argument("need at least one token");
  Eigen::MatrixXd sum = tokens.front().z;
  for (std::size_t m = 1; m < tokens.size(); ++m) sum += tokens[m].z;
  return sum / static_cast<double>(tokens.size());
}

double token_sum_identity_gap(const std::vector<Token>& tokens,
                              const std::vector<AgentState>& agents, const HyperParams& hp) {
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(tokens.front().z.rows(), tokens.front().z.cols());
  for (const AgentState& a : agents) rhs += a.x - a.y / hp.rho;
  rhs /= static_cast<double>(agents.size());
  return (consensus_model(tokens) - rhs).cwiseAbs().maxCoeff();
}

}  // namespace dfl
