#include "dfl/baselines.hpp"

#include <stdexcept>

#include "dfl/beamforming.hpp"
#include "dfl/elm.hpp"

namespace dfl {

ExactLocalSolver::ExactLocalSolver(const LocalData& data, double lambda_e, double rho)
    : lambda_e_(lambda_e), rho_(rho) {
  Eigen::MatrixXd gram = data.w.transpose() * data.w;
  gram.diagonal().array() += lambda_e * (1.0 + rho);
  llt_.compute(gram);
  wt_t_ = data.w.transpose() * data.t;
}

Eigen::MatrixXd ExactLocalSolver::solve(const Eigen::MatrixXd& token_z,
                                        const Eigen::MatrixXd& y) const {
  return llt_.solve(wt_t_ + lambda_e_ * (rho_ * token_z + y));
}

void exact_walk_service(AgentState& agent, Token& token, const ExactLocalSolver& solver,
                        const HyperParams& hp) {
  const Eigen::MatrixXd x_new = solver.solve(token.z, agent.y);
  const Eigen::MatrixXd y_new = dual_update(agent, token.z, x_new, hp);
  token.z = token_update(token.z, agent.prev_contribution, x_new, y_new, hp);
  agent.prev_contribution = x_new - y_new / hp.rho;
  agent.x = x_new;
  agent.y = y_new;
  agent.k += 1;
}

Eigen::MatrixXd metropolis_weights(const DynamicGraph& g, double t) {
  const int n = g.n_agents();
  std::vector<std::vector<int>> nbrs(n);
  for (int i = 0; i < n; ++i) nbrs[i] = g.neighbors(i, t);

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j : nbrs[i]) {
      const double wij =
          1.0 / (1.0 + std::max<double>(nbrs[i].size(), nbrs[j].size()));
      w(i, j) = wij;
      off += wij;
    }
    w(i, i) = 1.0 - off;
  }
  return w;
}

void dgd_round(std::vector<Eigen::MatrixXd>& states, const DynamicGraph& g, double t, double alpha,
               const std::vector<LocalData>& data, double lambda_e) {
  const int n = static_cast<int>(states.size());
  if (static_cast<int>(data.size()) != n) throw std::invalid_argument("states/data size mismatch");
  const Eigen::MatrixXd w = metropolis_weights(g, t);

  std::vector<Eigen::MatrixXd> next(n);
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd mixed = w(i, i) * states[i];
    for (int j = 0; j < n; ++j)
      if (j != i && w(i, j) != 0.0) mixed.noalias() += w(i, j) * states[j];
    next[i] = mixed - alpha * gradient(states[i], data[i].w, data[i].t, lambda_e);
  }
  states = std::move(next);
}

DadmmRound::DadmmRound(const std::vector<LocalData>& data, double lambda_e, double rho)
    : data_(data), lambda_e_(lambda_e), rho_(rho) {
  llt_by_degree_.resize(data.size());
  wt_t_.reserve(data.size());
  for (const LocalData& d : data) wt_t_.push_back(d.w.transpose() * d.t);
}

void DadmmRound::step(DadmmState& s, const DynamicGraph& g, double t) {
  const int n = static_cast<int>(s.x.size());
  std::vector<std::vector<int>> nbrs(n);
  for (int i = 0; i < n; ++i) nbrs[i] = g.neighbors(i, t);

  std::vector<Eigen::MatrixXd> x_new(n);
  for (int i = 0; i < n; ++i) {
    const int deg = static_cast<int>(nbrs[i].size());
    auto it = llt_by_degree_[i].find(deg);
    if (it == llt_by_degree_[i].end()) {
      Eigen::MatrixXd gram = data_[i].w.transpose() * data_[i].w;
      gram.diagonal().array() += lambda_e_ * (1.0 + 2.0 * rho_ * deg);
      it = llt_by_degree_[i].emplace(deg, Eigen::LLT<Eigen::MatrixXd>(gram)).first;
    }
    Eigen::MatrixXd neighbor_sum = Eigen::MatrixXd::Zero(s.x[i].rows(), s.x[i].cols());
    for (int j : nbrs[i]) neighbor_sum += s.x[i] + s.x[j];
    x_new[i] = it->second.solve(wt_t_[i] + lambda_e_ * (rho_ * neighbor_sum - s.p[i]));
  }
  for (int i = 0; i < n; ++i) {
    for (int j : nbrs[i]) s.p[i] += rho_ * (x_new[i] - x_new[j]);
  }
  s.x = std::move(x_new);
}

std::pair<double, double> fd_reference(const Eigen::MatrixXcd& h_clean,
                                       const Eigen::MatrixXcd& h_noisy, int n_s, double rho_r) {
  if (h_clean.rows() != h_noisy.rows() || h_clean.cols() != h_noisy.cols())
    throw std::invalid_argument("clean/noisy channel shape mismatch");
  const double perfect = spectral_efficiency(h_clean, optimal_fd_beamformer(h_clean, n_s), rho_r);
  const double imperfect =
      spectral_efficiency(h_clean, optimal_fd_beamformer(h_noisy, n_s), rho_r);
  return {perfect, imperfect};
}

}  // namespace dfl
