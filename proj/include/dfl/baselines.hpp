#pragma once

#include <Eigen/Dense>
#include <map>
#include <utility>
#include <vector>

#include "dfl/admm.hpp"
#include "dfl/graph.hpp"

namespace dfl {

// Exact minimizer of the true augmented local objective
//   f_i(x) + (rho/2)||z - x + y/rho||^2,
// i.e. (W^T W + lambda*(1+rho) I) x = W^T T + lambda*(rho z + y).
// The factorization is constant per agent and cached.
class ExactLocalSolver {
 public:
  ExactLocalSolver(const LocalData& data, double lambda_e, double rho);

  Eigen::MatrixXd solve(const Eigen::MatrixXd& token_z, const Eigen::MatrixXd& y) const;

 private:
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::MatrixXd wt_t_;
  double lambda_e_, rho_;
};

// Single- or parallel-walk ADMM service with an exact x-step, no moment and
// no stochastic gradient. With m_walks = 1 this is the single-walk method;
// m_walks >= 1 gives the parallel variant.
void exact_walk_service(AgentState& agent, Token& token, const ExactLocalSolver& solver,
                        const HyperParams& hp);

// Symmetric doubly-stochastic Metropolis weights on E(t):
// w_ij = 1/(1+max(deg_i,deg_j)) for edges, w_ii = 1 - sum_j w_ij.
Eigen::MatrixXd metropolis_weights(const DynamicGraph& g, double t);

// One synchronous decentralized-gradient round on the graph snapshot at t:
// x_i+ = sum_j w_ij x_j - alpha * grad f_i(x_i). Every edge carries a model
// both ways.
void dgd_round(std::vector<Eigen::MatrixXd>& states, const DynamicGraph& g, double t, double alpha,
               const std::vector<LocalData>& data, double lambda_e);

struct DadmmState {
  std::vector<Eigen::MatrixXd> x;
  std::vector<Eigen::MatrixXd> p;  // accumulated duals, sum over agents stays 0
};

// One synchronous edge-consensus ADMM round on the snapshot at t:
//   x_i+ = argmin f_i(x) + <p_i, x> + rho * sum_{j in N_i} ||x - (x_i+x_j)/2||^2
//   p_i+ = p_i + rho * sum_{j in N_i} (x_i+ - x_j+)
// x-steps are closed-form ridge solves; factorizations are cached per degree.
class DadmmRound {
 public:
  DadmmRound(const std::vector<LocalData>& data, double lambda_e, double rho);

  void step(DadmmState& s, const DynamicGraph& g, double t);

 private:
  const std::vector<LocalData>& data_;
  double lambda_e_, rho_;
  std::vector<std::map<int, Eigen::LLT<Eigen::MatrixXd>>> llt_by_degree_;
  std::vector<Eigen::MatrixXd> wt_t_;
};

// Non-learning references: rate with the optimal beamformer designed on the
// true channel, and with the one designed on the noisy channel but evaluated
// on the true channel.
std::pair<double, double> fd_reference(const Eigen::MatrixXcd& h_clean,
                                       const Eigen::MatrixXcd& h_noisy, int n_s, double rho_r);

}  // namespace dfl
