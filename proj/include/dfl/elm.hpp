#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

#include "dfl/rng.hpp"

namespace dfl {

// Frozen random hidden layer, shared by every agent so that consensus on the
// output weights is consensus on one model. Never trained.
struct HiddenLayer {
  Eigen::MatrixXd a;  // Q x input_dim, i.i.d. uniform [-1, 1]
  Eigen::VectorXd b;  // Q, i.i.d. uniform [0, 1]
  std::uint64_t seed = 0;

  int q() const { return static_cast<int>(a.rows()); }
  int input_dim() const { return static_cast<int>(a.cols()); }
};

HiddenLayer init_hidden(int q, int input_dim, std::uint64_t seed);

// Sigmoid feature vector g_q = 1/(1 + exp(-(a_q.s + b_q))). The exponent is
// clamped to [-40, 40]; shifts results by < 1e-17.
Eigen::VectorXd feature_map(const HiddenLayer& layer, const Eigen::RowVectorXd& s);

// D x Q matrix whose row d is feature_map(samples.row(d)).
Eigen::MatrixXd hidden_matrix(const HiddenLayer& layer, const Eigen::MatrixXd& samples);

// f(x) = (1/(2*lambda_e)) ||W x - T||_F^2 + (1/2) ||x||_F^2
double loss(const Eigen::MatrixXd& x, const Eigen::MatrixXd& w, const Eigen::MatrixXd& t,
            double lambda_e);

// grad f = (1/lambda_e) W^T (W x - T) + x
Eigen::MatrixXd gradient(const Eigen::MatrixXd& x, const Eigen::MatrixXd& w,
                         const Eigen::MatrixXd& t, double lambda_e);

// Unbiased minibatch estimate: (D/|B|) (1/lambda_e) W_B^T (W_B x - T_B) + x.
Eigen::MatrixXd stochastic_gradient(const Eigen::MatrixXd& x, const Eigen::MatrixXd& w,
                                    const Eigen::MatrixXd& t, double lambda_e,
                                    const std::vector<int>& batch);

// Exact minimizer of the summed objective over n_agents agents with stacked
// data: solves (W^T W + n_agents*lambda_e*I) x = W^T T. SPD for lambda_e > 0.
Eigen::MatrixXd ridge_oracle(const Eigen::MatrixXd& w_all, const Eigen::MatrixXd& t_all,
                             double lambda_e, int n_agents);

Eigen::RowVectorXd predict(const HiddenLayer& layer, const Eigen::MatrixXd& x,
                           const Eigen::RowVectorXd& s);

// batch_size distinct indices from [0, d), uniform without replacement.
std::vector<int> draw_batch(int d, int batch_size, RandomStream& rng);

// 64-bit float blocks with a (rows, cols) header; used for checkpointing.
void write_weights(std::ostream& os, const Eigen::MatrixXd& x);
Eigen::MatrixXd read_weights(std::istream& is);

}  // namespace dfl
