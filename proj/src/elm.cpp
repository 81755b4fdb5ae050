#include "dfl/elm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dfl {

namespace {

inline double sigmoid(double z) {
  z = std::clamp(z, -40.0, 40.0);
  return 1.0 / (1.0 + std::exp(-z));
}

void check_shapes(const Eigen::MatrixXd& x, const Eigen::MatrixXd& w, const Eigen::MatrixXd& t,
                  double lambda_e) {
  if (w.cols() != x.rows() || w.rows() != t.rows() || x.cols() != t.cols())
    throw std::invalid_argument("loss/gradient shape mismatch: W is " +
                                std::to_string(w.rows()) + "x" + std::to_string(w.cols()) +
                                ", x is " + std::to_string(x.rows()) + "x" +
                                std::to_string(x.cols()) + ", T is " + std::to_string(t.rows()) +
                                "x" + std::to_string(t.cols()));
  if (lambda_e <= 0.0) throw std::invalid_argument("lambda_e must be > 0");
}

}  // namespace

HiddenLayer init_hidden(int q, int input_dim, std::uint64_t seed) {
  if (q < 1 || input_dim < 1) throw std::invalid_argument("hidden size and input_dim must be >= 1");
  RandomStream rng(seed);
  HiddenLayer layer;
  layer.seed = seed;
  layer.a.resize(q, input_dim);
  for (int r = 0; r < q; ++r)
    for (int c = 0; c < input_dim; ++c) layer.a(r, c) = rng.uniform(-1.0, 1.0);
  layer.b.resize(q);
  for (int r = 0; r < q; ++r) layer.b(r) = rng.uniform(0.0, 1.0);
  return layer;
}

Eigen::VectorXd feature_map(const HiddenLayer& layer, const Eigen::RowVectorXd& s) {
  if (s.size() != layer.input_dim())
    throw std::invalid_argument("sample width " + std::to_string(s.size()) +
                                " != input_dim " + std::to_string(layer.input_dim()));
  Eigen::VectorXd z = layer.a * s.transpose() + layer.b;
  return z.unaryExpr([](double v) { return sigmoid(v); });
}

Eigen::MatrixXd hidden_matrix(const HiddenLayer& layer, const Eigen::MatrixXd& samples) {
  if (samples.cols() != layer.input_dim())
    throw std::invalid_argument("sample width " + std::to_string(samples.cols()) +
                                " != input_dim " + std::to_string(layer.input_dim()));
  Eigen::MatrixXd z = samples * layer.a.transpose();
  z.rowwise() += layer.b.transpose();
  return z.unaryExpr([](double v) { return sigmoid(v); });
}

double loss(const Eigen::MatrixXd& x, const Eigen::MatrixXd& w, const Eigen::MatrixXd& t,
            double lambda_e) {
  check_shapes(x, w, t, lambda_e);
  return (w * x - t).squaredNorm() / (2.0 * lambda_e) + 0.5 * x.squaredNorm();
}

Eigen::MatrixXd gradient(const Eigen::MatrixXd& x, const Eigen::MatrixXd& w,
                         const Eigen::MatrixXd& t, double lambda_e) {
  check_shapes(x, w, t, lambda_e);
  return w.transpose() * (w * x - t) / lambda_e + x;
}

Eigen::MatrixXd stochastic_gradient(const Eigen::MatrixXd& x, const Eigen::MatrixXd& w,
                                    const Eigen::MatrixXd& t, double lambda_e,
                                    const std::vector<int>& batch) {
  check_shapes(x, w, t, lambda_e);
  if (batch.empty()) throw std::invalid_argument("batch must be nonempty");
  Eigen::MatrixXd wb(batch.size(), w.cols());
  Eigen::MatrixXd tb(batch.size(), t.cols());
  for (std::size_t k = 0; k < batch.size(); ++k) {
    if (batch[k] < 0 || batch[k] >= w.rows())
      throw std::invalid_argument("batch index out of range");
    wb.row(k) = w.row(batch[k]);
    tb.row(k) = t.row(batch[k]);
  }
  const double scale = static_cast<double>(w.rows()) / static_cast<double>(batch.size());
  return scale / lambda_e * (wb.transpose() * (wb * x - tb)) + x;
}

Eigen::MatrixXd ridge_oracle(const Eigen::MatrixXd& w_all, const Eigen::MatrixXd& t_all,
                             double lambda_e, int n_agents) {
  if (w_all.rows() != t_all.rows()) throw std::invalid_argument("stacked shapes inconsistent");
  if (lambda_e <= 0.0 || n_agents < 1)
    throw std::invalid_argument("lambda_e must be > 0 and n_agents >= 1");
  Eigen::MatrixXd gram = w_all.transpose() * w_all;
  gram.diagonal().array() += n_agents * lambda_e;
  return Eigen::LLT<Eigen::MatrixXd>(gram).solve(w_all.transpose() * t_all);
}

Eigen::RowVectorXd predict(const HiddenLayer& layer, const Eigen::MatrixXd& x,
                           const Eigen::RowVectorXd& s) {
  if (x.rows() != layer.q()) throw std::invalid_argument("weight rows != hidden size");
  return feature_map(layer, s).transpose() * x;
}

std::vector<int> draw_batch(int d, int batch_size, RandomStream& rng) {
  if (d < 1 || batch_size < 1) throw std::invalid_argument("need d >= 1 and batch_size >= 1");
  batch_size = std::min(batch_size, d);
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  for (int i = 0; i < batch_size; ++i)
    std::swap(idx[i], idx[i + static_cast<int>(rng.index(d - i))]);
  idx.resize(batch_size);
  return idx;
}

void write_weights(std::ostream& os, const Eigen::MatrixXd& x) {
  const std::uint64_t rows = x.rows(), cols = x.cols();
  os.write(reinterpret_cast<const char*>(&rows), sizeof(rows));
  os.write(reinterpret_cast<const char*>(&cols), sizeof(cols));
  for (Eigen::Index r = 0; r < x.rows(); ++r)
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      const double v = x(r, c);
      os.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
}

Eigen::MatrixXd read_weights(std::istream& is) {
  std::uint64_t rows = 0, cols = 0;
  is.read(reinterpret_cast<char*>(&rows), sizeof(rows));
  is.read(reinterpret_cast<char*>(&cols), sizeof(cols));
  if (!is) throw std::runtime_error("truncated weight block");
  Eigen::MatrixXd x(rows, cols);
  for (Eigen::Index r = 0; r < x.rows(); ++r)
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      double v;
      is.read(reinterpret_cast<char*>(&v), sizeof(v));
      if (!is) throw std::runtime_error("truncated weight block");
      x(r, c) = v;
    }
  return x;
}

}  // namespace dfl
