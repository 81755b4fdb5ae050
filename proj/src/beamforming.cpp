#include "dfl/beamforming.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "dfl/log.hpp"
#include "dfl/rng.hpp"

namespace dfl {

namespace {

// First nonzero entry of each column made real nonnegative.
void normalize_phase(Beamformer& f) {
  for (Eigen::Index c = 0; c < f.cols(); ++c) {
    const double col_norm = f.col(c).norm();
    if (col_norm == 0.0) continue;
    for (Eigen::Index r = 0; r < f.rows(); ++r) {
      const std::complex<double> v = f(r, c);
      if (std::abs(v) > 1e-12 * col_norm) {
        f.col(c) *= std::conj(v) / std::abs(v);
        break;
      }
    }
  }
}

}  // namespace

Beamformer optimal_fd_beamformer(const Eigen::MatrixXcd& h, int n_s) {
  const int n_r = static_cast<int>(h.rows());
  const int n_t = static_cast<int>(h.cols());
  if (n_s < 1 || n_s > std::min(n_t, n_r))
    throw std::invalid_argument("n_s must satisfy 1 <= n_s <= min(N_t, N_r)");

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h, Eigen::ComputeThinV);
  if (svd.singularValues()(0) <= 0.0) {
    log_warn("degenerate (zero) channel: returning zero beamformer");
    return Beamformer::Zero(n_t, n_s);
  }
  Beamformer f = svd.matrixV().leftCols(n_s);
  normalize_phase(f);
  return f;
}

double spectral_efficiency(const Eigen::MatrixXcd& h, const Beamformer& f, double rho_r) {
  if (h.cols() != f.rows()) throw std::invalid_argument("channel/beamformer dimension mismatch");
  if (rho_r < 0.0) throw std::invalid_argument("rho_r must be >= 0");

  const Eigen::MatrixXcd hf = h * f;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(h.rows(), h.rows());
  m.noalias() += rho_r * hf * hf.adjoint();
  const Eigen::LLT<Eigen::MatrixXcd> llt(m);
  double log2det = 0.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < l.rows(); ++i) log2det += 2.0 * std::log2(l(i, i).real());
  return std::max(0.0, log2det);
}

Eigen::RowVectorXd encode_beamformer(const Beamformer& f) {
  const Eigen::Index n = f.size();
  Eigen::RowVectorXd row(2 * n);
  const Eigen::Map<const Eigen::VectorXcd> vec(f.data(), n);  // column-major vec()
  row.head(n) = vec.real();
  row.tail(n) = vec.imag();
  return row;
}

Beamformer decode_beamformer(const Eigen::RowVectorXd& row, int n_t, int n_s) {
  const Eigen::Index n = static_cast<Eigen::Index>(n_t) * n_s;
  if (row.size() != 2 * n)
    throw std::invalid_argument("encoded beamformer width must be 2*N_t*N_s = " +
                                std::to_string(2 * n) + ", got " + std::to_string(row.size()));
  Beamformer f(n_t, n_s);
  Eigen::Map<Eigen::VectorXcd> vec(f.data(), n);
  vec.real() = row.head(n);
  vec.imag() = row.tail(n);
  return f;
}

Beamformer orthonormalize_columns(const Beamformer& f) {
  if (f.norm() == 0.0) return f;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(f);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(f.rows(), f.cols());
}

Beamformer random_orthonormal(int n_t, int n_s, RandomStream& rng) {
  Eigen::MatrixXcd g(n_t, n_s);
  for (Eigen::Index c = 0; c < g.cols(); ++c)
    for (Eigen::Index r = 0; r < g.rows(); ++r) g(r, c) = rng.cnormal();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n_t, n_s);
}

}  // namespace dfl
