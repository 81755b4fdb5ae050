#pragma once

#include <Eigen/Dense>

namespace dfl {

// Fully digital precoder, N_t x N_s complex.
using Beamformer = Eigen::MatrixXcd;

// Top n_s right singular vectors of h, descending singular value, each column
// phase-normalized so its first nonzero entry is real nonnegative. The phase
// rule makes the result a deterministic function of h, which regression
// targets require. An all-zero channel maps to the zero beamformer.
Beamformer optimal_fd_beamformer(const Eigen::MatrixXcd& h, int n_s);

// log2 det(I + rho_r * H F F^H H^H), bits/s/Hz. Nonnegative.
double spectral_efficiency(const Eigen::MatrixXcd& h, const Beamformer& f, double rho_r);

// Re/Im vectorization of F into a row of width 2*N_t*N_s, and its inverse.
Eigen::RowVectorXd encode_beamformer(const Beamformer& f);
Beamformer decode_beamformer(const Eigen::RowVectorXd& row, int n_t, int n_s);

// Thin-QR column orthonormalization; the zero matrix passes through as zero.
Beamformer orthonormalize_columns(const Beamformer& f);

// Random N_t x N_s matrix with orthonormal columns (test/reference helper).
class RandomStream;
Beamformer random_orthonormal(int n_t, int n_s, RandomStream& rng);

}  // namespace dfl
