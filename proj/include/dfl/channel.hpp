#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "dfl/rng.hpp"

namespace dfl {

// Geometric multipath mmWave channel: H = sqrt(N_t*N_r/P) * sum_p alpha_p *
// a_r(theta_p) a_t(phi_p)^H, ULA steering with half-wavelength spacing,
// i.i.d. CN(0,1) path gains, angles uniform on [angle_min, angle_max).
struct ChannelParams {
  int n_t = 16;
  int n_r = 1;
  int paths = 4;
  double angle_min = 0.0;
  double angle_max = 2.0 * M_PI;
};

struct Channel {
  Eigen::MatrixXcd matrix;  // N_r x N_t
  int realization_id = 0;
};

Channel generate_channel(const ChannelParams& params, RandomStream& rng,
                         int realization_id = 0);

// C_i noisy copies H + noise, per-entry complex-normal variance
// sigma^2 = mean(|H_jk|^2) * 10^(-snr_train_db/10). snr = +inf means exact copies.
std::vector<Channel> add_training_noise(const Channel& h, double snr_train_db, int copies,
                                        RandomStream& rng);

// Sample-row encoding [Re(vec H), Im(vec H)], width 2*N_r*N_t, and inverse.
Eigen::RowVectorXd encode_channel(const Eigen::MatrixXcd& h);
Eigen::MatrixXcd decode_channel(const Eigen::RowVectorXd& row, int n_r, int n_t);

// Region channel classes differ by angle interval and path count: region l of
// L uses paths = base + (l-1) and angles centered at 2*pi*(l-1)/L with the
// configured spread.
ChannelParams region_channel_params(const ChannelParams& base, int region, int n_regions,
                                    double angle_spread);

struct DataParams {
  ChannelParams channel;
  int n_s = 1;
  int realizations = 10;   // R_i
  int copies = 3;          // C_i
  int region = 1;          // l in 1..L
  int n_regions = 1;       // L
  double angle_spread = M_PI / 2.0;
  double snr_db = 10.0;    // +inf for noiseless
};

// Per-agent training set: D = R*C sample rows, each labeled with the clean
// realization's optimal beamformer target. Copies within a realization share
// one target row.
struct Dataset {
  Eigen::MatrixXd samples;  // D x 2*N_r*N_t
  Eigen::MatrixXd targets;  // D x 2*N_t*N_s
  int n_t = 0, n_r = 0, n_s = 0;
  int realizations = 0, copies = 0, region = 0;
  double snr_db = 0.0;
  std::uint64_t seed = 0;
};

Dataset build_training_set(const DataParams& params, std::uint64_t seed);

// Held-out evaluation set: one noisy copy per clean realization, with the
// channels retained for rate evaluation on the true channel.
struct EvalSet {
  std::vector<Eigen::MatrixXcd> clean;
  std::vector<Eigen::MatrixXcd> noisy;
  Eigen::MatrixXd samples;  // rows from the noisy channels
  Eigen::MatrixXd targets;  // rows from the clean channels
  int n_t = 0, n_r = 0, n_s = 0;
};

EvalSet build_eval_set(const DataParams& params, std::uint64_t seed);

// Binary dataset file: magic+version, header
// (N_t, N_r, N_s, R_i, C_i, l, snr_db, seed), then row-major float64 sample
// and target blocks. Round-trips bit-exactly.
void save_dataset(const Dataset& d, const std::string& path);
Dataset load_dataset(const std::string& path);

}  // namespace dfl
