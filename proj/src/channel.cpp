#include "dfl/channel.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "dfl/beamforming.hpp"

namespace dfl {

namespace {

Eigen::VectorXcd steering(int n, double angle) {
  Eigen::VectorXcd a(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) {
    const double phase = M_PI * k * std::sin(angle);
    a(k) = scale * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return a;
}

}  // namespace

Channel generate_channel(const ChannelParams& params, RandomStream& rng, int realization_id) {
  if (params.n_t < 1 || params.n_r < 1) throw std::invalid_argument("antenna counts must be >= 1");
  if (params.paths < 1) throw std::invalid_argument("path count must be >= 1");

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(params.n_r, params.n_t);
  for (int p = 0; p < params.paths; ++p) {
    const std::complex<double> gain = rng.cnormal();
    const double theta = rng.uniform(params.angle_min, params.angle_max);  // arrival
    const double phi = rng.uniform(params.angle_min, params.angle_max);    // departure
    h.noalias() += gain * steering(params.n_r, theta) * steering(params.n_t, phi).adjoint();
  }
  h *= std::sqrt(static_cast<double>(params.n_t) * params.n_r / params.paths);
  return Channel{std::move(h), realization_id};
}

std::vector<Channel> add_training_noise(const Channel& h, double snr_train_db, int copies,
                                        RandomStream& rng) {
  if (copies < 1) throw std::invalid_argument("copies must be >= 1");
  std::vector<Channel> out;
  out.reserve(copies);
  if (std::isinf(snr_train_db) && snr_train_db > 0) {
    for (int c = 0; c < copies; ++c) out.push_back(h);
    return out;
  }
  const double signal_power = h.matrix.squaredNorm() / static_cast<double>(h.matrix.size());
  const double sigma = std::sqrt(signal_power * std::pow(10.0, -snr_train_db / 10.0));
  for (int c = 0; c < copies; ++c) {
    Eigen::MatrixXcd noisy = h.matrix;
    for (Eigen::Index col = 0; col < noisy.cols(); ++col)
      for (Eigen::Index row = 0; row < noisy.rows(); ++row)
        noisy(row, col) += sigma * rng.cnormal();
    out.push_back(Channel{std::move(noisy), h.realization_id});
  }
  return out;
}

Eigen::RowVectorXd encode_channel(const Eigen::MatrixXcd& h) {
  const Eigen::Index n = h.size();
  Eigen::RowVectorXd row(2 * n);
  const Eigen::Map<const Eigen::VectorXcd> vec(h.data(), n);
  row.head(n) = vec.real();
  row.tail(n) = vec.imag();
  return row;
}

Eigen::MatrixXcd decode_channel(const Eigen::RowVectorXd& row, int n_r, int n_t) {
  const Eigen::Index n = static_cast<Eigen::Index>(n_r) * n_t;
  if (row.size() != 2 * n)
    throw std::invalid_argument("encoded channel width must be 2*N_r*N_t");
  Eigen::MatrixXcd h(n_r, n_t);
  Eigen::Map<Eigen::VectorXcd> vec(h.data(), n);
  vec.real() = row.head(n);
  vec.imag() = row.tail(n);
  return h;
}

ChannelParams region_channel_params(const ChannelParams& base, int region, int n_regions,
                                    double angle_spread) {
  if (region < 1 || region > n_regions) throw std::invalid_argument("region must be in 1..L");
  ChannelParams p = base;
  p.paths = base.paths + (region - 1);
  const double center = 2.0 * M_PI * (region - 1) / n_regions;
  p.angle_min = center - angle_spread / 2.0;
  p.angle_max = center + angle_spread / 2.0;
  return p;
}

Dataset build_training_set(const DataParams& params, std::uint64_t seed) {
  if (params.realizations < 1 || params.copies < 1)
    throw std::invalid_argument("realizations and copies must be >= 1");
  const ChannelParams cp =
      region_channel_params(params.channel, params.region, params.n_regions, params.angle_spread);
  RandomStream rng(seed);

  const int d_total = params.realizations * params.copies;
  Dataset ds;
  ds.samples.resize(d_total, 2 * cp.n_r * cp.n_t);
  ds.targets.resize(d_total, 2 * cp.n_t * params.n_s);
  ds.n_t = cp.n_t;
  ds.n_r = cp.n_r;
  ds.n_s = params.n_s;
  ds.realizations = params.realizations;
  ds.copies = params.copies;
  ds.region = params.region;
  ds.snr_db = params.snr_db;
  ds.seed = seed;

  int row = 0;
  for (int r = 0; r < params.realizations; ++r) {
    const Channel clean = generate_channel(cp, rng, r);
    const Eigen::RowVectorXd target =
        encode_beamformer(optimal_fd_beamformer(clean.matrix, params.n_s));
    for (const Channel& noisy : add_training_noise(clean, params.snr_db, params.copies, rng)) {
      ds.samples.row(row) = encode_channel(noisy.matrix);
      ds.targets.row(row) = target;
      ++row;
    }
  }
  return ds;
}

EvalSet build_eval_set(const DataParams& params, std::uint64_t seed) {
  const ChannelParams cp =
      region_channel_params(params.channel, params.region, params.n_regions, params.angle_spread);
  RandomStream rng(seed);

  EvalSet es;
  es.n_t = cp.n_t;
  es.n_r = cp.n_r;
  es.n_s = params.n_s;
  es.samples.resize(params.realizations, 2 * cp.n_r * cp.n_t);
  es.targets.resize(params.realizations, 2 * cp.n_t * params.n_s);
  es.clean.reserve(params.realizations);
  es.noisy.reserve(params.realizations);

  for (int r = 0; r < params.realizations; ++r) {
    const Channel clean = generate_channel(cp, rng, r);
    const Channel noisy = add_training_noise(clean, params.snr_db, 1, rng).front();
    es.samples.row(r) = encode_channel(noisy.matrix);
    es.targets.row(r) = encode_beamformer(optimal_fd_beamformer(clean.matrix, params.n_s));
    es.clean.push_back(clean.matrix);
    es.noisy.push_back(noisy.matrix);
  }
  return es;
}

namespace {

constexpr char kMagic[8] = {'D', 'F', 'L', 'D', 'S', 'E', 'T', '1'};

template <typename T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("truncated dataset file");
  return v;
}

void put_matrix(std::ostream& os, const Eigen::MatrixXd& m) {
  // Row-major on disk.
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) put(os, m(r, c));
}

void get_matrix(std::istream& is, Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = get<double>(is);
}

}  // namespace

void save_dataset(const Dataset& d, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(os, d.n_t);
  put<std::uint32_t>(os, d.n_r);
  put<std::uint32_t>(os, d.n_s);
  put<std::uint32_t>(os, d.realizations);
  put<std::uint32_t>(os, d.copies);
  put<std::uint32_t>(os, d.region);
  put<double>(os, d.snr_db);
  put<std::uint64_t>(os, d.seed);
  put_matrix(os, d.samples);
  put_matrix(os, d.targets);
  if (!os) throw std::runtime_error("write failed for '" + path + "'");
}

Dataset load_dataset(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open dataset '" + path + "'");
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("'" + path + "' is not a dataset file");
  Dataset d;
  d.n_t = static_cast<int>(get<std::uint32_t>(is));
  d.n_r = static_cast<int>(get<std::uint32_t>(is));
  d.n_s = static_cast<int>(get<std::uint32_t>(is));
  d.realizations = static_cast<int>(get<std::uint32_t>(is));
  d.copies = static_cast<int>(get<std::uint32_t>(is));
  d.region = static_cast<int>(get<std::uint32_t>(is));
  d.snr_db = get<double>(is);
  d.seed = get<std::uint64_t>(is);
  const int rows = d.realizations * d.copies;
  d.samples.resize(rows, 2 * d.n_r * d.n_t);
  d.targets.resize(rows, 2 * d.n_t * d.n_s);
  get_matrix(is, d.samples);
  get_matrix(is, d.targets);
  return d;
}

}  // namespace dfl
