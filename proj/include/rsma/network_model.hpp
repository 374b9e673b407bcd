#ifndef RSMA_NETWORK_MODEL_HPP
#define RSMA_NETWORK_MODEL_HPP

#include "rsma/math_kernel.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace rsma {

struct PathLossModel {
  double los_exponent = 2.0;
  double nlos_exponent = 3.5;
  double lambda1 = 9.61;
  double lambda2 = 0.16;

  void validate() const;
};

template <typename T>
T path_loss_exponent(T theta, const PathLossModel& model) {
  const T l = T(model.los_exponent);
  const T n = T(model.nlos_exponent);
  const T denom = T(1) + T(model.lambda1) * std::exp(T(model.lambda2) * (theta - T(model.lambda1)));
  return (l - n) / denom + n;
}

template <typename T>
T path_loss(T d, T alpha) {
  if (!(d > T(0))) throw DomainError("path_loss: distance must be positive");
  return std::pow(d, -alpha);
}

struct ScenarioParams {
  double coverage_radius = 800.0;
  double altitude = 140.0;
  double min_distance = 1.0;
  int clusters = 2;
  int users = 8;
  int eves = 2;
  int antennas = 4;
  int eve_antennas = 2;
  int max_users_per_cluster = 2;
  PathLossModel path_loss;

  void validate() const;
};

struct NetworkGeometry {
  double uav_altitude = 0.0;
  double coverage_radius = 0.0;
  double min_distance = 1.0;
  std::vector<Eigen::Vector2d> user_positions;
  std::vector<Eigen::Vector2d> eve_positions;
  int M = 1;
  int N_t = 1;
  int N_e = 1;

  int users() const { return static_cast<int>(user_positions.size()); }
  int J() const { return static_cast<int>(eve_positions.size()); }

  double ground_distance(int u) const { return user_positions[u].norm(); }
  double uav_distance(int u) const;
  // radians
  double elevation(int u) const;
  // ground-to-ground, clamped below at min_distance
  double user_eve_distance(int u, int j) const;

  void validate() const;
  std::string to_snapshot() const;
  static NetworkGeometry from_snapshot(const std::string& text);
};

// Uniform on the annulus [min_distance, coverage_radius] around the UAV.
NetworkGeometry sample_geometry(const ScenarioParams& params, const RngStream& root);

struct Codebook {
  std::vector<CVectorXd> vectors;
  int feedback_bits = 0;

  int size() const { return static_cast<int>(vectors.size()); }
  int dimension() const { return vectors.empty() ? 0 : static_cast<int>(vectors.front().size()); }
};

int feedback_bits_for(int codebook_size);
Codebook random_codebook(int size, int dimension, RngStream& rng);

template <typename Scalar>
struct Quantization {
  Scalar phi = Scalar(0);
  CVector<Scalar> e;      // unit, orthogonal to the codeword
  CVector<Scalar> f_hat;  // codeword rotated onto the phase of f
};

template <typename Scalar>
Quantization<Scalar> quantization_decompose(const CVector<Scalar>& f, const CVector<Scalar>& v_hat,
                                            RngStream& rng) {
  const Scalar fn = f.norm();
  if (fn == Scalar(0)) throw DomainError("quantization_decompose: zero channel");
  const CVector<Scalar> ft = f / fn;
  const std::complex<Scalar> ip = v_hat.dot(ft);
  const Scalar c = std::min(std::abs(ip), Scalar(1));
  Quantization<Scalar> q;
  q.f_hat = (std::abs(ip) > Scalar(0)) ? CVector<Scalar>(v_hat * (ip / std::abs(ip))) : v_hat;
  CVector<Scalar> resid = ft - c * q.f_hat;
  resid -= q.f_hat * q.f_hat.dot(resid);
  const Scalar s = resid.norm();
  q.phi = std::atan2(s, c);
  if (s > Scalar(1e-12)) {
    q.e = resid / s;
  } else {
    CVector<Scalar> z = sample_complex_gaussian_vector<Scalar>(static_cast<int>(f.size()), rng);
    z -= q.f_hat * q.f_hat.dot(z);
    q.e = z / z.norm();
  }
  return q;
}

// Unit vector orthogonal to every codeword except m, closest to v_m.
template <typename Scalar>
CVector<Scalar> zf_beamformer(const std::vector<CVector<Scalar>>& codebook, int m) {
  const int M = static_cast<int>(codebook.size());
  if (m < 0 || m >= M) throw DomainError("zf_beamformer: cluster index out of range");
  const int n = static_cast<int>(codebook[m].size());
  if (M == 1) return codebook[m] / codebook[m].norm();
  CMatrix<Scalar> others(n, M - 1);
  for (int l = 0, c = 0; l < M; ++l)
    if (l != m) others.col(c++) = codebook[l];
  Eigen::JacobiSVD<CMatrix<Scalar>> svd(others, Eigen::ComputeFullU);
  const Scalar tol = Scalar(1e-10) * std::max(Scalar(1), svd.singularValues()(0));
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++rank;
  if (rank >= n) throw DomainError("zf_beamformer: interfering codewords span the whole space");
  const auto null_basis = svd.matrixU().rightCols(n - rank);
  CVector<Scalar> w = null_basis * (null_basis.adjoint() * codebook[m]);
  if (w.norm() <= tol) w = null_basis.col(0);
  return w / w.norm();
}

template <typename Scalar>
struct EveChannel {
  CVector<Scalar> w;
  Scalar lambda_max = Scalar(0);
  CVector<Scalar> g;  // w^H q_k per column
};

template <typename Scalar>
EveChannel<Scalar> eve_effective_channel(const CMatrix<Scalar>& Q) {
  if (Q.size() == 0 || Q.norm() == Scalar(0)) throw DomainError("eve_effective_channel: zero matrix");
  const CMatrix<Scalar> gram = Q * Q.adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> es(gram);
  const int top = static_cast<int>(gram.rows()) - 1;
  EveChannel<Scalar> out;
  out.lambda_max = std::max(es.eigenvalues()(top), Scalar(0));
  out.w = es.eigenvectors().col(top);
  out.g = Q.adjoint() * out.w;
  out.g = out.g.conjugate();
  return out;
}

// Closed-form pipeline draw: g ~ CN(0, lambda_max).
CVectorXd sample_eve_gains(double lambda_max, int count, RngStream& rng);

// argmax_m |f~^H v_m|^2 per channel
std::vector<int> assign_clusters(const std::vector<CVectorXd>& channels, const Codebook& codebook);

struct ChannelRealization {
  std::vector<CVectorXd> f;
  std::vector<double> phi;
  std::vector<CVectorXd> e;
  std::vector<CVectorXd> f_hat;
  std::vector<std::vector<CMatrixXd>> Q;  // [m][j], N_e x K_m
};

struct ClusterPlan {
  std::vector<int> assignment;  // -1 means not scheduled
  std::vector<std::vector<int>> members;
  std::vector<CVectorXd> beamformers;
  std::vector<std::vector<CVectorXd>> eve_beamformers;  // [m][j]
  std::vector<std::vector<double>> eve_lambda_max;     // [m][j]

  int clusters() const { return static_cast<int>(members.size()); }
  std::vector<int> cluster_sizes() const;
  int scheduled_users() const;
};

// Keeps at most cap users per cluster, best aligned first.
void schedule_users(ClusterPlan& plan, const ChannelRealization& ch, const Codebook& codebook, int cap);

struct Scenario {
  ScenarioParams params;
  NetworkGeometry geometry;
  Codebook codebook;
  ChannelRealization channels;
  ClusterPlan plan;
  std::vector<double> pl_uav;              // per user
  std::vector<std::vector<double>> pl_eve;  // [j][user]
};

Scenario generate_scenario(const ScenarioParams& params, std::uint64_t seed, std::uint64_t trial);

}  // namespace rsma

#endif  // RSMA_NETWORK_MODEL_HPP
