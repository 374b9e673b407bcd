#include "rsma/network_model.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

namespace rsma {

namespace {

enum StreamTag : std::uint64_t {
  kUserPosition = 1,
  kEvePosition = 2,
  kCodebook = 3,
  kUserFading = 4,
  kEveFading = 5,
  kQuantization = 6,
};

Eigen::Vector2d sample_annulus(double r_min, double r_max, RngStream& rng) {
  const double u = rng.uniform();
  const double r = std::sqrt(r_min * r_min + u * (r_max * r_max - r_min * r_min));
  const double a = 2.0 * M_PI * rng.uniform();
  return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace

void PathLossModel::validate() const {
  if (!(los_exponent > 0.0) || !(nlos_exponent > 0.0))
    throw DomainError("path-loss exponents must be positive");
  if (los_exponent > nlos_exponent)
    throw DomainError("LoS exponent must not exceed the NLoS exponent");
  if (!std::isfinite(lambda1) || !std::isfinite(lambda2))
    throw DomainError("path-loss environment constants must be finite");
}

void ScenarioParams::validate() const {
  if (!(coverage_radius > 0.0)) throw DomainError("coverage_radius must be positive");
  if (!(altitude > 0.0)) throw DomainError("altitude must be positive");
  if (!(min_distance > 0.0) || min_distance > coverage_radius)
    throw DomainError("min_distance must lie in (0, coverage_radius]");
  if (clusters < 1) throw DomainError("clusters must be >= 1");
  if (users < 1) throw DomainError("users must be >= 1");
  if (eves < 0) throw DomainError("eves must be >= 0");
  if (antennas < 2) throw DomainError("antennas must be >= 2");
  if (clusters > antennas) throw DomainError("clusters must not exceed antennas");
  if (eve_antennas < 1) throw DomainError("eve_antennas must be >= 1");
  if (max_users_per_cluster < 1) throw DomainError("max_users_per_cluster must be >= 1");
  path_loss.validate();
}

double NetworkGeometry::uav_distance(int u) const {
  const double d = ground_distance(u);
  return std::sqrt(d * d + uav_altitude * uav_altitude);
}

double NetworkGeometry::elevation(int u) const {
  return std::atan2(uav_altitude, ground_distance(u));
}

double NetworkGeometry::user_eve_distance(int u, int j) const {
  return std::max((user_positions[u] - eve_positions[j]).norm(), min_distance);
}

void NetworkGeometry::validate() const {
  if (M < 1) throw DomainError("geometry: M must be >= 1");
  if (!(coverage_radius > 0.0) || !(uav_altitude > 0.0))
    throw DomainError("geometry: radius and altitude must be positive");
  const double slack = 1e-9 * coverage_radius;
  for (const auto& p : user_positions) {
    const double d = p.norm();
    if (!(d > 0.0) || d > coverage_radius + slack) throw DomainError("geometry: user outside coverage");
  }
  for (const auto& p : eve_positions) {
    const double d = p.norm();
    if (!(d > 0.0) || d > coverage_radius + slack) throw DomainError("geometry: eve outside coverage");
  }
}

std::string NetworkGeometry::to_snapshot() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "# rsma geometry snapshot v1\n";
  os << "uav_altitude = " << uav_altitude << "\n";
  os << "coverage_radius = " << coverage_radius << "\n";
  os << "min_distance = " << min_distance << "\n";
  os << "clusters = " << M << "\n";
  os << "antennas = " << N_t << "\n";
  os << "eve_antennas = " << N_e << "\n";
  os << "users = " << users() << "\n";
  os << "eves = " << J() << "\n";
  for (int u = 0; u < users(); ++u)
    os << "user." << u << " = " << user_positions[u].x() << " " << user_positions[u].y() << "\n";
  for (int j = 0; j < J(); ++j)
    os << "eve." << j << " = " << eve_positions[j].x() << " " << eve_positions[j].y() << "\n";
  return os.str();
}

NetworkGeometry NetworkGeometry::from_snapshot(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos)
      throw DomainError("snapshot line " + std::to_string(lineno) + ": expected key = value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  auto take = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw DomainError("snapshot: missing key '" + key + "'");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto point = [&](const std::string& key) {
    std::istringstream ps(take(key));
    double x = 0.0, y = 0.0;
    if (!(ps >> x >> y)) throw DomainError("snapshot: bad point for '" + key + "'");
    return Eigen::Vector2d(x, y);
  };
  NetworkGeometry g;
  g.uav_altitude = std::stod(take("uav_altitude"));
  g.coverage_radius = std::stod(take("coverage_radius"));
  g.min_distance = std::stod(take("min_distance"));
  g.M = std::stoi(take("clusters"));
  g.N_t = std::stoi(take("antennas"));
  g.N_e = std::stoi(take("eve_antennas"));
  const int users = std::stoi(take("users"));
  const int eves = std::stoi(take("eves"));
  for (int u = 0; u < users; ++u) g.user_positions.push_back(point("user." + std::to_string(u)));
  for (int j = 0; j < eves; ++j) g.eve_positions.push_back(point("eve." + std::to_string(j)));
  if (!kv.empty()) throw DomainError("snapshot: unknown key '" + kv.begin()->first + "'");
  g.validate();
  return g;
}

NetworkGeometry sample_geometry(const ScenarioParams& params, const RngStream& root) {
  params.validate();
  NetworkGeometry g;
  g.uav_altitude = params.altitude;
  g.coverage_radius = params.coverage_radius;
  g.min_distance = params.min_distance;
  g.M = params.clusters;
  g.N_t = params.antennas;
  g.N_e = params.eve_antennas;
  for (int u = 0; u < params.users; ++u) {
    RngStream s = root.substream(kUserPosition, u);
    g.user_positions.push_back(sample_annulus(params.min_distance, params.coverage_radius, s));
  }
  for (int j = 0; j < params.eves; ++j) {
    RngStream s = root.substream(kEvePosition, j);
    g.eve_positions.push_back(sample_annulus(params.min_distance, params.coverage_radius, s));
  }
  return g;
}

int feedback_bits_for(int codebook_size) {
  if (codebook_size < 1) throw DomainError("codebook size must be >= 1");
  int b = 0;
  while ((1 << b) < codebook_size) ++b;
  return b;
}

Codebook random_codebook(int size, int dimension, RngStream& rng) {
  if (size < 1 || dimension < 1) throw DomainError("random_codebook: bad dimensions");
  Codebook cb;
  cb.feedback_bits = feedback_bits_for(size);
  for (int m = 0; m < size; ++m) cb.vectors.push_back(sample_unit_vector<double>(dimension, rng));
  return cb;
}

CVectorXd sample_eve_gains(double lambda_max, int count, RngStream& rng) {
  return sample_complex_gaussian_vector<double>(count, rng) * std::sqrt(lambda_max);
}

std::vector<int> assign_clusters(const std::vector<CVectorXd>& channels, const Codebook& codebook) {
  if (codebook.size() < 1) throw DomainError("assign_clusters: empty codebook");
  std::vector<int> out;
  out.reserve(channels.size());
  for (const auto& f : channels) {
    const double fn = f.norm();
    int best = 0;
    double best_val = -1.0;
    for (int m = 0; m < codebook.size(); ++m) {
      const double c = std::norm(codebook.vectors[m].dot(f)) / (fn * fn);
      if (c > best_val) {
        best_val = c;
        best = m;
      }
    }
    out.push_back(best);
  }
  return out;
}

std::vector<int> ClusterPlan::cluster_sizes() const {
  std::vector<int> k;
  for (const auto& m : members) k.push_back(static_cast<int>(m.size()));
  return k;
}

int ClusterPlan::scheduled_users() const {
  int n = 0;
  for (const auto& m : members) n += static_cast<int>(m.size());
  return n;
}

void schedule_users(ClusterPlan& plan, const ChannelRealization& ch, const Codebook& codebook, int cap) {
  plan.members.assign(codebook.size(), {});
  std::vector<std::vector<std::pair<double, int>>> cand(codebook.size());
  for (std::size_t u = 0; u < plan.assignment.size(); ++u) {
    const int m = plan.assignment[u];
    if (m < 0) continue;
    const double c = std::cos(ch.phi[u]);
    cand[m].push_back({c * c, static_cast<int>(u)});
  }
  for (int m = 0; m < codebook.size(); ++m) {
    auto& c = cand[m];
    std::stable_sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (static_cast<int>(i) < cap) plan.members[m].push_back(c[i].second);
      else plan.assignment[c[i].second] = -1;
    }
    std::sort(plan.members[m].begin(), plan.members[m].end());
  }
}

Scenario generate_scenario(const ScenarioParams& params, std::uint64_t seed, std::uint64_t trial) {
  params.validate();
  const RngStream root(seed, trial);
  Scenario s;
  s.params = params;
  s.geometry = sample_geometry(params, root);

  RngStream cb_rng = root.substream(kCodebook);
  s.codebook = random_codebook(params.clusters, params.antennas, cb_rng);

  const int U = params.users;
  auto& ch = s.channels;
  for (int u = 0; u < U; ++u) {
    RngStream fr = root.substream(kUserFading, u);
    ch.f.push_back(sample_complex_gaussian_vector<double>(params.antennas, fr));
  }
  s.plan.assignment = assign_clusters(ch.f, s.codebook);
  for (int u = 0; u < U; ++u) {
    RngStream qr = root.substream(kQuantization, u);
    auto q = quantization_decompose<double>(ch.f[u], s.codebook.vectors[s.plan.assignment[u]], qr);
    ch.phi.push_back(q.phi);
    ch.e.push_back(q.e);
    ch.f_hat.push_back(q.f_hat);
  }
  schedule_users(s.plan, ch, s.codebook, params.max_users_per_cluster);

  for (int m = 0; m < params.clusters; ++m)
    s.plan.beamformers.push_back(zf_beamformer(s.codebook.vectors, m));

  const int J = params.eves;
  ch.Q.assign(params.clusters, std::vector<CMatrixXd>(J));
  s.plan.eve_beamformers.assign(params.clusters, std::vector<CVectorXd>(J));
  s.plan.eve_lambda_max.assign(params.clusters, std::vector<double>(J, 0.0));
  for (int m = 0; m < params.clusters; ++m) {
    const auto& mem = s.plan.members[m];
    if (mem.empty()) continue;
    for (int j = 0; j < J; ++j) {
      CMatrixXd Q(params.eve_antennas, static_cast<int>(mem.size()));
      for (std::size_t k = 0; k < mem.size(); ++k) {
        RngStream er = root.substream(kEveFading, (static_cast<std::uint64_t>(j) << 32) | mem[k]);
        Q.col(static_cast<int>(k)) = sample_complex_gaussian_vector<double>(params.eve_antennas, er);
      }
      const auto ec = eve_effective_channel<double>(Q);
      ch.Q[m][j] = Q;
      s.plan.eve_beamformers[m][j] = ec.w;
      s.plan.eve_lambda_max[m][j] = ec.lambda_max;
    }
  }

  const auto& g = s.geometry;
  for (int u = 0; u < U; ++u)
    s.pl_uav.push_back(path_loss(g.uav_distance(u), path_loss_exponent(g.elevation(u), params.path_loss)));
  const double ground_alpha = path_loss_exponent(0.0, params.path_loss);
  s.pl_eve.assign(J, std::vector<double>(U, 0.0));
  for (int j = 0; j < J; ++j)
    for (int u = 0; u < U; ++u) s.pl_eve[j][u] = path_loss(g.user_eve_distance(u, j), ground_alpha);
  return s;
}

}  // namespace rsma
