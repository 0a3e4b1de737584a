// Copyright 2026 The robnet Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "robnet/uncertainty/hyperplane.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "json.hpp"
#include "robnet/error.hpp"

namespace robnet::uncertainty {

namespace {

void normalize(std::vector<double>& v) {
  const double norm = std::sqrt(dot(v, v));
  if (norm == 0.0) {
    v.assign(v.size(), 0.0);
    v[0] = 1.0;
    return;
  }
  for (double& x : v) x /= norm;
}

std::vector<double> random_direction(std::size_t kappa, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v(kappa);
  for (double& x : v) x = gauss(rng);
  normalize(v);
  return v;
}

class DirectionSearch {
 public:
  DirectionSearch(const RowMatrix& train, const RowMatrix& noise, double w,
                  std::span<const double> floor_point)
      : train_(train), noise_(noise), w_(w), floor_point_(floor_point) {}

  HyperplaneFit evaluate(std::vector<double> v) {
    normalize(v);
    ++evaluations_;
    const double floor = floor_point_.empty() ? -std::numeric_limits<double>::infinity()
                                              : dot(v, floor_point_);
    return best_offset(v, train_, noise_, w_, floor);
  }

  long evaluations() const { return evaluations_; }

 private:
  const RowMatrix& train_;
  const RowMatrix& noise_;
  double w_;
  std::span<const double> floor_point_;
  long evaluations_ = 0;
};

}  // namespace

void HyperplaneConfig::validate() const {
  if (!(amplify_lo > 1.0) || !(amplify_hi >= amplify_lo))
    throw ValidationError("amplify range must satisfy 1 < lo <= hi");
  if (!(swap_prob >= 0.0 && swap_prob <= 1.0))
    throw ValidationError("swap probability must lie in [0, 1]");
  if (!(w_min >= 0.0) || !(w1 >= w_min)) throw ValidationError("penalties must satisfy w1 >= w_min >= 0");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ValidationError("gamma must lie in (0, 1]");
  if (search_budget < 1) throw ValidationError("search budget must be positive");
}

RowMatrix generate_noise(const RowMatrix& train, const HyperplaneConfig& cfg,
                         std::mt19937_64& rng) {
  if (train.rows() == 0) throw ValidationError("generate_noise: empty training set");
  const std::size_t count =
      cfg.noise_count < 0 ? train.rows() : static_cast<std::size_t>(cfg.noise_count);
  const std::size_t kappa = train.cols();
  std::uniform_int_distribution<std::size_t> pick_row(0, train.rows() - 1);
  std::uniform_int_distribution<std::size_t> pick_dim(0, kappa - 1);
  std::uniform_real_distribution<double> factor(cfg.amplify_lo, cfg.amplify_hi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RowMatrix noise(count, kappa);
  for (std::size_t i = 0; i < count; ++i) {
    auto out = noise.row(i);
    const auto src = train.row(pick_row(rng));
    std::copy(src.begin(), src.end(), out.begin());
    const std::size_t dim = pick_dim(rng);
    out[dim] *= factor(rng);
    for (std::size_t l = 0; l < kappa; ++l) {
      if (unit(rng) < cfg.swap_prob) out[l] = train(pick_row(rng), l);
    }
  }
  return noise;
}

double score_hyperplane(std::span<const double> v, double b, const RowMatrix& train,
                        const RowMatrix& noise, double w) {
  std::size_t cut = 0, kept = 0;
  for (std::size_t t = 0; t < train.rows(); ++t)
    if (dot(v, train.row(t)) > b) ++cut;
  for (std::size_t j = 0; j < noise.rows(); ++j)
    if (dot(v, noise.row(j)) <= b) ++kept;
  return w * static_cast<double>(cut) + static_cast<double>(kept);
}

HyperplaneFit best_offset(std::span<const double> v, const RowMatrix& train,
                          const RowMatrix& noise, double w, double floor) {
  std::vector<std::pair<double, bool>> proj;  // (projection, is training point)
  proj.reserve(train.rows() + noise.rows());
  for (std::size_t t = 0; t < train.rows(); ++t) proj.emplace_back(dot(v, train.row(t)), true);
  for (std::size_t j = 0; j < noise.rows(); ++j) proj.emplace_back(dot(v, noise.row(j)), false);
  std::sort(proj.begin(), proj.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  const double total_train = static_cast<double>(train.rows());
  double train_le = 0.0, noise_le = 0.0;
  std::size_t i = 0;
  HyperplaneFit fit;
  fit.v.assign(v.begin(), v.end());
  if (std::isfinite(floor)) {
    while (i < proj.size() && proj[i].first <= floor) {
      (proj[i].second ? train_le : noise_le) += 1.0;
      ++i;
    }
    fit.b = floor;
  } else {
    fit.b = proj.empty() ? 0.0 : proj.front().first - 1.0;
  }
  fit.score = w * (total_train - train_le) + noise_le;
  while (i < proj.size()) {
    const double value = proj[i].first;
    while (i < proj.size() && proj[i].first == value) {
      (proj[i].second ? train_le : noise_le) += 1.0;
      ++i;
    }
    const double score = w * (total_train - train_le) + noise_le;
    if (score <= fit.score) {
      fit.score = score;
      fit.b = value;
    }
  }
  return fit;
}

HyperplaneFit fit_hyperplane(const RowMatrix& train, const RowMatrix& noise, double w,
                             const HyperplaneConfig& cfg, std::mt19937_64& rng,
                             std::span<const double> floor_point) {
  const std::size_t kappa = train.cols();
  if (kappa == 0) throw ValidationError("fit_hyperplane: zero-dimensional data");
  DirectionSearch search(train, noise, w, floor_point);

  HyperplaneFit best;
  bool have = false;
  auto consider = [&](HyperplaneFit fit) {
    if (!have || fit.score < best.score) {
      best = std::move(fit);
      have = true;
    }
  };
  for (std::size_t k = 0; k < kappa; ++k) {
    std::vector<double> axis(kappa, 0.0);
    axis[k] = 1.0;
    consider(search.evaluate(std::move(axis)));
  }
  const long random_seeds = std::min<long>(static_cast<long>(kappa), cfg.search_budget / 20);
  for (long r = 0; r < random_seeds; ++r) consider(search.evaluate(random_direction(kappa, rng)));

  const long remaining = cfg.search_budget - search.evaluations();
  if (remaining <= 0 || best.score == 0.0) return best;

  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  HyperplaneFit current = best;
  const double t0 = 1.0 + 0.05 * best.score;
  const double step_scale = 1.0 / std::sqrt(static_cast<double>(kappa));
  long since_improvement = 0;
  const long patience = std::max<long>(50, remaining / 10);
  for (long e = 0; e < remaining; ++e) {
    const double frac = static_cast<double>(e) / static_cast<double>(remaining);
    const double temperature = t0 * std::pow(1e-3, frac);
    const double step = 0.5 * std::pow(0.02, frac) * step_scale;
    std::vector<double> proposal = current.v;
    for (double& x : proposal) x += step * gauss(rng);
    HyperplaneFit cand = search.evaluate(std::move(proposal));
    const double delta = cand.score - current.score;
    if (delta <= 0.0 || unit(rng) < std::exp(-delta / temperature)) current = std::move(cand);
    if (current.score < best.score) {
      best = current;
      since_improvement = 0;
      if (best.score == 0.0) break;
    } else if (++since_improvement >= patience) {
      current = best;
      since_improvement = 0;
    }
  }
  return best;
}

PolyhedronBuild build_polyhedron(const RowMatrix& train, int m, const HyperplaneConfig& cfg) {
  cfg.validate();
  if (m < 0) throw ValidationError("number of hyperplanes must be nonnegative");
  if (train.rows() == 0) throw ValidationError("build_polyhedron: empty training set");
  const std::size_t kappa = train.cols();
  const std::size_t n = train.rows();

  std::vector<double> lower(train.row(0).begin(), train.row(0).end());
  std::vector<double> upper = lower;
  std::vector<double> mean(kappa, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    const auto row = train.row(t);
    for (std::size_t l = 0; l < kappa; ++l) {
      lower[l] = std::min(lower[l], row[l]);
      upper[l] = std::max(upper[l], row[l]);
      mean[l] += row[l];
    }
  }
  for (std::size_t l = 0; l < kappa; ++l)
    mean[l] = std::clamp(mean[l] / static_cast<double>(n), lower[l], upper[l]);

  PolyhedronBuild out;
  out.polyhedron = Polyhedron::box(lower, upper);
  out.polyhedron.witness = mean;
  std::mt19937_64 rng(cfg.seed);
  out.noise = generate_noise(train, cfg, rng);

  // Noise outside the box is already excluded by the bounds.
  RowMatrix active(0, kappa);
  for (std::size_t j = 0; j < out.noise.rows(); ++j)
    if (contains(out.polyhedron, out.noise.row(j), 0.0)) active.append_row(out.noise.row(j));

  double w = cfg.w1;
  for (int i = 0; i < m; ++i) {
    const double weight = std::max(cfg.w_min, w);
    w *= cfg.gamma;
    const HyperplaneFit fit = fit_hyperplane(train, active, weight, cfg, rng, mean);
    HyperplaneInfo info;
    info.weight = weight;
    info.score = fit.score;
    std::size_t violated = 0;
    for (std::size_t t = 0; t < n; ++t)
      if (dot(fit.v, train.row(t)) > fit.b) ++violated;
    info.train_violation = static_cast<double>(violated) / static_cast<double>(n);
    out.polyhedron.append_row(fit.v, fit.b, info);

    RowMatrix next(0, kappa);
    for (std::size_t j = 0; j < active.rows(); ++j)
      if (dot(fit.v, active.row(j)) <= fit.b) next.append_row(active.row(j));
    active = std::move(next);
    out.active_after.push_back(active.rows());
  }
  return out;
}

void write_polyhedron(std::ostream& out, const Polyhedron& poly) {
  nlohmann::json doc;
  doc["kappa"] = poly.kappa();
  doc["lower"] = poly.lower;
  doc["upper"] = poly.upper;
  doc["witness"] = poly.witness;
  doc["rows"] = nlohmann::json::array();
  for (std::size_t i = 0; i < poly.num_rows(); ++i) {
    const auto row = poly.v.row(i);
    doc["rows"].push_back({{"v", std::vector<double>(row.begin(), row.end())},
                           {"b", poly.b[i]},
                           {"weight", poly.info[i].weight},
                           {"score", poly.info[i].score},
                           {"train_violation", poly.info[i].train_violation}});
  }
  out << doc.dump(1) << '\n';
}

Polyhedron read_polyhedron(std::istream& in) {
  Polyhedron poly;
  try {
    const auto doc = nlohmann::json::parse(in);
    const auto kappa = doc.at("kappa").get<std::size_t>();
    poly = Polyhedron::box(doc.at("lower").get<std::vector<double>>(),
                           doc.at("upper").get<std::vector<double>>());
    if (poly.kappa() != kappa) throw ValidationError("polyhedron bounds do not match kappa");
    if (doc.contains("witness")) poly.witness = doc["witness"].get<std::vector<double>>();
    for (const auto& row : doc.at("rows")) {
      HyperplaneInfo info;
      info.weight = row.value("weight", 0.0);
      info.score = row.value("score", 0.0);
      info.train_violation = row.value("train_violation", 0.0);
      poly.append_row(row.at("v").get<std::vector<double>>(), row.at("b").get<double>(), info);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("polyhedron JSON: ") + e.what());
  }
  poly.validate();
  return poly;
}

Polyhedron load_polyhedron(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open polyhedron " + path.string());
  try {
    return read_polyhedron(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace robnet::uncertainty
