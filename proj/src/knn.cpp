#include "volab/knn.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace volab {

std::vector<Neighbor> nearest_neighbors(const Eigen::MatrixXd& x, const Eigen::VectorXd& q) {
  std::vector<Neighbor> out;
  out.reserve(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    double d2 = 0.0;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      double diff = x(i, j) - q[j];
      d2 += diff * diff;
    }
    out.push_back({std::sqrt(d2), static_cast<int>(i)});
  }
  std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
    return a.dist != b.dist ? a.dist < b.dist : a.index < b.index;
  });
  return out;
}

KnnModel KnnModel::fit_classifier(KnnConfig cfg, const ClassificationData& data) {
  if (data.x.rows() == 0) throw DataError("cannot fit on an empty training set");
  if (cfg.k < 1) throw std::invalid_argument("k must be positive");
  KnnModel m;
  m.mode_ = KnnMode::classify;
  m.config_ = cfg;
  m.config_.k = std::min<int>(cfg.k, static_cast<int>(data.x.rows()));
  m.scaler_ = Standardizer::fit(data.x);
  m.x_ = m.scaler_.apply(data.x);
  m.y_.resize(static_cast<Eigen::Index>(data.labels.size()));
  for (std::size_t i = 0; i < data.labels.size(); ++i)
    m.y_[static_cast<Eigen::Index>(i)] = static_cast<double>(data.labels[i]);
  return m;
}

KnnModel KnnModel::fit_regressor(KnnConfig cfg, const RegressionData& data) {
  if (data.x.rows() == 0) throw DataError("cannot fit on an empty training set");
  if (cfg.k < 1) throw std::invalid_argument("k must be positive");
  KnnModel m;
  m.mode_ = KnnMode::regress;
  m.config_ = cfg;
  m.config_.k = std::min<int>(cfg.k, static_cast<int>(data.x.rows()));
  m.scaler_ = Standardizer::fit(data.x);
  m.x_ = m.scaler_.apply(data.x);
  m.y_ = data.y;
  return m;
}

std::vector<Neighbor> KnnModel::neighbors(const Eigen::VectorXd& raw, int& k_eff) const {
  if (raw.size() != x_.cols()) throw DataError("embedding size does not match the model");
  std::vector<Neighbor> all = nearest_neighbors(x_, scaler_.apply(raw));
  k_eff = std::min<int>(config_.k, static_cast<int>(all.size()));
  all.resize(static_cast<std::size_t>(k_eff));
  return all;
}

int KnnModel::predict_class(const Eigen::VectorXd& raw) const {
  if (mode_ != KnnMode::classify) throw std::logic_error("model is not a classifier");
  int k_eff = 0;
  std::vector<Neighbor> nn = neighbors(raw, k_eff);
  bool exact = config_.weighting == Weighting::inverse_distance && nn.front().dist == 0.0;
  std::map<int, double> votes;
  for (const Neighbor& n : nn) {
    if (exact && n.dist != 0.0) continue;
    double w = 1.0;
    if (config_.weighting == Weighting::inverse_distance && !exact) w = 1.0 / n.dist;
    votes[static_cast<int>(y_[n.index])] += w;
  }
  int best = -1;
  double best_w = -1.0;
  for (const auto& [label, w] : votes) {
    if (w > best_w) {  // map iterates labels ascending, so ties keep the smallest
      best = label;
      best_w = w;
    }
  }
  return best;
}

double KnnModel::predict_value(const Eigen::VectorXd& raw) const {
  if (mode_ != KnnMode::regress) throw std::logic_error("model is not a regressor");
  int k_eff = 0;
  std::vector<Neighbor> nn = neighbors(raw, k_eff);
  bool exact = config_.weighting == Weighting::inverse_distance && nn.front().dist == 0.0;
  double wsum = 0.0, acc = 0.0;
  for (const Neighbor& n : nn) {
    if (exact && n.dist != 0.0) continue;
    double w = 1.0;
    if (config_.weighting == Weighting::inverse_distance && !exact) w = 1.0 / n.dist;
    acc += w * y_[n.index];
    wsum += w;
  }
  return acc / wsum;
}

std::string weighting_name(Weighting w) {
  return w == Weighting::uniform ? "uniform" : "inverse-distance";
}

Weighting weighting_from_name(const std::string& name) {
  if (name == "uniform") return Weighting::uniform;
  if (name == "inverse-distance" || name == "inverse") return Weighting::inverse_distance;
  throw std::invalid_argument("unknown weighting: " + name);
}

}  // namespace volab
