#pragma once
// K-nearest-neighbours classifier and regressor over standardized
// embeddings, with Euclidean distance.  Neighbour order is (distance,
// training index), so predictions are deterministic; ties at the k-th
// distance resolve by training index.  Zero-distance neighbours override
// inverse-distance weighting (exact matches vote alone).

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "volab/dataset.hpp"
#include "volab/features.hpp"

namespace volab {

enum class Weighting { uniform, inverse_distance };
enum class KnnMode { classify, regress };

struct KnnConfig {
  int k = 5;
  Weighting weighting = Weighting::uniform;
};

struct Neighbor {
  double dist;
  int index;
};

// All rows sorted by (distance, index); callers take a prefix.
std::vector<Neighbor> nearest_neighbors(const Eigen::MatrixXd& x, const Eigen::VectorXd& q);

class KnnModel {
public:
  KnnModel() = default;

  // Fitting standardizes the rows and stores the standardized matrix.
  // k is capped at the number of training rows.
  static KnnModel fit_classifier(KnnConfig cfg, const ClassificationData& data);
  static KnnModel fit_regressor(KnnConfig cfg, const RegressionData& data);

  int predict_class(const Eigen::VectorXd& raw_embedding) const;  // ordering index
  double predict_value(const Eigen::VectorXd& raw_embedding) const;

  KnnMode mode() const { return mode_; }
  const KnnConfig& config() const { return config_; }
  const Standardizer& scaler() const { return scaler_; }
  const Eigen::MatrixXd& train_x() const { return x_; }
  const Eigen::VectorXd& train_y() const { return y_; }

  friend struct ModelIo;

private:
  KnnMode mode_ = KnnMode::classify;
  KnnConfig config_;
  Standardizer scaler_;
  Eigen::MatrixXd x_;  // standardized training rows
  Eigen::VectorXd y_;  // class index (as double) or regression target

  std::vector<Neighbor> neighbors(const Eigen::VectorXd& raw, int& k_eff) const;
};

std::string weighting_name(Weighting w);
Weighting weighting_from_name(const std::string& name);

}  // namespace volab
