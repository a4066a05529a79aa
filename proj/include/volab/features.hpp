#pragma once
// Per-variable feature extraction for polynomial sets.
//
// For a variable x and polynomial p, four degree profiles over the
// monomials of p (in canonical order):
//   I1  degree of x in each monomial
//   I2  total degree of each monomial containing x (only those)
//   I3  1 per monomial containing x, else 0
//   I4  total degree of monomials containing x, 0 for the others
// A profile of a set is the list of per-polynomial profiles.  Features
// combine an inner aggregate (over a polynomial's monomials) with an
// outer aggregate (over the set), each of max / sum / avg.  The feature
// vector of a variable holds the 3x3x3 template over I1..I3 minus the
// max.max.I3 slot (identically 1 whenever the variable occurs), plus the
// variable's degree in the sparsity graph: 27 entries.
//
// Averages are accumulated as exact rationals and converted to double
// once, so features are independent of monomial and polynomial order.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "volab/polyset.hpp"

namespace volab {

enum class Agg { max, sum, avg };

enum class IKind { I1 = 1, I2 = 2, I3 = 3, I4 = 4 };

struct ExtractionVectors {
  IKind kind;
  // One inner sequence per polynomial, in set order.  For I2 the inner
  // length is the number of monomials containing the variable (possibly 0).
  std::vector<std::vector<long long>> values;
};

ExtractionVectors extraction_vector(const PolySet& s, int var, IKind kind);

// Empty inner sequences (and an empty set) aggregate to 0.
Rat aggregate_exact(Agg outer, Agg inner, const ExtractionVectors& v);
double aggregate(Agg outer, Agg inner, const ExtractionVectors& v);

inline constexpr int kFeatureCount = 27;
inline constexpr int kGraphDegreeSlot = kFeatureCount - 1;

// Slot of (outer, inner, kind) in the feature vector: outer major, inner
// next, kind innermost; -1 for the omitted max.max.I3 slot.
int feature_slot(Agg outer, Agg inner, IKind kind);
// "max.max.I1", ..., "avg.avg.I3", "graphdeg"; optionally prefixed.
std::vector<std::string> feature_slot_names(const std::string& prefix = "");

// Undirected co-occurrence graph: variables are adjacent when they appear
// in the same polynomial.  No self-loops.
struct SparsityGraph {
  int nvars = 0;
  std::vector<std::vector<char>> adj;

  bool connected(int a, int b) const { return adj[a][b] != 0; }
  int degree(int var) const;
};

SparsityGraph sparsity_graph(const PolySet& s);

Eigen::VectorXd variable_features(const PolySet& s, int var);

// One row per variable; row v is variable_features(s, v).
Eigen::MatrixXd variable_feature_matrix(const PolySet& s);

// Per-variable blocks in ascending variable order; length nvars * 27.
Eigen::VectorXd classification_embedding(const PolySet& s);
// Blocks in projection order: the first-projected variable's block first.
Eigen::VectorXd ordering_embedding(const PolySet& s, const VariableOrdering& o);

// Assemble embeddings from a precomputed block matrix.
Eigen::VectorXd assemble_classification(const Eigen::MatrixXd& blocks);
Eigen::VectorXd assemble_ordering(const Eigen::MatrixXd& blocks, const VariableOrdering& o);

// Column names for the two block layouts ("v0.max.max.I1", "p1.graphdeg", ...).
std::vector<std::string> embedding_slot_names(int nvars, bool by_position);

// Column-wise standardisation fitted on a training matrix (population
// standard deviation).  Zero-variance columns transform to 0.
class Standardizer {
public:
  Standardizer() = default;
  Standardizer(Eigen::VectorXd mean, Eigen::VectorXd std)
      : mean_(std::move(mean)), std_(std::move(std)) {}

  static Standardizer fit(const Eigen::MatrixXd& rows);

  Eigen::VectorXd apply(const Eigen::VectorXd& row) const;
  Eigen::MatrixXd apply(const Eigen::MatrixXd& rows) const;

  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::VectorXd& stddev() const { return std_; }

private:
  Eigen::VectorXd mean_, std_;
};

}  // namespace volab
