#include "volab/features.hpp"

#include <stdexcept>

namespace volab {

ExtractionVectors extraction_vector(const PolySet& s, int var, IKind kind) {
  ExtractionVectors out;
  out.kind = kind;
  out.values.reserve(s.polys.size());
  for (const auto& p : s.polys) {
    std::vector<long long> inner;
    for (const auto& t : p.terms()) {
      int d = t.mono.degree_of(var);
      switch (kind) {
        case IKind::I1:
          inner.push_back(d);
          break;
        case IKind::I2:
          if (d > 0) inner.push_back(t.mono.total_degree());
          break;
        case IKind::I3:
          inner.push_back(d > 0 ? 1 : 0);
          break;
        case IKind::I4:
          inner.push_back(d > 0 ? t.mono.total_degree() : 0);
          break;
      }
    }
    out.values.push_back(std::move(inner));
  }
  return out;
}

namespace {

Rat agg_ints(Agg op, const std::vector<long long>& v) {
  if (v.empty()) return Rat(0);
  long long acc = v[0];
  switch (op) {
    case Agg::max:
      for (long long x : v) acc = std::max(acc, x);
      return Rat(Int(static_cast<long>(acc)));
    case Agg::sum:
      acc = 0;
      for (long long x : v) acc += x;
      return Rat(Int(static_cast<long>(acc)));
    case Agg::avg: {
      acc = 0;
      for (long long x : v) acc += x;
      Rat r(Int(static_cast<long>(acc)), Int(static_cast<long>(v.size())));
      r.canonicalize();
      return r;
    }
  }
  return Rat(0);
}

Rat agg_rats(Agg op, const std::vector<Rat>& v) {
  if (v.empty()) return Rat(0);
  switch (op) {
    case Agg::max: {
      Rat best = v[0];
      for (const Rat& x : v)
        if (x > best) best = x;
      return best;
    }
    case Agg::sum: {
      Rat acc(0);
      for (const Rat& x : v) acc += x;
      return acc;
    }
    case Agg::avg: {
      Rat acc(0);
      for (const Rat& x : v) acc += x;
      Rat r = acc / Rat(Int(static_cast<long>(v.size())));
      r.canonicalize();
      return r;
    }
  }
  return Rat(0);
}

}  // namespace

Rat aggregate_exact(Agg outer, Agg inner, const ExtractionVectors& v) {
  std::vector<Rat> per_poly;
  per_poly.reserve(v.values.size());
  for (const auto& seq : v.values) per_poly.push_back(agg_ints(inner, seq));
  return agg_rats(outer, per_poly);
}

double aggregate(Agg outer, Agg inner, const ExtractionVectors& v) {
  return aggregate_exact(outer, inner, v).get_d();
}

namespace {
constexpr Agg kAggs[3] = {Agg::max, Agg::sum, Agg::avg};
constexpr const char* kAggNames[3] = {"max", "sum", "avg"};

int agg_pos(Agg a) { return a == Agg::max ? 0 : a == Agg::sum ? 1 : 2; }
}  // namespace

int feature_slot(Agg outer, Agg inner, IKind kind) {
  int j = static_cast<int>(kind);
  if (j < 1 || j > 3) throw std::invalid_argument("feature template uses I1..I3");
  if (outer == Agg::max && inner == Agg::max && kind == IKind::I3) return -1;
  int raw = agg_pos(outer) * 9 + agg_pos(inner) * 3 + (j - 1);
  return raw > 2 ? raw - 1 : raw;  // the omitted slot sits at raw position 2
}

std::vector<std::string> feature_slot_names(const std::string& prefix) {
  std::vector<std::string> names;
  names.reserve(kFeatureCount);
  for (Agg outer : kAggs)
    for (Agg inner : kAggs)
      for (int j = 1; j <= 3; ++j) {
        if (outer == Agg::max && inner == Agg::max && j == 3) continue;
        names.push_back(prefix + kAggNames[agg_pos(outer)] + "." + kAggNames[agg_pos(inner)] +
                        ".I" + std::to_string(j));
      }
  names.push_back(prefix + "graphdeg");
  return names;
}

int SparsityGraph::degree(int var) const {
  int d = 0;
  for (int j = 0; j < nvars; ++j)
    if (adj[var][j]) ++d;
  return d;
}

SparsityGraph sparsity_graph(const PolySet& s) {
  SparsityGraph g;
  g.nvars = s.nvars;
  g.adj.assign(s.nvars, std::vector<char>(s.nvars, 0));
  std::vector<int> present;
  for (const auto& p : s.polys) {
    present.clear();
    for (int v = 0; v < s.nvars; ++v)
      if (p.var_degree(v) > 0) present.push_back(v);
    for (std::size_t i = 0; i < present.size(); ++i)
      for (std::size_t j = i + 1; j < present.size(); ++j)
        g.adj[present[i]][present[j]] = g.adj[present[j]][present[i]] = 1;
  }
  return g;
}

Eigen::VectorXd variable_features(const PolySet& s, int var) {
  Eigen::VectorXd f(kFeatureCount);
  ExtractionVectors iv[3] = {
      extraction_vector(s, var, IKind::I1),
      extraction_vector(s, var, IKind::I2),
      extraction_vector(s, var, IKind::I3),
  };
  for (Agg outer : kAggs)
    for (Agg inner : kAggs)
      for (int j = 1; j <= 3; ++j) {
        int slot = feature_slot(outer, inner, static_cast<IKind>(j));
        if (slot < 0) continue;
        f[slot] = aggregate(outer, inner, iv[j - 1]);
      }
  f[kGraphDegreeSlot] = static_cast<double>(sparsity_graph(s).degree(var));
  return f;
}

Eigen::MatrixXd variable_feature_matrix(const PolySet& s) {
  Eigen::MatrixXd blocks(s.nvars, kFeatureCount);
  // The graph and extraction vectors are shared across variables; computing
  // rows through variable_features would rebuild them per variable.
  SparsityGraph g = sparsity_graph(s);
  for (int v = 0; v < s.nvars; ++v) {
    ExtractionVectors iv[3] = {
        extraction_vector(s, v, IKind::I1),
        extraction_vector(s, v, IKind::I2),
        extraction_vector(s, v, IKind::I3),
    };
    for (Agg outer : kAggs)
      for (Agg inner : kAggs)
        for (int j = 1; j <= 3; ++j) {
          int slot = feature_slot(outer, inner, static_cast<IKind>(j));
          if (slot < 0) continue;
          blocks(v, slot) = aggregate(outer, inner, iv[j - 1]);
        }
    blocks(v, kGraphDegreeSlot) = static_cast<double>(g.degree(v));
  }
  return blocks;
}

Eigen::VectorXd assemble_classification(const Eigen::MatrixXd& blocks) {
  Eigen::VectorXd e(blocks.rows() * kFeatureCount);
  for (Eigen::Index v = 0; v < blocks.rows(); ++v)
    e.segment(v * kFeatureCount, kFeatureCount) = blocks.row(v);
  return e;
}

Eigen::VectorXd assemble_ordering(const Eigen::MatrixXd& blocks, const VariableOrdering& o) {
  if (o.nvars() != blocks.rows()) throw std::invalid_argument("ordering size does not match nvars");
  Eigen::VectorXd e(blocks.rows() * kFeatureCount);
  for (Eigen::Index k = 0; k < blocks.rows(); ++k)
    e.segment(k * kFeatureCount, kFeatureCount) = blocks.row(o.order[static_cast<std::size_t>(k)]);
  return e;
}

Eigen::VectorXd classification_embedding(const PolySet& s) {
  return assemble_classification(variable_feature_matrix(s));
}

Eigen::VectorXd ordering_embedding(const PolySet& s, const VariableOrdering& o) {
  if (o.nvars() != s.nvars) throw std::invalid_argument("ordering size does not match nvars");
  return assemble_ordering(variable_feature_matrix(s), o);
}

std::vector<std::string> embedding_slot_names(int nvars, bool by_position) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(nvars) * kFeatureCount);
  for (int b = 0; b < nvars; ++b) {
    std::string prefix = (by_position ? "p" : "v") + std::to_string(b) + ".";
    auto block = feature_slot_names(prefix);
    names.insert(names.end(), block.begin(), block.end());
  }
  return names;
}

Standardizer Standardizer::fit(const Eigen::MatrixXd& rows) {
  if (rows.rows() == 0) throw std::invalid_argument("cannot fit standardizer on an empty matrix");
  const Eigen::Index n = rows.rows(), d = rows.cols();
  Eigen::VectorXd mean(d), std(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    bool constant = true;
    for (Eigen::Index i = 1; i < n && constant; ++i) constant = rows(i, j) == rows(0, j);
    if (constant) {
      mean[j] = rows(0, j);
      std[j] = 0.0;
      continue;
    }
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) sum += rows(i, j);
    double mu = sum / static_cast<double>(n);
    double ssd = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double dlt = rows(i, j) - mu;
      ssd += dlt * dlt;
    }
    mean[j] = mu;
    std[j] = std::sqrt(ssd / static_cast<double>(n));
  }
  return Standardizer(std::move(mean), std::move(std));
}

Eigen::VectorXd Standardizer::apply(const Eigen::VectorXd& row) const {
  Eigen::VectorXd out(row.size());
  for (Eigen::Index j = 0; j < row.size(); ++j)
    out[j] = std_[j] == 0.0 ? 0.0 : (row[j] - mean_[j]) / std_[j];
  return out;
}

Eigen::MatrixXd Standardizer::apply(const Eigen::MatrixXd& rows) const {
  Eigen::MatrixXd out(rows.rows(), rows.cols());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) out.row(i) = apply(Eigen::VectorXd(rows.row(i)));
  return out;
}

}  // namespace volab
