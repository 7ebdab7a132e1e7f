#include "tmsc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tmsc {
namespace {

std::vector<int> dense_ids(std::span<const int> labels, int* count) {
  std::vector<int> values(labels.begin(), labels.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<int> ids;
  ids.reserve(labels.size());
  for (int l : labels) {
    ids.push_back(static_cast<int>(std::lower_bound(values.begin(), values.end(), l) - values.begin()));
  }
  *count = static_cast<int>(values.size());
  return ids;
}

void require_same_length(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw ShapeError("label vectors differ in length");
  if (a.empty()) throw std::invalid_argument("label vectors are empty");
}

double choose2(double n) { return 0.5 * n * (n - 1.0); }

}  // namespace

Matrix contingency(std::span<const int> pred, std::span<const int> truth) {
  require_same_length(pred, truth);
  int kp = 0, kt = 0;
  const auto p = dense_ids(pred, &kp);
  const auto t = dense_ids(truth, &kt);
  Matrix c = Matrix::Zero(kp, kt);
  for (std::size_t i = 0; i < p.size(); ++i) c(p[i], t[i]) += 1.0;
  return c;
}

double nmi(std::span<const int> pred, std::span<const int> truth) {
  const Matrix c = contingency(pred, truth);
  const double n = static_cast<double>(pred.size());
  const Eigen::VectorXd a = c.rowwise().sum();
  const Eigen::VectorXd b = c.colwise().sum().transpose();
  double mutual = 0.0;
  for (Index i = 0; i < c.rows(); ++i)
    for (Index j = 0; j < c.cols(); ++j)
      if (c(i, j) > 0) mutual += c(i, j) * std::log(n * c(i, j) / (a(i) * b(j)));
  double ha = 0.0, hb = 0.0;
  for (Index i = 0; i < a.size(); ++i) ha += a(i) * std::log(a(i) / n);
  for (Index j = 0; j < b.size(); ++j) hb += b(j) * std::log(b(j) / n);
  const double denom = std::sqrt(ha * hb);
  if (!(denom > 0.0)) return 0.0;
  return mutual / denom;
}

std::vector<int> hungarian(const Matrix& cost) {
  if (cost.rows() != cost.cols()) throw ShapeError("hungarian: cost matrix must be square");
  const int n = static_cast<int>(cost.rows());
  if (n == 0) return {};
  const double inf = std::numeric_limits<double>::infinity();
  // Shortest augmenting path with row/column potentials; 1-based internally.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int row = 1; row <= n; ++row) {
    match[0] = row;
    int col0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[col0] = 1;
      const int r0 = match[col0];
      double delta = inf;
      int col1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(r0 - 1, j - 1) - u[r0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = col0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          col1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const int col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<int> assignment(n, -1);
  for (int j = 1; j <= n; ++j) assignment[match[j] - 1] = j - 1;
  return assignment;
}

double acc(std::span<const int> pred, std::span<const int> truth) {
  const Matrix c = contingency(pred, truth);
  const Index m = std::max(c.rows(), c.cols());
  Matrix padded = Matrix::Zero(m, m);
  padded.topLeftCorner(c.rows(), c.cols()) = c;
  const auto assignment = hungarian(-padded);
  double matched = 0.0;
  for (Index i = 0; i < m; ++i) matched += padded(i, assignment[static_cast<std::size_t>(i)]);
  return matched / static_cast<double>(pred.size());
}

PairMetrics pair_metrics(std::span<const int> pred, std::span<const int> truth) {
  const Matrix c = contingency(pred, truth);
  const double n = static_cast<double>(pred.size());
  double same_both = 0.0, same_pred = 0.0, same_truth = 0.0;
  for (Index i = 0; i < c.rows(); ++i)
    for (Index j = 0; j < c.cols(); ++j) same_both += choose2(c(i, j));
  for (Index i = 0; i < c.rows(); ++i) same_pred += choose2(c.row(i).sum());
  for (Index j = 0; j < c.cols(); ++j) same_truth += choose2(c.col(j).sum());

  PairMetrics m;
  // With no pairs predicted (or present) together, score 1 only if the other
  // side agrees that there are none.
  m.precision = same_pred > 0 ? same_both / same_pred : (same_truth == 0 ? 1.0 : 0.0);
  m.recall = same_truth > 0 ? same_both / same_truth : (same_pred == 0 ? 1.0 : 0.0);
  m.fscore = (m.precision + m.recall) > 0
                 ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
                 : 0.0;

  const double total = choose2(n);
  const double expected = total > 0 ? same_pred * same_truth / total : 0.0;
  const double max_index = 0.5 * (same_pred + same_truth);
  const double denom = max_index - expected;
  m.ar = denom != 0.0 ? (same_both - expected) / denom : 1.0;
  return m;
}

MetricsReport evaluate(std::span<const int> pred, std::span<const int> truth) {
  const PairMetrics p = pair_metrics(pred, truth);
  return {nmi(pred, truth), acc(pred, truth), p.ar, p.fscore, p.precision, p.recall};
}

}  // namespace tmsc
