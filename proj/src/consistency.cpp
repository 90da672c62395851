#include "trivoc/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>
#include <thread>

#include "trivoc/errors.hpp"

namespace trivoc {

ConsistencyMatrix::ConsistencyMatrix(std::vector<int> labels)
    : dim_(static_cast<int>(labels.size())),
      labels_(std::move(labels)),
      cells_(static_cast<std::size_t>(dim_) * dim_, 0) {
  build_label_index();
}

ConsistencyMatrix::ConsistencyMatrix(std::vector<int> labels,
                                     std::vector<std::uint8_t> cells)
    : dim_(static_cast<int>(labels.size())),
      labels_(std::move(labels)),
      cells_(std::move(cells)) {
  build_label_index();
}

void ConsistencyMatrix::build_label_index() {
  by_label_.resize(dim_);
  std::iota(by_label_.begin(), by_label_.end(), 0);
  std::sort(by_label_.begin(), by_label_.end(),
            [this](int a, int b) { return labels_[a] < labels_[b]; });
}

bool ConsistencyMatrix::contains(int label) const {
  auto it = std::lower_bound(
      by_label_.begin(), by_label_.end(), label,
      [this](int row, int value) { return labels_[row] < value; });
  return it != by_label_.end() && labels_[*it] == label;
}

int ConsistencyMatrix::row_of(int label) const {
  auto it = std::lower_bound(
      by_label_.begin(), by_label_.end(), label,
      [this](int row, int value) { return labels_[row] < value; });
  if (it == by_label_.end() || labels_[*it] != label) {
    throw IndexNotInMatrix("label " + std::to_string(label) +
                           " is not in the consistency matrix");
  }
  return *it;
}

bool equal_length_test(int i, int j, const CorrespondenceSet& corr,
                       double gamma) {
  const double dp = (corr.source_of(i) - corr.source_of(j)).norm();
  const double dq = (corr.target_of(i) - corr.target_of(j)).norm();
  return std::abs(dq - dp) <= 2.0 * gamma;
}

ConsistencyMatrix build_consistency_matrix(const CorrespondenceSet& corr,
                                           double gamma, int threads) {
  const int n = corr.size();
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 1);
  ConsistencyMatrix m(std::move(labels));

  // Each worker owns the rows i = t, t+T, t+2T, ...; for row i it tests the
  // pairs (i, j) with j > i and writes both mirrored entries. The mirrored
  // cell (j, i) is never touched by the worker owning row j, so all writes
  // are to disjoint bytes.
  auto fill_rows = [&](int first, int stride) {
    for (int i = first; i < n; i += stride) {
      for (int j = i + 1; j < n; ++j) {
        if (equal_length_test(i + 1, j + 1, corr, gamma)) {
          m.set(i, j, true);
          m.set(j, i, true);
        }
      }
    }
  };

  if (threads <= 1 || n < 64) {
    fill_rows(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back(fill_rows, t, threads);
    }
    for (auto& th : pool) th.join();
  }
  return m;
}

std::vector<int> vote_counts(const ConsistencyMatrix& m) {
  const int d = m.dimension();
  std::vector<int> votes(d, 0);
  for (int i = 0; i < d; ++i) {
    const std::uint8_t* row = m.row_ptr(i);
    int s = 0;
    for (int j = 0; j < d; ++j) s += row[j];
    votes[i] = s;
  }
  return votes;
}

std::vector<int> sort_correspondences(const ConsistencyMatrix& m) {
  const std::vector<int> votes = vote_counts(m);
  const int d = m.dimension();
  std::vector<int> rows(d);
  std::iota(rows.begin(), rows.end(), 0);
  std::sort(rows.begin(), rows.end(), [&](int a, int b) {
    if (votes[a] != votes[b]) return votes[a] > votes[b];
    return m.label_at(a) < m.label_at(b);
  });
  std::vector<int> order(d);
  for (int i = 0; i < d; ++i) order[i] = m.label_at(rows[i]);
  return order;
}

std::vector<int> find_inlier_candidates(int label,
                                        const ConsistencyMatrix& m) {
  const int row = m.row_of(label);
  const int d = m.dimension();
  const std::uint8_t* cells = m.row_ptr(row);
  std::vector<int> candidates;
  for (int j = 0; j < d; ++j) {
    if (cells[j] && m.label_at(j) != label) candidates.push_back(m.label_at(j));
  }
  std::sort(candidates.begin(), candidates.end());
  return candidates;
}

ConsistencyMatrix get_reduced_consistency(const ConsistencyMatrix& m,
                                          std::span<const int> subset) {
  const int d = static_cast<int>(subset.size());
  std::vector<int> rows(d);
  for (int i = 0; i < d; ++i) rows[i] = m.row_of(subset[i]);

  ConsistencyMatrix out(std::vector<int>(subset.begin(), subset.end()));
  for (int i = 0; i < d; ++i) {
    const std::uint8_t* src_row = m.row_ptr(rows[i]);
    for (int j = 0; j < d; ++j) {
      if (src_row[rows[j]]) out.set(i, j, true);
    }
  }
  return out;
}

void dump(const ConsistencyMatrix& m, std::ostream& os) {
  const int d = m.dimension();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) os << (m.at(i, j) ? '1' : '0');
    os << '\n';
  }
}

}  // namespace trivoc
