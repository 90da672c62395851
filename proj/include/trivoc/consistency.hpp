#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "trivoc/types.hpp"

namespace trivoc {

// Symmetric boolean adjacency over a set of correspondences, with a false
// diagonal. Rows/columns are addressed by local index; `index_labels` maps
// each local index to the global (1-based) correspondence label it stands
// for, so reduced matrices keep operating in the global label space.
class ConsistencyMatrix {
 public:
  ConsistencyMatrix() = default;

  // All-false matrix over the given labels.
  explicit ConsistencyMatrix(std::vector<int> labels);

  // Matrix with explicit row-major entries (size = dimension^2).
  ConsistencyMatrix(std::vector<int> labels, std::vector<std::uint8_t> cells);

  int dimension() const { return dim_; }
  const std::vector<int>& index_labels() const { return labels_; }
  int label_at(int row) const { return labels_[row]; }

  bool at(int row, int col) const { return cells_[row * dim_ + col] != 0; }
  void set(int row, int col, bool value) {
    cells_[row * dim_ + col] = value ? 1 : 0;
  }

  const std::uint8_t* row_ptr(int row) const { return &cells_[row * dim_]; }
  const std::vector<std::uint8_t>& cells() const { return cells_; }

  bool contains(int label) const;
  // Local row index of a global label; throws IndexNotInMatrix.
  int row_of(int label) const;

 private:
  void build_label_index();

  int dim_ = 0;
  std::vector<int> labels_;
  std::vector<std::uint8_t> cells_;
  std::vector<int> by_label_;  // local indices sorted by label
};

// Pairwise equal-length test between correspondences i and j (1-based):
// | ||q_i - q_j|| - ||p_i - p_j|| | <= 2*gamma, inclusive. Any two inliers
// of the same rigid transform must pass it.
bool equal_length_test(int i, int j, const CorrespondenceSet& corr,
                       double gamma);

// N x N consistency matrix with labels 1..N; every unordered pair is tested
// once and mirrored. `threads` > 1 partitions the pair space across workers.
ConsistencyMatrix build_consistency_matrix(const CorrespondenceSet& corr,
                                           double gamma, int threads = 1);

// Row sums (votes), one per local row.
std::vector<int> vote_counts(const ConsistencyMatrix& m);

// Global labels ordered by descending vote; ties broken by ascending label
// so the ordering is a deterministic total order.
std::vector<int> sort_correspondences(const ConsistencyMatrix& m);

// Labels of all correspondences consistent with `label`, ascending.
std::vector<int> find_inlier_candidates(int label, const ConsistencyMatrix& m);

// Submatrix over `subset` (global labels, in the given order).
ConsistencyMatrix get_reduced_consistency(const ConsistencyMatrix& m,
                                          std::span<const int> subset);

// Debug text grid of 0/1 rows (diagnostics only).
void dump(const ConsistencyMatrix& m, std::ostream& os);

}  // namespace trivoc
