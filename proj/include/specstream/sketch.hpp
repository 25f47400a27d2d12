#pragma once

#include <cstdint>
#include <vector>

#include "specstream/linalg.hpp"

namespace specstream {

struct SketchRow {
  std::int64_t source = 0;
  double weight = 1.0;  // 1/sqrt(p), compounded across resampling passes
  Vector row;           // the original, unweighted row
};

/// A reweighted row subset. The Gram matrix sum w^2 r r^T is maintained
/// incrementally as rows are appended.
class Sketch {
 public:
  explicit Sketch(int dim = 0);

  /// Appends a row. Source indices must be strictly increasing.
  void append(std::int64_t source, double weight, Vector row);

  int dim() const { return dim_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  const std::vector<SketchRow>& rows() const { return rows_; }
  const Matrix& gram() const { return gram_; }

  /// m x d matrix of weight * row.
  RowMatrix weighted_rows() const;
  /// Recomputes the Gram from the stored rows.
  Matrix recompute_gram() const;

 private:
  int dim_;
  std::vector<SketchRow> rows_;
  Matrix gram_;
};

}  // namespace specstream
