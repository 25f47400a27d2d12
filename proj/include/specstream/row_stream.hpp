#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "specstream/linalg.hpp"

namespace specstream {

enum class Layout { Dense, Sparse };

std::string to_string(Layout layout);
Layout parse_layout(const std::string& text);

/// An n x d matrix delivered one row at a time. Rows are stored densely; the
/// layout only controls serialization (sparse rows are written as idx:val
/// pairs). meta describes the generator that produced the stream.
class RowStream {
 public:
  RowStream() = default;
  RowStream(RowMatrix rows, Layout layout, nlohmann::json meta = nlohmann::json::object());

  Eigen::Index n() const { return rows_.rows(); }
  int d() const { return static_cast<int>(rows_.cols()); }
  bool empty() const { return rows_.rows() == 0; }
  Layout layout() const { return layout_; }
  const nlohmann::json& meta() const { return meta_; }
  const RowMatrix& rows() const { return rows_; }
  Vector row(Eigen::Index i) const { return rows_.row(i).transpose(); }

  /// Rows [0, count).
  RowStream prefix(Eigen::Index count) const;

 private:
  RowMatrix rows_;
  Layout layout_ = Layout::Dense;
  nlohmann::json meta_ = nlohmann::json::object();
};

}  // namespace specstream
