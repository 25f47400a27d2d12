#include "specstream/row_stream.hpp"

#include "specstream/error.hpp"

namespace specstream {

std::string to_string(Layout layout) { return layout == Layout::Dense ? "dense" : "sparse"; }

Layout parse_layout(const std::string& text) {
  if (text == "dense") return Layout::Dense;
  if (text == "sparse") return Layout::Sparse;
  throw Error(ErrorCode::ParseError, "unknown layout '" + text + "'");
}

RowStream::RowStream(RowMatrix rows, Layout layout, nlohmann::json meta)
    : rows_(std::move(rows)), layout_(layout), meta_(std::move(meta)) {}

RowStream RowStream::prefix(Eigen::Index count) const {
  if (count < 0 || count > n()) throw Error(ErrorCode::InvalidArgument, "prefix length");
  return RowStream(rows_.topRows(count), layout_, meta_);
}

}  // namespace specstream
