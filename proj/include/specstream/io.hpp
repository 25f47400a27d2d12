#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "specstream/row_stream.hpp"
#include "specstream/sketch.hpp"

// Line-oriented text formats.
//
//   rowstream v1 <n> <d> <dense|sparse>
//   # meta <json>
//   <n rows>   dense: d values; sparse: "k idx:val ..." with 0-based idx
//
// Sketch files use the header "sketch v1 <m> <d> <layout>" and prefix every
// row with "<src> <weight>". Floats are written with 17 significant digits.
namespace specstream::io {

inline constexpr const char* kFormatVersion = "v1";

std::string format_double(double value);

void write_stream(std::ostream& out, const RowStream& stream);
RowStream read_stream(std::istream& in);

void write_sketch(std::ostream& out, const Sketch& sketch, Layout layout,
                  const nlohmann::json& meta = nlohmann::json::object());

struct SketchFile {
  Sketch sketch;
  Layout layout = Layout::Dense;
  nlohmann::json meta;
};
SketchFile read_sketch(std::istream& in);

RowStream load_stream(const std::filesystem::path& path);
SketchFile load_sketch(const std::filesystem::path& path);

/// Writes through a temporary file and renames it into place, so a failed
/// write never leaves a partial file behind.
void atomic_write(const std::filesystem::path& path, const std::string& contents);

}  // namespace specstream::io
