#include "specstream/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "specstream/error.hpp"

namespace specstream::io {
namespace {

struct Header {
  std::string magic;
  Eigen::Index rows = 0;
  int d = 0;
  Layout layout = Layout::Dense;
};

Header read_header(std::istream& in, const std::string& expected_magic) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "missing header");
  std::istringstream hs(line);
  Header h;
  std::string version;
  std::string layout;
  if (!(hs >> h.magic >> version)) throw Error(ErrorCode::ParseError, "malformed header");
  if (h.magic != expected_magic) {
    throw Error(ErrorCode::ParseError, "expected '" + expected_magic + "' file, got '" + h.magic + "'");
  }
  if (version != kFormatVersion) {
    throw Error(ErrorCode::UnsupportedVersion, "unsupported format version '" + version + "'");
  }
  if (!(hs >> h.rows >> h.d >> layout) || h.rows < 0 || h.d < 1) {
    throw Error(ErrorCode::ParseError, "malformed header");
  }
  h.layout = parse_layout(layout);
  return h;
}

nlohmann::json read_meta(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# meta ", 0) != 0) {
    throw Error(ErrorCode::ParseError, "missing '# meta' line");
  }
  try {
    return nlohmann::json::parse(line.substr(7));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad meta json: ") + e.what());
  }
}

double parse_double(const std::string& token) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0') {
    throw Error(ErrorCode::ParseError, "bad number '" + token + "'");
  }
  return v;
}

void write_payload(std::ostream& out, const Eigen::Ref<const Vector>& row, Layout layout) {
  if (layout == Layout::Dense) {
    for (Eigen::Index j = 0; j < row.size(); ++j) {
      if (j) out << ' ';
      out << format_double(row(j));
    }
    return;
  }
  std::vector<Eigen::Index> nz;
  for (Eigen::Index j = 0; j < row.size(); ++j) {
    if (row(j) != 0.0) nz.push_back(j);
  }
  out << nz.size();
  for (auto j : nz) out << ' ' << j << ':' << format_double(row(j));
}

Vector read_payload(std::istringstream& ls, int d, Layout layout) {
  Vector row = Vector::Zero(d);
  std::string tok;
  if (layout == Layout::Dense) {
    for (int j = 0; j < d; ++j) {
      if (!(ls >> tok)) throw Error(ErrorCode::DimensionMismatch, "dense row too short");
      row(j) = parse_double(tok);
    }
  } else {
    long long k = 0;
    if (!(ls >> k) || k < 0 || k > d) throw Error(ErrorCode::ParseError, "bad sparse count");
    long long last = -1;
    for (long long t = 0; t < k; ++t) {
      if (!(ls >> tok)) throw Error(ErrorCode::ParseError, "sparse row too short");
      const auto colon = tok.find(':');
      if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "bad idx:val '" + tok + "'");
      const long long idx = std::stoll(tok.substr(0, colon));
      if (idx <= last) throw Error(ErrorCode::ParseError, "sparse indices must increase");
      if (idx >= d) throw Error(ErrorCode::DimensionMismatch, "sparse index out of range");
      last = idx;
      row(idx) = parse_double(tok.substr(colon + 1));
    }
  }
  if (ls >> tok) throw Error(ErrorCode::DimensionMismatch, "row has trailing values");
  return row;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_stream(std::ostream& out, const RowStream& stream) {
  out << "rowstream " << kFormatVersion << ' ' << stream.n() << ' ' << stream.d() << ' '
      << to_string(stream.layout()) << '\n';
  out << "# meta " << stream.meta().dump() << '\n';
  for (Eigen::Index i = 0; i < stream.n(); ++i) {
    write_payload(out, stream.rows().row(i).transpose(), stream.layout());
    out << '\n';
  }
}

RowStream read_stream(std::istream& in) {
  const Header h = read_header(in, "rowstream");
  nlohmann::json meta = read_meta(in);
  RowMatrix rows(h.rows, h.d);
  std::string line;
  for (Eigen::Index i = 0; i < h.rows; ++i) {
    if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "stream truncated");
    std::istringstream ls(line);
    rows.row(i) = read_payload(ls, h.d, h.layout).transpose();
  }
  return RowStream(std::move(rows), h.layout, std::move(meta));
}

void write_sketch(std::ostream& out, const Sketch& sketch, Layout layout,
                  const nlohmann::json& meta) {
  out << "sketch " << kFormatVersion << ' ' << sketch.size() << ' ' << sketch.dim() << ' '
      << to_string(layout) << '\n';
  out << "# meta " << meta.dump() << '\n';
  for (const auto& r : sketch.rows()) {
    out << r.source << ' ' << format_double(r.weight) << ' ';
    write_payload(out, r.row, layout);
    out << '\n';
  }
}

SketchFile read_sketch(std::istream& in) {
  const Header h = read_header(in, "sketch");
  SketchFile out{Sketch(h.d), h.layout, read_meta(in)};
  std::string line;
  for (Eigen::Index i = 0; i < h.rows; ++i) {
    if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "sketch truncated");
    std::istringstream ls(line);
    long long src = 0;
    std::string wtok;
    if (!(ls >> src >> wtok)) throw Error(ErrorCode::ParseError, "bad sketch row prefix");
    out.sketch.append(src, parse_double(wtok), read_payload(ls, h.d, h.layout));
  }
  return out;
}

RowStream load_stream(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path.string());
  return read_stream(in);
}

SketchFile load_sketch(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path.string());
  return read_sketch(in);
}

void atomic_write(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw Error(ErrorCode::InvalidArgument, "write failed for " + path.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace specstream::io
