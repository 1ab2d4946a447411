#include "dispgrid/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace dispgrid {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

void write_point_set(std::ostream& out, const PointSet& points, const std::vector<std::string>& metadata) {
  const int k = points.grid_params() ? points.grid_params()->k() : 0;
  out << "dispgrid v1 d=" << points.dim() << " k=" << k << " n=" << points.size()
      << " repr=" << repr_name(points.repr()) << '\n';
  for (const auto& line : metadata) out << "# " << line << '\n';
  char buffer[64];
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t l = 0; l < points.dim(); ++l) {
      if (l > 0) out << ' ';
      if (points.repr() == Repr::grid) {
        out << points.grid_point(i)[l];
      } else {
        auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, points.real_point(i)[l]);
        out.write(buffer, end - buffer);
      }
    }
    out << '\n';
  }
}

void write_point_set(const std::filesystem::path& path, const PointSet& points,
                     const std::vector<std::string>& metadata) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_point_set(out, points, metadata);
  if (!out) throw IoError("failed writing " + path.string());
}

namespace {

template <class T>
bool parse_number(std::string_view text, T& value) {
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && end == text.data() + text.size();
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

// "key=value" with an unsigned integer value.
std::uint64_t header_field(const std::string& token, const std::string& key) {
  std::uint64_t value = 0;
  if (token.rfind(key + "=", 0) != 0 || !parse_number(std::string_view(token).substr(key.size() + 1), value)) {
    throw ParseError(1, "expected " + key + "=<integer> in header, got '" + token + "'");
  }
  return value;
}

}  // namespace

PointSet read_point_set(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  const auto head = tokens(line);
  if (head.size() != 6 || head[0] != "dispgrid" || head[1] != "v1") {
    throw ParseError(1, "header must read 'dispgrid v1 d=<d> k=<k> n=<n> repr=grid|real'");
  }
  const auto dim = header_field(head[2], "d");
  const auto k = header_field(head[3], "k");
  const auto n = header_field(head[4], "n");
  if (dim == 0) throw ParseError(1, "dimension must be at least 1");
  const bool grid = head[5] == "repr=grid";
  if (!grid && head[5] != "repr=real") throw ParseError(1, "repr must be grid or real, got '" + head[5] + "'");

  std::optional<PointSet> points;
  try {
    points = grid ? PointSet::grid(GridParams(static_cast<int>(std::min<std::uint64_t>(k, 1000))), dim)
                  : PointSet::real(dim);
  } catch (const std::exception& e) {
    throw ParseError(1, e.what());
  }

  std::vector<std::int64_t> numerators(dim);
  std::vector<double> reals(dim);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = tokens(line);
    if (fields.size() != dim) {
      throw ParseError(line_no, "expected " + std::to_string(dim) + " coordinates, got " +
                                    std::to_string(fields.size()));
    }
    for (std::size_t l = 0; l < dim; ++l) {
      const bool ok = grid ? parse_number(fields[l], numerators[l]) : parse_number(fields[l], reals[l]);
      if (!ok) throw ParseError(line_no, "malformed coordinate '" + fields[l] + "'");
    }
    try {
      if (grid) {
        points->add(std::span<const std::int64_t>(numerators));
      } else {
        points->add(std::span<const double>(reals));
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (points->size() != n) {
    throw ParseError(line_no, "header declares n=" + std::to_string(n) + " but file has " +
                                  std::to_string(points->size()) + " points");
  }
  return std::move(*points);
}

PointSet read_point_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_point_set(in);
}

}  // namespace dispgrid
