#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dispgrid/grid.hpp"

namespace dispgrid {

/// Malformed point-set input; line() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text format:
//   dispgrid v1 d=<d> k=<k> n=<n> repr=grid|real
//   # optional metadata lines
//   <d space-separated coordinates per line>
// Grid coordinates are integer numerators over 2^k; real coordinates are
// decimal literals in [0,1] written in shortest round-trip form. Real sets
// carry k=0.

void write_point_set(std::ostream& out, const PointSet& points, const std::vector<std::string>& metadata = {});
void write_point_set(const std::filesystem::path& path, const PointSet& points,
                     const std::vector<std::string>& metadata = {});

PointSet read_point_set(std::istream& in);
PointSet read_point_set(const std::filesystem::path& path);

}  // namespace dispgrid
