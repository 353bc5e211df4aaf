#include "dhc/field.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace dhc {

void Field::validate() const {
  auto strictly_increasing = [](const Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i + 1 < v.size(); ++i) {
      if (!(v[i] < v[i + 1])) {
        return false;
      }
    }
    return v.size() >= 1;
  };
  if (!strictly_increasing(xs) || !strictly_increasing(ts)) {
    throw std::invalid_argument("Field: grids must be strictly increasing");
  }
  if (values.rows() != xs.size() || values.cols() != ts.size()) {
    throw std::invalid_argument("Field: values shape does not match grids");
  }
  if (!values.allFinite()) {
    throw std::invalid_argument("Field: values must be finite");
  }
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17e", v);
  return buf;
}

void write_csv(const Field& field, std::ostream& out) {
  out << "x,t,u\n";
  for (Eigen::Index j = 0; j < field.ts.size(); ++j) {
    for (Eigen::Index i = 0; i < field.xs.size(); ++i) {
      out << format_number(field.xs[i]) << ',' << format_number(field.ts[j])
          << ',' << format_number(field.values(i, j)) << '\n';
    }
  }
}

void write_csv(const Field& field, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  write_csv(field, out);
}

}  // namespace dhc
