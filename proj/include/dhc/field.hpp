#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <iosfwd>

namespace dhc {

/// Space-time grid of samples: values(i, j) = u(xs[i], ts[j]).
struct Field {
  Eigen::VectorXd xs;
  Eigen::VectorXd ts;
  Eigen::MatrixXd values;

  /// Throws std::invalid_argument unless both grids are strictly increasing,
  /// the matrix shape matches, and every value is finite.
  void validate() const;
};

/// Writes "x,t,u" rows (t-major) in full-precision scientific notation,
/// LF line endings.
void write_csv(const Field& field, std::ostream& out);
void write_csv(const Field& field, const std::filesystem::path& path);

/// Full-precision scientific formatting used by every CSV writer.
std::string format_number(double v);

}  // namespace dhc
