#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace eofkit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Ingestion tolerances for density matrices.
inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kTraceTol = 1e-9;
// Eigenvalues in [-kClampTol, 0) are treated as exact zeros.
inline constexpr double kClampTol = 1e-10;
// Eigenvalues above this count toward the rank.
inline constexpr double kRankTol = 1e-10;
inline constexpr double kPureNormTol = 1e-12;

enum class ErrorKind {
  NotHermitian,
  NotPositive,
  TraceNotOne,
  DimensionMismatch,
  NotAState,
  NotNormalized,
  RankMismatch,
  BadShape,
  ConfigError,
  NotAProjector,
  ParamOutOfRange,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Exception carrying a machine-checkable kind; what() starts with the kind name.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Dimensions of the two tensor factors; basis |i1>|i2> has flat index i1*d2 + i2.
struct BipartiteDims {
  int d1 = 1;
  int d2 = 1;

  constexpr int total() const noexcept { return d1 * d2; }
  friend constexpr bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

/// Throws BadShape unless both factors are positive.
void check_dims(const BipartiteDims& dims);

}  // namespace eofkit
