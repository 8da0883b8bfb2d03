#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nyprox {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IndexList = std::vector<Index>;

/// What the entries of a proximity matrix mean. The numeric values double as
/// the on-disk kind flag of the binary formats.
enum class ProximityKind : std::uint8_t {
  Similarity = 0,
  SquaredDissimilarity = 1,
};

const char* to_string(ProximityKind kind);

/// Bad input data: malformed files, non-finite entries, violated matrix invariants.
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operation applied to a matrix of the wrong kind (e.g. double centering a similarity).
class KindError : public DataError {
public:
  using DataError::DataError;
};

/// Caller violated an operation's preconditions (bad sizes, missing model parts, ...).
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Generator or pipeline configuration that cannot be satisfied.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Relative tolerances shared by the pipelines.
struct Tolerances {
  /// Eigenvalues with |l| <= pinv * max|l| are treated as zero when pseudo-inverting.
  double pinv = 1e-12;
  /// Eigenvalues of a Nystrom spectrum with |l| <= rank * max|l| are dropped.
  double rank = 1e-7;
};

}  // namespace nyprox
