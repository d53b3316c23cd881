#pragma once

#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "cdg/lifting.hpp"

namespace cdg {

/// Matrix Market coordinate format (real general, 1-based). Values are
/// written with 17 significant digits so binary64 entries round-trip
/// exactly through the decimal text.
void write_matrix_market(const std::string& path, const SpMat& m);
SpMat read_matrix_market(const std::string& path);

/// Dense column vector in array format.
void write_matrix_market_vector(const std::string& path, const Eigen::VectorXd& v);
Eigen::VectorXd read_matrix_market_vector(const std::string& path);

}  // namespace cdg
