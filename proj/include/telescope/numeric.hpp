#pragma once

// Bridges from exact matrices to double precision Eigen matrices.

#include <Eigen/Dense>

#include "telescope/matrix.hpp"

namespace telescope {

Eigen::MatrixXd to_eigen(const RationalMatrix& m);

/// Largest singular value; 0 for an empty matrix.
double spectral_norm(const Eigen::MatrixXd& m);
double spectral_norm(const RationalMatrix& m);

}  // namespace telescope
