#pragma once

#include <functional>

#include <Eigen/Dense>

namespace cartan {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Smooth map from base points (coordinates in R^d) to vectors.
using VectorField = std::function<Vector(const Vector&)>;

}  // namespace cartan
