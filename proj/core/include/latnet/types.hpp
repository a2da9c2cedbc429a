#pragma once

#include <Eigen/Dense>

#include <complex>
#include <compare>
#include <vector>

namespace latnet {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Original (1-based) identifier of a node in the unpartitioned network.
struct NodeId {
    int value = 0;

    friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

/// Largest absolute entry; 0 for an empty matrix.
inline double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Induced 2-norm (largest singular value); 0 for an empty matrix.
double spectral_norm(const Matrix& m);

}  // namespace latnet
