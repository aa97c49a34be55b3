#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace qg {

using Real = double;
using Complex = std::complex<double>;

using Eigen::ArrayXd;
using Eigen::ArrayXXcd;
using Eigen::ArrayXXd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Real-valued field on the equispaced [0,2pi)^2 grid.
/// Entry (i, j) holds f(x_i, y_j); the x index is contiguous in memory,
/// matching the row-major (y, x) layout of the snapshot file format.
using PhysicalField = ArrayXXd;

/// Complex Fourier coefficients, entry (i, j) for wavenumber
/// (kx(i), ky(j)) in standard DFT index order.
using SpectralField = ArrayXXcd;

/// Two-layer stack, index 0 = upper layer, 1 = lower layer.
template <typename T>
using Layers = std::array<T, 2>;

constexpr int kNumLayers = 2;
constexpr double kDomainLength = 2.0 * EIGEN_PI;

}  // namespace qg
