#pragma once

#include <stdexcept>

#include "qg/types.hpp"

namespace qg {

/// Square periodic grid over [0,2pi)^2.
struct GridSpec {
  int nx = 0;

  void validate() const {
    if (nx < 8 || nx % 2 != 0)
      throw std::invalid_argument("GridSpec: nx must be even and >= 8");
  }

  double dx() const { return kDomainLength / nx; }
  double coord(int i) const { return i * dx(); }

  /// Integer wavenumber for DFT index i, in [-nx/2, nx/2-1].
  int wavenumber(int i) const { return i <= nx / 2 - 1 ? i : i - nx; }

  /// DFT index of integer wavenumber k.
  int index_of(int k) const { return k >= 0 ? k : k + nx; }

  /// Largest wavenumber kept by the quadratic-term dealias mask.
  /// Chosen so 3*kc < nx holds strictly; products of retained modes then
  /// alias only onto discarded modes.
  int dealias_cutoff() const { return (nx - 1) / 3; }
};

}  // namespace qg
