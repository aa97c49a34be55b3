#pragma once

#include "qg/grid.hpp"
#include "qg/types.hpp"

namespace qg {

/// Discrete Fourier transform pair on a square periodic grid.
///
/// Normalization: to_spectral applies 1/nx^2, so coefficients are mode
/// amplitudes (a constant field c has all its mass in mode 0 with value c)
/// and the spatial mean of f^2 equals sum_k |f_k|^2 (Parseval).
///
/// Plans are created once per instance; execution is reentrant on the
/// caller's buffers.
class SpectralTransform {
 public:
  explicit SpectralTransform(GridSpec grid);
  ~SpectralTransform();

  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;

  const GridSpec& grid() const { return grid_; }

  SpectralField to_spectral(const PhysicalField& f) const;
  PhysicalField to_physical(const SpectralField& fhat) const;

  /// Inverse transform of two Hermitian spectra through one complex
  /// transform of fa + i*fb; outputs the two real fields.
  void inverse_pair(const SpectralField& fa, const SpectralField& fb,
                    PhysicalField& a, PhysicalField& b) const;

  /// Forward transform of two real fields through one complex transform
  /// of a + i*b; the Hermitian split recovers the two spectra exactly
  /// (the outputs are Hermitian-symmetric to the last bit).
  void forward_pair(const PhysicalField& a, const PhysicalField& b,
                    SpectralField& fa, SpectralField& fb) const;

 private:
  GridSpec grid_;
  void* plan_fwd_ = nullptr;  // fftw_plan, kept opaque here
  void* plan_bwd_ = nullptr;
  mutable SpectralField buf_in_, buf_out_;  // per-instance scratch

  void run_fwd(SpectralField& io_in, SpectralField& out) const;
  void run_bwd(SpectralField& io_in, SpectralField& out) const;
};

/// One-shot conveniences for tests and cold paths.
SpectralField to_spectral(const PhysicalField& f);
PhysicalField to_physical(const SpectralField& fhat);

}  // namespace qg
