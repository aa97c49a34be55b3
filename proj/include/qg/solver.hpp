#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "qg/errors.hpp"
#include "qg/fourier.hpp"
#include "qg/grid.hpp"
#include "qg/rng.hpp"
#include "qg/types.hpp"

namespace qg {

/// Nondimensional two-layer QG parameters. The imposed zonal mean flow is
/// +U in the upper layer and -U in the lower layer.
struct QGParams {
  double r = 0.1;    // bottom drag
  double beta = 2.0; // beta-plane parameter
  double kd2 = 4.0;  // squared deformation frequency
  double nu = 0.0;   // hyperviscosity, acts through grad^8
  double U = 0.2;    // zonal mean-flow magnitude
  double f0 = 1.0;   // inertial frequency
  double h2 = 1.0;   // lower-layer thickness

  void validate() const {
    if (r < 0 || nu < 0 || kd2 < 0 || h2 <= 0)
      throw std::invalid_argument("QGParams: need r,nu,kd2 >= 0 and h2 > 0");
  }

  double layer_u(int layer) const { return layer == 0 ? U : -U; }
};

/// Damps the smallest retained scale at O(10) per time unit while leaving
/// energetic scales untouched.
double default_hyperviscosity(int nx);

/// Conservative step sizes; the runtime CFL guard still applies.
double default_dt(int nx);

/// Sum of seven equal-variance Gaussian bumps. Centers are kept well away
/// from the domain boundary so the non-wrapped evaluation stays compatible
/// with periodicity.
struct Topography {
  double amplitude = 0.0;
  double sigma2 = 0.5;
  std::array<std::array<double, 2>, 7> centers{};

  void validate() const {
    if (sigma2 <= 0) throw std::invalid_argument("Topography: sigma2 must be > 0");
  }
};

Topography flat_topography();
Topography default_topography(const QGParams& params, std::uint64_t seed);

/// Direct (non-wrapped) evaluation of the bump profile on the grid.
PhysicalField topography_field(const Topography& topo, const GridSpec& grid);

/// Spectral potential vorticity of both layers plus simulation time.
/// The lower layer (index 1) includes the static topographic PV
/// contribution. Mean modes are pinned to zero (stream-function gauge).
struct SpectralState {
  Layers<SpectralField> qhat;
  double time = 0.0;
};

/// Single-mode PV inversion; throws std::domain_error at k = 0, where the
/// system is singular (handled by the gauge in the full-field path).
/// rhs2 is the lower-layer PV with the topographic contribution removed.
std::pair<Complex, Complex> invert_pv_mode(int kx, int ky, Complex rhs1, Complex rhs2,
                                           const QGParams& params);

/// Max |f(-k) - conj(f(k))| over all modes; zero for a real field's spectrum.
double hermitian_error(const SpectralField& f);

/// Outcome record for an integration that may stop early on blow-up or a
/// CFL refusal; snapshots produced before the stop are kept.
struct IntegrationOutcome {
  bool completed = true;
  double error_time = 0.0;
  std::string error;
};

/// Snapshot sink: called with the sample index, time, and physical stream
/// functions of both layers.
using SnapshotSink =
    std::function<void(int index, double t, const Layers<PhysicalField>& psi)>;

/// Additional spectral forcing accumulated into the tendency at each
/// Runge-Kutta stage (used for nudging).
using ForcingFn = std::function<void(double t, const Layers<SpectralField>& qhat,
                                     Layers<SpectralField>& dqhat)>;

constexpr double kCflLimit = 0.5;

/// Pseudo-spectral two-layer QG solver on a square periodic grid.
/// Owns the transform plans and all scratch buffers; one instance drives
/// one simulation at a time.
class QGSolver {
 public:
  QGSolver(GridSpec grid, QGParams params, Topography topo);

  const GridSpec& grid() const { return grid_; }
  const QGParams& params() const { return params_; }
  const SpectralTransform& transform() const { return transform_; }
  const SpectralField& topo_pv_hat() const { return topo_pv_hat_; }
  const ArrayXXd& dealias_mask() const { return mask_; }

  /// Per-mode 2x2 inversion of the PV relation; mean mode gauged to zero.
  Layers<SpectralField> invert_pv(const SpectralState& state) const;

  /// Forward PV map including the topographic contribution in layer 1.
  Layers<SpectralField> forward_pv(const Layers<SpectralField>& psi_hat) const;

  /// Full spectral tendency dq/dt. Returns the maximum advecting speed
  /// encountered (for the CFL guard). Throws BlowupError on non-finite
  /// intermediates.
  double tendency(const Layers<SpectralField>& qhat, double t,
                  Layers<SpectralField>& dqhat,
                  const ForcingFn& forcing = nullptr) const;

  /// Classical four-stage Runge-Kutta update; refuses steps violating
  /// dt * max|u| * nx / (2 pi) <= 0.5.
  void rk4_step(SpectralState& state, double dt,
                const ForcingFn& forcing = nullptr) const;

  /// Steps the state over [t0, t0 + horizon], delivering physical stream
  /// function snapshots every sample_every time units (the initial state
  /// included). sample_every must be an integer multiple of dt.
  IntegrationOutcome integrate(SpectralState& state, double horizon, double dt,
                               double sample_every, const SnapshotSink& sink,
                               const ForcingFn& forcing = nullptr) const;

  /// (total energy, total enstrophy); the topographic PV is removed from
  /// the lower layer before the enstrophy sum.
  std::pair<double, double> energy_enstrophy(const SpectralState& state) const;

  Layers<PhysicalField> psi_physical(const SpectralState& state) const;

  /// Small-amplitude Hermitian noise in modes |k| <= kmax, topographic PV
  /// added to the lower layer; the spin-up starting point.
  SpectralState noise_state(std::uint64_t seed, double amplitude = 0.01,
                            int kmax = 4) const;

  /// Zeroes all modes outside the dealias mask and the mean mode.
  void apply_mask(Layers<SpectralField>& qhat) const;

 private:
  GridSpec grid_;
  QGParams params_;
  Topography topo_;
  SpectralTransform transform_;

  // Precomputed per-mode coefficient tables. The complex copies keep the
  // hot-path expressions single-pass.
  ArrayXXd ksq_, k8_, mask_;
  ArrayXXcd ikx_, iky_, ksq_c_, mask_c_, visc_;
  ArrayXXcd inv_aa_, inv_ab_;  // PV-inversion coefficients
  Layers<ArrayXXcd> lin_psi_;  // per-layer linear stream-function terms
  SpectralField topo_pv_hat_;

  // Scratch (one simulation per instance at a time).
  mutable Layers<SpectralField> psi_, sa_, sb_, advh_;
  mutable PhysicalField u_, v_, qx_, qy_;
  mutable Layers<PhysicalField> adv_;
  mutable Layers<SpectralField> k1_, k2_, k3_, k4_;
  mutable SpectralState stage_;
};

}  // namespace qg
