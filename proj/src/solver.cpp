#include "qg/solver.hpp"

#include <cmath>

namespace qg {

double default_hyperviscosity(int nx) {
  const double kmax = nx / 3.0;  // post-dealiasing cutoff
  return 10.0 / std::pow(kmax, 8);
}

double default_dt(int nx) {
  if (nx >= 64) return 1e-3;
  if (nx <= 32) return 4e-3;
  return 2e-3;
}

Topography flat_topography() { return Topography{}; }

Topography default_topography(const QGParams& params, std::uint64_t seed) {
  Topography topo;
  topo.amplitude = 0.4 * params.kd2 * params.h2 / params.f0;
  topo.sigma2 = 0.5;
  const double margin = 3.0 * std::sqrt(topo.sigma2);
  Rng rng(seed);
  for (auto& c : topo.centers) {
    c[0] = rng.uniform(margin, kDomainLength - margin);
    c[1] = rng.uniform(margin, kDomainLength - margin);
  }
  return topo;
}

PhysicalField topography_field(const Topography& topo, const GridSpec& grid) {
  grid.validate();
  topo.validate();
  PhysicalField out = PhysicalField::Zero(grid.nx, grid.nx);
  for (int j = 0; j < grid.nx; ++j) {
    const double y = grid.coord(j);
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.coord(i);
      double v = 0.0;
      for (const auto& c : topo.centers) {
        const double dx = x - c[0];
        const double dy = y - c[1];
        v += std::exp(-(dx * dx + dy * dy) / topo.sigma2);
      }
      out(i, j) = topo.amplitude * v;
    }
  }
  return out;
}

double hermitian_error(const SpectralField& f) {
  const int n = static_cast<int>(f.rows());
  double err = 0.0;
  for (int j = 0; j < n; ++j) {
    const int nj = j == 0 ? 0 : n - j;
    for (int i = 0; i < n; ++i) {
      const int ni = i == 0 ? 0 : n - i;
      err = std::max(err, std::abs(f(ni, nj) - std::conj(f(i, j))));
    }
  }
  return err;
}

std::pair<Complex, Complex> invert_pv_mode(int kx, int ky, Complex rhs1, Complex rhs2,
                                           const QGParams& params) {
  const double ksq = double(kx) * kx + double(ky) * ky;
  if (ksq == 0.0)
    throw std::domain_error("invert_pv_mode: PV inversion is singular at k = 0");
  const double a = -(ksq + params.kd2 / 2);
  const double b = params.kd2 / 2;
  const double det = ksq * (ksq + params.kd2);
  return {(a * rhs1 - b * rhs2) / det, (a * rhs2 - b * rhs1) / det};
}

QGSolver::QGSolver(GridSpec grid, QGParams params, Topography topo)
    : grid_(grid), params_(params), topo_(topo), transform_(grid) {
  params_.validate();
  const int n = grid_.nx;
  const int kc = grid_.dealias_cutoff();

  ksq_.resize(n, n);
  k8_.resize(n, n);
  mask_.resize(n, n);
  ikx_.resize(n, n);
  iky_.resize(n, n);
  inv_aa_.resize(n, n);
  inv_ab_.resize(n, n);
  for (auto* f : {&lin_psi_[0], &lin_psi_[1]}) f->resize(n, n);
  visc_.resize(n, n);
  ksq_c_.resize(n, n);
  mask_c_.resize(n, n);

  for (int j = 0; j < n; ++j) {
    const int ky = grid_.wavenumber(j);
    for (int i = 0; i < n; ++i) {
      const int kx = grid_.wavenumber(i);
      const double ksq = double(kx) * kx + double(ky) * ky;
      ksq_(i, j) = ksq;
      k8_(i, j) = ksq * ksq * ksq * ksq;
      mask_(i, j) = (std::abs(kx) <= kc && std::abs(ky) <= kc) ? 1.0 : 0.0;
      ikx_(i, j) = Complex(0, kx);
      iky_(i, j) = Complex(0, ky);
      if (ksq > 0) {
        const double a = -(ksq + params_.kd2 / 2);
        const double b = params_.kd2 / 2;
        const double det = ksq * (ksq + params_.kd2);
        inv_aa_(i, j) = a / det;
        inv_ab_(i, j) = -b / det;
      } else {
        inv_aa_(i, j) = 0.0;  // gauge: mean stream function pinned to zero
        inv_ab_(i, j) = 0.0;
      }
      for (int layer = 0; layer < kNumLayers; ++layer) {
        const double Uj = params_.layer_u(layer);
        Complex lin = -(params_.beta + params_.kd2 * Uj) * Complex(0, kx);
        if (layer == 1) lin += params_.r * ksq;
        lin_psi_[layer](i, j) = lin;
      }
      visc_(i, j) = params_.nu * k8_(i, j);
      ksq_c_(i, j) = ksq;
      mask_c_(i, j) = mask_(i, j);
    }
  }

  // Static topographic PV, dealiased and gauged like the state it joins.
  topo_pv_hat_ = transform_.to_spectral(topography_field(topo_, grid_));
  topo_pv_hat_ *= (params_.f0 / params_.h2) * mask_c_;
  topo_pv_hat_(0, 0) = 0.0;

  for (int layer = 0; layer < kNumLayers; ++layer) {
    psi_[layer].resize(n, n);
    sa_[layer].resize(n, n);
    sb_[layer].resize(n, n);
    advh_[layer].resize(n, n);
    adv_[layer].resize(n, n);
    k1_[layer].resize(n, n);
    k2_[layer].resize(n, n);
    k3_[layer].resize(n, n);
    k4_[layer].resize(n, n);
    stage_.qhat[layer].resize(n, n);
  }
  u_.resize(n, n);
  v_.resize(n, n);
  qx_.resize(n, n);
  qy_.resize(n, n);
}

void QGSolver::apply_mask(Layers<SpectralField>& qhat) const {
  for (int layer = 0; layer < kNumLayers; ++layer) {
    qhat[layer] *= mask_c_;
    qhat[layer](0, 0) = 0.0;
  }
}

Layers<SpectralField> QGSolver::invert_pv(const SpectralState& state) const {
  Layers<SpectralField> psi;
  const SpectralField rhs2 = state.qhat[1] - topo_pv_hat_;
  psi[0] = inv_aa_ * state.qhat[0] + inv_ab_ * rhs2;
  psi[1] = inv_ab_ * state.qhat[0] + inv_aa_ * rhs2;
  return psi;
}

Layers<SpectralField> QGSolver::forward_pv(const Layers<SpectralField>& psi_hat) const {
  Layers<SpectralField> qhat;
  const double half_kd2 = params_.kd2 / 2;
  qhat[0] = -ksq_c_ * psi_hat[0] + half_kd2 * (psi_hat[1] - psi_hat[0]);
  qhat[1] = -ksq_c_ * psi_hat[1] + half_kd2 * (psi_hat[0] - psi_hat[1]) + topo_pv_hat_;
  return qhat;
}

double QGSolver::tendency(const Layers<SpectralField>& qhat, double t,
                          Layers<SpectralField>& dqhat, const ForcingFn& forcing) const {
  sb_[1] = qhat[1] - topo_pv_hat_;
  psi_[0] = inv_aa_ * qhat[0] + inv_ab_ * sb_[1];
  psi_[1] = inv_ab_ * qhat[0] + inv_aa_ * sb_[1];

  double maxvel = 0.0;
  for (int layer = 0; layer < kNumLayers; ++layer) {
    const double Uj = params_.layer_u(layer);
    sa_[0] = -iky_ * psi_[layer];
    sa_[1] = ikx_ * psi_[layer];
    transform_.inverse_pair(sa_[0], sa_[1], u_, v_);
    sa_[0] = ikx_ * qhat[layer];
    sa_[1] = iky_ * qhat[layer];
    transform_.inverse_pair(sa_[0], sa_[1], qx_, qy_);
    u_ += Uj;
    adv_[layer] = u_ * qx_ + v_ * qy_;
    maxvel = std::max({maxvel, u_.abs().maxCoeff(), v_.abs().maxCoeff()});
  }
  if (!std::isfinite(maxvel)) throw BlowupError("non-finite velocity field", t);

  transform_.forward_pair(adv_[0], adv_[1], advh_[0], advh_[1]);
  for (int layer = 0; layer < kNumLayers; ++layer) {
    dqhat[layer] = -mask_c_ * advh_[layer] + lin_psi_[layer] * psi_[layer] -
                   visc_ * qhat[layer];
    dqhat[layer](0, 0) = 0.0;
  }
  if (forcing) forcing(t, qhat, dqhat);
  return maxvel;
}

void QGSolver::rk4_step(SpectralState& state, double dt, const ForcingFn& forcing) const {
  if (!(dt > 0)) throw std::invalid_argument("rk4_step: dt must be positive");
  const double t = state.time;

  const double maxvel = tendency(state.qhat, t, k1_, forcing);
  const double cfl = dt * maxvel * grid_.nx / kDomainLength;
  if (cfl > kCflLimit * (1 + 1e-12))
    throw CflError("CFL guard: dt*max|u|*nx/(2pi) = " + std::to_string(cfl) +
                   " exceeds " + std::to_string(kCflLimit) + " at t=" + std::to_string(t));

  for (int l = 0; l < kNumLayers; ++l) stage_.qhat[l] = state.qhat[l] + (0.5 * dt) * k1_[l];
  tendency(stage_.qhat, t + 0.5 * dt, k2_, forcing);
  for (int l = 0; l < kNumLayers; ++l) stage_.qhat[l] = state.qhat[l] + (0.5 * dt) * k2_[l];
  tendency(stage_.qhat, t + 0.5 * dt, k3_, forcing);
  for (int l = 0; l < kNumLayers; ++l) stage_.qhat[l] = state.qhat[l] + dt * k3_[l];
  tendency(stage_.qhat, t + dt, k4_, forcing);

  for (int l = 0; l < kNumLayers; ++l) {
    state.qhat[l] += (dt / 6.0) * (k1_[l] + 2.0 * k2_[l] + 2.0 * k3_[l] + k4_[l]);
    if (!state.qhat[l].real().allFinite() || !state.qhat[l].imag().allFinite())
      throw BlowupError("state blow-up", t + dt);
  }
  state.time = t + dt;

#ifndef NDEBUG
  for (int l = 0; l < kNumLayers; ++l) {
    const double scale = state.qhat[l].abs().maxCoeff();
    assert(hermitian_error(state.qhat[l]) <= 1e-12 * std::max(scale, 1.0));
  }
#endif
}

IntegrationOutcome QGSolver::integrate(SpectralState& state, double horizon, double dt,
                                       double sample_every, const SnapshotSink& sink,
                                       const ForcingFn& forcing) const {
  if (horizon < 0) throw std::invalid_argument("integrate: horizon must be >= 0");
  const long long m = std::llround(sample_every / dt);
  if (m < 1 || std::abs(m * dt - sample_every) > 1e-9 * std::max(1.0, sample_every))
    throw std::invalid_argument("integrate: sample_every must be an integer multiple of dt");
  const long long n_samples = static_cast<long long>(horizon / sample_every + 1e-9) + 1;

  const double t0 = state.time;
  IntegrationOutcome outcome;
  if (sink) sink(0, t0, psi_physical(state));
  for (long long s = 1; s < n_samples; ++s) {
    try {
      for (long long i = 0; i < m; ++i) rk4_step(state, dt, forcing);
    } catch (const BlowupError& e) {
      outcome = {false, e.time(), e.what()};
      return outcome;
    } catch (const CflError& e) {
      outcome = {false, state.time, e.what()};
      return outcome;
    }
    state.time = t0 + s * sample_every;  // keep sample times exact
    if (sink) sink(static_cast<int>(s), state.time, psi_physical(state));
  }
  return outcome;
}

std::pair<double, double> QGSolver::energy_enstrophy(const SpectralState& state) const {
  const Layers<SpectralField> psi = invert_pv(state);
  const double energy =
      0.5 * ((ksq_ * (psi[0].abs2() + psi[1].abs2())).sum() +
             (params_.kd2 / 2) * (psi[0] - psi[1]).abs2().sum());
  const double enstrophy =
      0.5 * (state.qhat[0].abs2().sum() + (state.qhat[1] - topo_pv_hat_).abs2().sum());
  return {energy, enstrophy};
}

Layers<PhysicalField> QGSolver::psi_physical(const SpectralState& state) const {
  const Layers<SpectralField> psi = invert_pv(state);
  Layers<PhysicalField> out;
  transform_.inverse_pair(psi[0], psi[1], out[0], out[1]);
  return out;
}

SpectralState QGSolver::noise_state(std::uint64_t seed, double amplitude, int kmax) const {
  const int n = grid_.nx;
  Rng rng(seed);
  SpectralState state;
  for (int layer = 0; layer < kNumLayers; ++layer) {
    SpectralField& q = state.qhat[layer];
    q = SpectralField::Zero(n, n);
    for (int j = 0; j < n; ++j) {
      const int ky = grid_.wavenumber(j);
      for (int i = 0; i < n; ++i) {
        const int kx = grid_.wavenumber(i);
        const double ksq = double(kx) * kx + double(ky) * ky;
        const bool half_plane = ky > 0 || (ky == 0 && kx > 0);
        if (ksq == 0 || ksq > double(kmax) * kmax || !half_plane) continue;
        const Complex c(amplitude * rng.normal(), amplitude * rng.normal());
        q(i, j) = c;
        q(grid_.index_of(-kx), grid_.index_of(-ky)) = std::conj(c);
      }
    }
  }
  state.qhat[1] += topo_pv_hat_;
  apply_mask(state.qhat);
  return state;
}

}  // namespace qg
