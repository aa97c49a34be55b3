#include "qg/fourier.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace qg {

namespace {

// The FFTW planner is not thread-safe; executions are.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(SpectralField& a) {
  return reinterpret_cast<fftw_complex*>(a.data());
}

}  // namespace

SpectralTransform::SpectralTransform(GridSpec grid) : grid_(grid) {
  grid_.validate();
  const int n = grid_.nx;
  buf_in_.resize(n, n);
  buf_out_.resize(n, n);
  std::lock_guard<std::mutex> lock(planner_mutex());
  // FFTW_ESTIMATE keeps plan selection deterministic run to run, which the
  // byte-identical-artifact contract depends on.
  plan_fwd_ = fftw_plan_dft_2d(n, n, as_fftw(buf_in_), as_fftw(buf_out_),
                               FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_2d(n, n, as_fftw(buf_in_), as_fftw(buf_out_),
                               FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plan_fwd_ || !plan_bwd_) throw std::runtime_error("fftw plan creation failed");
}

SpectralTransform::~SpectralTransform() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void SpectralTransform::run_fwd(SpectralField& in, SpectralField& out) const {
  fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), as_fftw(in), as_fftw(out));
}

void SpectralTransform::run_bwd(SpectralField& in, SpectralField& out) const {
  fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_), as_fftw(in), as_fftw(out));
}

SpectralField SpectralTransform::to_spectral(const PhysicalField& f) const {
  const int n = grid_.nx;
  if (f.rows() != n || f.cols() != n)
    throw std::invalid_argument("to_spectral: field size mismatch");
  auto& in = buf_in_;
  auto& out = buf_out_;
  in = f.cast<Complex>();
  run_fwd(in, out);
  return out / static_cast<double>(n) / static_cast<double>(n);
}

PhysicalField SpectralTransform::to_physical(const SpectralField& fhat) const {
  const int n = grid_.nx;
  if (fhat.rows() != n || fhat.cols() != n)
    throw std::invalid_argument("to_physical: field size mismatch");
  auto& in = buf_in_;
  auto& out = buf_out_;
  in = fhat;
  run_bwd(in, out);
  return out.real();
}

void SpectralTransform::inverse_pair(const SpectralField& fa, const SpectralField& fb,
                                     PhysicalField& a, PhysicalField& b) const {
  auto& in = buf_in_;
  auto& out = buf_out_;
  in = fa + Complex(0, 1) * fb;
  run_bwd(in, out);
  a = out.real();
  b = out.imag();
}

void SpectralTransform::forward_pair(const PhysicalField& a, const PhysicalField& b,
                                     SpectralField& fa, SpectralField& fb) const {
  const int n = grid_.nx;
  auto& in = buf_in_;
  auto& out = buf_out_;
  in.real() = a;
  in.imag() = b;
  run_fwd(in, out);
  const double scale = 0.5 / (static_cast<double>(n) * n);
  fa.resize(n, n);
  fb.resize(n, n);
  // Hermitian split: F(k) = fa(k) + i fb(k) with fa, fb Hermitian.
  // Evaluating the split at k and -k yields exact conjugates, so the
  // outputs satisfy the symmetry bit-for-bit.
  for (int j = 0; j < n; ++j) {
    const int nj = j == 0 ? 0 : n - j;
    for (int i = 0; i < n; ++i) {
      const int ni = i == 0 ? 0 : n - i;
      const Complex fk = out(i, j);
      const Complex fnk = std::conj(out(ni, nj));
      fa(i, j) = scale * (fk + fnk);
      const Complex diff = fk - fnk;
      fb(i, j) = scale * Complex(diff.imag(), -diff.real());
    }
  }
}

SpectralField to_spectral(const PhysicalField& f) {
  SpectralTransform t(GridSpec{static_cast<int>(f.rows())});
  return t.to_spectral(f);
}

PhysicalField to_physical(const SpectralField& fhat) {
  SpectralTransform t(GridSpec{static_cast<int>(fhat.rows())});
  return t.to_physical(fhat);
}

}  // namespace qg
