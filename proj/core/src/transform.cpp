#include "g2flow/transform.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace g2flow {

namespace {
// FFTW's planner is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct TransformPlan::Impl {
  fftw_complex* buf = nullptr;
  fftw_plan forward = nullptr;   // physical -> spectral sign convention (e^{-ikx})
  fftw_plan backward = nullptr;  // spectral -> physical (e^{+ikx})
  std::size_t size = 0;

  ~Impl() {
    std::scoped_lock lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    if (buf) fftw_free(buf);
  }
};

TransformPlan::TransformPlan(GridPtr grid) : grid_(std::move(grid)), impl_(new Impl) {
  const auto& g = *grid_;
  impl_->size = g.mode_count();
  impl_->buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * impl_->size));
  if (!impl_->buf) throw std::bad_alloc();

  std::scoped_lock lock(planner_mutex());
  // FFTW_ESTIMATE keeps plan selection deterministic run to run.
  if (g.dim == 2) {
    impl_->forward =
        fftw_plan_dft_2d(g.n, g.n, impl_->buf, impl_->buf, FFTW_FORWARD, FFTW_ESTIMATE);
    impl_->backward =
        fftw_plan_dft_2d(g.n, g.n, impl_->buf, impl_->buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  } else {
    impl_->forward =
        fftw_plan_dft_3d(g.n, g.n, g.n, impl_->buf, impl_->buf, FFTW_FORWARD, FFTW_ESTIMATE);
    impl_->backward =
        fftw_plan_dft_3d(g.n, g.n, g.n, impl_->buf, impl_->buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (!impl_->forward || !impl_->backward) throw std::runtime_error("TransformPlan: fftw plan failed");
}

TransformPlan::~TransformPlan() = default;

void TransformPlan::to_physical(std::span<const Complex> spec, std::span<double> phys) {
  const std::size_t nm = impl_->size;
  if (spec.size() != nm || phys.size() != nm) {
    throw std::invalid_argument("to_physical: size mismatch with grid");
  }
  std::memcpy(impl_->buf, spec.data(), nm * sizeof(fftw_complex));
  fftw_execute(impl_->backward);
  for (std::size_t i = 0; i < nm; ++i) phys[i] = impl_->buf[i][0];
}

void TransformPlan::to_physical_complex(std::span<const Complex> spec, std::span<Complex> phys) {
  const std::size_t nm = impl_->size;
  if (spec.size() != nm || phys.size() != nm) {
    throw std::invalid_argument("to_physical_complex: size mismatch with grid");
  }
  std::memcpy(impl_->buf, spec.data(), nm * sizeof(fftw_complex));
  fftw_execute(impl_->backward);
  // std::complex<double> is guaranteed layout-compatible with double[2]
  std::memcpy(static_cast<void*>(phys.data()), impl_->buf, nm * sizeof(fftw_complex));
}

void TransformPlan::to_spectral(std::span<const double> phys, std::span<Complex> spec) {
  const std::size_t nm = impl_->size;
  if (spec.size() != nm || phys.size() != nm) {
    throw std::invalid_argument("to_spectral: size mismatch with grid");
  }
  for (std::size_t i = 0; i < nm; ++i) {
    impl_->buf[i][0] = phys[i];
    impl_->buf[i][1] = 0.0;
  }
  fftw_execute(impl_->forward);
  const double inv_n = 1.0 / static_cast<double>(nm);
  for (std::size_t i = 0; i < nm; ++i) {
    spec[i] = Complex{impl_->buf[i][0] * inv_n, impl_->buf[i][1] * inv_n};
  }
}

PhysicalField to_physical(const Field& f, TransformPlan& plan) {
  if (f.grid_ptr().get() != plan.grid_ptr().get()) {
    throw std::invalid_argument("to_physical: field and plan grids differ");
  }
  PhysicalField out;
  out.grid = f.grid_ptr();
  out.ncomp = f.ncomp();
  out.values.resize(static_cast<std::size_t>(f.ncomp()) * f.grid().mode_count());
  for (int c = 0; c < f.ncomp(); ++c) {
    plan.to_physical(f.component(c), {out.data(c), f.grid().mode_count()});
  }
  return out;
}

Field to_spectral(const PhysicalField& f, TransformPlan& plan) {
  if (f.grid.get() != plan.grid_ptr().get()) {
    throw std::invalid_argument("to_spectral: field and plan grids differ");
  }
  Field out(f.grid, f.ncomp);
  for (int c = 0; c < f.ncomp; ++c) {
    plan.to_spectral({f.data(c), f.grid->mode_count()}, out.component(c));
  }
  return out;
}

}  // namespace g2flow
