#pragma once

#include <memory>
#include <span>
#include <vector>

#include "g2flow/field.hpp"

namespace g2flow {

/// Collocation values on the n^dim grid x_j = 2pi j / n, comp-major layout.
struct PhysicalField {
  GridPtr grid;
  int ncomp = 0;
  std::vector<double> values;

  double* data(int c) { return values.data() + static_cast<std::size_t>(c) * grid->mode_count(); }
  const double* data(int c) const {
    return values.data() + static_cast<std::size_t>(c) * grid->mode_count();
  }
};

/// FFT plan pair for one grid, with internal scratch. One plan per worker;
/// not safe to share mutably across threads (plan creation itself is
/// serialized internally).
class TransformPlan {
 public:
  explicit TransformPlan(GridPtr grid);
  ~TransformPlan();

  TransformPlan(const TransformPlan&) = delete;
  TransformPlan& operator=(const TransformPlan&) = delete;

  const GridPtr& grid_ptr() const { return grid_; }

  /// Spectral -> collocation values, real part. u(x_j) = sum_k u_k e^{ik.x_j}.
  void to_physical(std::span<const Complex> spec, std::span<double> phys);

  /// Spectral -> collocation values, keeping the (roundoff-level) imaginary part.
  void to_physical_complex(std::span<const Complex> spec, std::span<Complex> phys);

  /// Collocation values -> spectral coefficients (forward DFT with 1/N).
  void to_spectral(std::span<const double> phys, std::span<Complex> spec);

 private:
  struct Impl;
  GridPtr grid_;
  std::unique_ptr<Impl> impl_;
};

enum class TransformDirection { to_physical, to_spectral };

/// Whole-field transforms; sizes must match the plan's grid.
PhysicalField to_physical(const Field& f, TransformPlan& plan);
Field to_spectral(const PhysicalField& f, TransformPlan& plan);

}  // namespace g2flow
