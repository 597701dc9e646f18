#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace g2flow {

/// Fourier lattice for the periodic box [0,2pi)^dim, dim in {2,3}.
///
/// Modes are stored in FFT index order per axis: index i maps to the integer
/// wavenumber k = i for i <= n/2 and k = i - n otherwise, so the k-axis reads
/// {0, 1, ..., n/2, -n/2+1, ..., -1}. Flat storage is row-major with axis 0
/// slowest.
struct SpectralGrid {
  int dim = 0;
  int n = 0;
  double volume = 0.0;  // (2pi)^dim

  std::vector<int> axis_wavenumbers;   // size n, k per FFT index
  std::vector<std::uint8_t> dealias_mask;  // size n^dim, 1 = retained
  std::vector<double> k_squared;       // size n^dim, |k|^2 per mode

  std::size_t mode_count() const { return k_squared.size(); }

  /// Largest |k_i| kept by the 2/3-rule mask (3|k| < n).
  int max_retained_wavenumber() const { return (3 * (n / 3) == n) ? n / 3 - 1 : n / 3; }

  /// Flat index of the mode with per-axis FFT indices (i0,i1[,i2]).
  std::size_t flat_index(int i0, int i1, int i2 = 0) const {
    if (dim == 2) return static_cast<std::size_t>(i0) * n + i1;
    return (static_cast<std::size_t>(i0) * n + i1) * n + i2;
  }

  /// Flat index of the Hermitian partner mode -k (per-axis index negation mod n).
  std::size_t conjugate_index(std::size_t flat) const;

  /// Integer wavevector of a flat mode index; out[2] = 0 in 2D.
  void wavevector(std::size_t flat, int out[3]) const;
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

/// Builds the wavenumber lattice and 2/3-rule dealias mask.
/// Rejects dim outside {2,3} and odd or undersized n (n must be even, >= 8).
GridPtr make_grid(int dim, int n);

/// Visits every mode with its integer wavevector (k2 = 0 in 2D).
template <typename F>
inline void for_each_mode(const SpectralGrid& g, F&& f) {
  const int n = g.n;
  const int* kk = g.axis_wavenumbers.data();
  std::size_t idx = 0;
  if (g.dim == 2) {
    for (int i0 = 0; i0 < n; ++i0)
      for (int i1 = 0; i1 < n; ++i1, ++idx) f(idx, kk[i0], kk[i1], 0);
  } else {
    for (int i0 = 0; i0 < n; ++i0)
      for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2, ++idx) f(idx, kk[i0], kk[i1], kk[i2]);
  }
}

}  // namespace g2flow
