#pragma once

#include <memory>

#include "mrsc/signal.hpp"

namespace mrsc {

enum class MapKind { identity, convolution };
enum class Boundary { periodic, zero_pad };
enum class ConvPath { fft, direct };

/// Forward/adjoint pair for the imaging operator: either the identity or
/// convolution by a point-spread function anchored at index 0 (roll the PSF
/// beforehand for a centered kernel). The PSF is used as given, unnormalized.
///
/// Periodic boundary wraps indices; zero_pad treats the signal as zero
/// outside its domain and truncates the output to the image grid. Both the
/// FFT and direct-summation realizations are exposed and agree to 1e-10
/// relative error; apply/apply_adjoint use the FFT path for convolutions.
class LinearMap {
 public:
  static LinearMap identity(const Shape& shape);
  static LinearMap convolution(const Signal& psf, const Shape& image_shape,
                               Boundary boundary);

  LinearMap(const LinearMap&) = delete;
  LinearMap& operator=(const LinearMap&) = delete;
  LinearMap(LinearMap&&) noexcept;
  LinearMap& operator=(LinearMap&&) noexcept;
  ~LinearMap();

  Signal apply(const Signal& u, ConvPath path = ConvPath::fft) const;
  Signal apply_adjoint(const Signal& v, ConvPath path = ConvPath::fft) const;

  MapKind kind() const noexcept { return kind_; }
  Boundary boundary() const noexcept { return boundary_; }
  const Shape& domain_shape() const noexcept { return domain_shape_; }
  const Shape& codomain_shape() const noexcept { return codomain_shape_; }
  const Signal& psf() const;

 private:
  LinearMap() = default;

  struct FftWorkspace;

  MapKind kind_ = MapKind::identity;
  Boundary boundary_ = Boundary::periodic;
  Shape domain_shape_;
  Shape codomain_shape_;
  std::unique_ptr<Signal> psf_;
  std::unique_ptr<FftWorkspace> fft_;

  Signal convolve_direct(const Signal& u, bool adjoint) const;
  Signal convolve_fft(const Signal& u, bool adjoint) const;
};

// Free-function spellings used throughout the solvers.
inline Signal apply(const LinearMap& map, const Signal& u) { return map.apply(u); }
inline Signal apply_adjoint(const LinearMap& map, const Signal& v) {
  return map.apply_adjoint(v);
}

}  // namespace mrsc
