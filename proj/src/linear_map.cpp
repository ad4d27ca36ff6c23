#include "mrsc/linear_map.hpp"

#include <fftw3.h>

#include <complex>
#include <cstring>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace mrsc {

namespace {

// The FFTW planner is not thread-safe; plan execution on caller-owned
// buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct LinearMap::FftWorkspace {
  Shape padded;                 // transform dims
  std::size_t real_count = 0;   // product of padded dims
  std::size_t cplx_count = 0;   // product with last dim -> n/2+1
  std::vector<std::complex<double>> psf_spectrum;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  double* real_buf = nullptr;           // planning-time buffers, reused at
  fftw_complex* cplx_buf = nullptr;     // execution time under the plan lock

  ~FftWorkspace() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    if (real_buf) fftw_free(real_buf);
    if (cplx_buf) fftw_free(cplx_buf);
  }
};

LinearMap::~LinearMap() = default;
LinearMap::LinearMap(LinearMap&&) noexcept = default;
LinearMap& LinearMap::operator=(LinearMap&&) noexcept = default;

const Signal& LinearMap::psf() const {
  if (!psf_) throw std::logic_error("LinearMap: identity map has no PSF");
  return *psf_;
}

LinearMap LinearMap::identity(const Shape& shape) {
  LinearMap map;
  map.kind_ = MapKind::identity;
  map.domain_shape_ = shape;
  map.codomain_shape_ = shape;
  return map;
}

LinearMap LinearMap::convolution(const Signal& psf, const Shape& image_shape,
                                 Boundary boundary) {
  if (psf.ndim() != image_shape.size()) {
    throw std::invalid_argument("convolution: PSF dimensionality mismatch");
  }
  for (std::size_t d = 0; d < image_shape.size(); ++d) {
    if (psf.shape()[d] > image_shape[d]) {
      throw std::invalid_argument("convolution: PSF larger than image");
    }
  }
  LinearMap map;
  map.kind_ = MapKind::convolution;
  map.boundary_ = boundary;
  map.domain_shape_ = image_shape;
  map.codomain_shape_ = image_shape;
  map.psf_ = std::make_unique<Signal>(psf);

  auto ws = std::make_unique<FftWorkspace>();
  ws->padded = image_shape;
  if (boundary == Boundary::zero_pad) {
    for (std::size_t d = 0; d < image_shape.size(); ++d) {
      ws->padded[d] = image_shape[d] + psf.shape()[d] - 1;
    }
  }
  ws->real_count = shape_size(ws->padded);
  ws->cplx_count = ws->real_count / ws->padded.back() * (ws->padded.back() / 2 + 1);

  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    ws->real_buf = fftw_alloc_real(ws->real_count);
    ws->cplx_buf = fftw_alloc_complex(ws->cplx_count);
    std::vector<int> dims(ws->padded.begin(), ws->padded.end());
    ws->forward = fftw_plan_dft_r2c(static_cast<int>(dims.size()), dims.data(),
                                    ws->real_buf, ws->cplx_buf, FFTW_ESTIMATE);
    ws->backward = fftw_plan_dft_c2r(static_cast<int>(dims.size()), dims.data(),
                                     ws->cplx_buf, ws->real_buf, FFTW_ESTIMATE);
    if (!ws->forward || !ws->backward) {
      throw std::runtime_error("convolution: FFT planning failed");
    }
  }

  // PSF spectrum at the padded size, computed once.
  std::memset(ws->real_buf, 0, ws->real_count * sizeof(double));
  if (psf.ndim() == 1) {
    for (std::size_t i = 0; i < psf.size(); ++i) ws->real_buf[i] = psf[i];
  } else {
    for (std::size_t r = 0; r < psf.height(); ++r) {
      for (std::size_t c = 0; c < psf.width(); ++c) {
        ws->real_buf[r * ws->padded[1] + c] = psf.at2(r, c);
      }
    }
  }
  fftw_execute(ws->forward);
  ws->psf_spectrum.resize(ws->cplx_count);
  for (std::size_t i = 0; i < ws->cplx_count; ++i) {
    ws->psf_spectrum[i] = {ws->cplx_buf[i][0], ws->cplx_buf[i][1]};
  }

  map.fft_ = std::move(ws);
  return map;
}

Signal LinearMap::apply(const Signal& u, ConvPath path) const {
  if (u.shape() != domain_shape_) {
    throw std::invalid_argument("apply: signal shape does not match domain");
  }
  if (kind_ == MapKind::identity) return u;
  return path == ConvPath::fft ? convolve_fft(u, /*adjoint=*/false)
                               : convolve_direct(u, /*adjoint=*/false);
}

Signal LinearMap::apply_adjoint(const Signal& v, ConvPath path) const {
  if (v.shape() != codomain_shape_) {
    throw std::invalid_argument("apply_adjoint: signal shape does not match codomain");
  }
  if (kind_ == MapKind::identity) return v;
  return path == ConvPath::fft ? convolve_fft(v, /*adjoint=*/true)
                               : convolve_direct(v, /*adjoint=*/true);
}

Signal LinearMap::convolve_direct(const Signal& u, bool adjoint) const {
  const Signal& k = *psf_;
  std::vector<double> out(u.size(), 0.0);
  if (u.is_1d()) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
    const std::ptrdiff_t p = static_cast<std::ptrdiff_t>(k.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::ptrdiff_t t = 0; t < p; ++t) {
        // forward: out_i = sum_t k_t u_{i-t};  adjoint: out_i = sum_t k_t v_{i+t}
        std::ptrdiff_t j = adjoint ? i + t : i - t;
        if (boundary_ == Boundary::periodic) {
          j = ((j % n) + n) % n;
        } else if (j < 0 || j >= n) {
          continue;
        }
        acc += k[static_cast<std::size_t>(t)] * u[static_cast<std::size_t>(j)];
      }
      out[static_cast<std::size_t>(i)] = acc;
    }
  } else {
    const std::ptrdiff_t h = static_cast<std::ptrdiff_t>(u.height());
    const std::ptrdiff_t w = static_cast<std::ptrdiff_t>(u.width());
    const std::ptrdiff_t ph = static_cast<std::ptrdiff_t>(k.height());
    const std::ptrdiff_t pw = static_cast<std::ptrdiff_t>(k.width());
    for (std::ptrdiff_t r = 0; r < h; ++r) {
      for (std::ptrdiff_t c = 0; c < w; ++c) {
        double acc = 0.0;
        for (std::ptrdiff_t tr = 0; tr < ph; ++tr) {
          for (std::ptrdiff_t tc = 0; tc < pw; ++tc) {
            std::ptrdiff_t rr = adjoint ? r + tr : r - tr;
            std::ptrdiff_t cc = adjoint ? c + tc : c - tc;
            if (boundary_ == Boundary::periodic) {
              rr = ((rr % h) + h) % h;
              cc = ((cc % w) + w) % w;
            } else if (rr < 0 || rr >= h || cc < 0 || cc >= w) {
              continue;
            }
            acc += k.at2(static_cast<std::size_t>(tr), static_cast<std::size_t>(tc)) *
                   u.at2(static_cast<std::size_t>(rr), static_cast<std::size_t>(cc));
          }
        }
        out[static_cast<std::size_t>(r * w + c)] = acc;
      }
    }
  }
  return Signal(std::move(out), u.shape());
}

Signal LinearMap::convolve_fft(const Signal& u, bool adjoint) const {
  FftWorkspace& ws = *fft_;
  // One map may be used from several threads; the planning-time buffers are
  // shared state, so serialize executions per map.
  std::lock_guard<std::mutex> lock(planner_mutex());

  std::memset(ws.real_buf, 0, ws.real_count * sizeof(double));
  if (u.is_1d()) {
    for (std::size_t i = 0; i < u.size(); ++i) ws.real_buf[i] = u[i];
  } else {
    for (std::size_t r = 0; r < u.height(); ++r) {
      for (std::size_t c = 0; c < u.width(); ++c) {
        ws.real_buf[r * ws.padded[1] + c] = u.at2(r, c);
      }
    }
  }
  fftw_execute(ws.forward);
  for (std::size_t i = 0; i < ws.cplx_count; ++i) {
    std::complex<double> x{ws.cplx_buf[i][0], ws.cplx_buf[i][1]};
    const std::complex<double> s =
        adjoint ? std::conj(ws.psf_spectrum[i]) : ws.psf_spectrum[i];
    x *= s;
    ws.cplx_buf[i][0] = x.real();
    ws.cplx_buf[i][1] = x.imag();
  }
  fftw_execute(ws.backward);

  const double inv_n = 1.0 / static_cast<double>(ws.real_count);
  std::vector<double> out(u.size());
  if (u.is_1d()) {
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = ws.real_buf[i] * inv_n;
  } else {
    for (std::size_t r = 0; r < u.height(); ++r) {
      for (std::size_t c = 0; c < u.width(); ++c) {
        out[r * u.width() + c] = ws.real_buf[r * ws.padded[1] + c] * inv_n;
      }
    }
  }
  return Signal(std::move(out), u.shape());
}

}  // namespace mrsc
