#include <doctest.h>

#include <cmath>

#include "mrsc/linear_map.hpp"
#include "mrsc/rng.hpp"
#include "oracles.hpp"

using namespace mrsc;

TEST_CASE("identity map returns its input") {
  const LinearMap id = LinearMap::identity(Shape{3});
  const Signal u = Signal::from_1d({1, 2, 3});
  const Signal out = id.apply(u);
  for (std::size_t i = 0; i < 3; ++i) CHECK(out[i] == u[i]);
  const LinearMap id2 = LinearMap::identity(Shape{2});
  const Signal v = Signal::from_1d({5, 6});
  const Signal adj = id2.apply_adjoint(v);
  CHECK(adj[0] == 5.0);
  CHECK(adj[1] == 6.0);
  CHECK(id.domain_shape() == id.codomain_shape());
}

TEST_CASE("delta kernel reproduces the input") {
  const Signal psf({1, 0, 0, 0}, Shape{4});
  const LinearMap A = LinearMap::convolution(psf, Shape{4}, Boundary::periodic);
  const Signal u = Signal::from_1d({1, 2, 3, 4});
  const Signal out = A.apply(u);
  for (std::size_t i = 0; i < 4; ++i) CHECK(out[i] == doctest::Approx(u[i]).epsilon(1e-14));
}

TEST_CASE("periodic convolution matches the direct-summation oracle") {
  const Signal psf({0.5, 0.5, 0, 0}, Shape{4});
  const Signal u = Signal::from_1d({1, 0, 0, 0});
  const Signal expected = oracles::direct_convolve(psf, u, Boundary::periodic);
  // Frozen from the oracle: averaging kernel smears the impulse over two taps.
  CHECK(expected[0] == 0.5);
  CHECK(expected[1] == 0.5);
  CHECK(expected[2] == 0.0);
  CHECK(expected[3] == 0.0);
  const LinearMap A = LinearMap::convolution(psf, Shape{4}, Boundary::periodic);
  const Signal out = A.apply(u);
  for (std::size_t i = 0; i < 4; ++i) CHECK(out[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("adjoint of a symmetric psf equals the forward map") {
  const Signal psf({0.5, 0.25, 0, 0, 0, 0, 0, 0.25}, Shape{8});  // even under index negation
  const LinearMap A = LinearMap::convolution(psf, Shape{8}, Boundary::periodic);
  const Signal v = gaussian_noise(Shape{8}, 1.0, RngSeed{11});
  const Signal fwd = A.apply(v);
  const Signal adj = A.apply_adjoint(v);
  for (std::size_t i = 0; i < 8; ++i) CHECK(adj[i] == doctest::Approx(fwd[i]).epsilon(1e-12));
}

TEST_CASE("asymmetric psf adjoint matches the correlation oracle") {
  const Signal psf({0.7, 0.2, 0.1}, Shape{3});
  for (Boundary boundary : {Boundary::periodic, Boundary::zero_pad}) {
    const LinearMap A = LinearMap::convolution(psf, Shape{8}, boundary);
    const Signal v = gaussian_noise(Shape{8}, 1.0, RngSeed{12});
    const Signal expected = oracles::direct_correlate(psf, v, boundary);
    const Signal adj = A.apply_adjoint(v);
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(adj[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("adjoint consistency over 100 random pairs") {
  const Signal psf1({0.5, 0.3, 0.2}, Shape{3});
  const Signal psf2({0.4, 0.3, 0.2, 0.1}, Shape{2, 2});
  std::vector<LinearMap> maps;
  maps.push_back(LinearMap::identity(Shape{12}));
  maps.push_back(LinearMap::convolution(psf1, Shape{12}, Boundary::periodic));
  maps.push_back(LinearMap::convolution(psf1, Shape{12}, Boundary::zero_pad));
  GaussianStream stream(RngSeed{99});
  for (const LinearMap& A : maps) {
    for (int pair = 0; pair < 100; ++pair) {
      Signal u = Signal::zeros(A.domain_shape());
      Signal v = Signal::zeros(A.codomain_shape());
      for (std::size_t i = 0; i < u.size(); ++i) u[i] = stream.next();
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = stream.next();
      const double lhs = dot(A.apply(u), v);
      const double rhs = dot(u, A.apply_adjoint(v));
      CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + norm(u) * norm(v)));
    }
  }
  for (Boundary boundary : {Boundary::periodic, Boundary::zero_pad}) {
    const LinearMap A = LinearMap::convolution(psf2, Shape{6, 5}, boundary);
    for (int pair = 0; pair < 100; ++pair) {
      Signal u = Signal::zeros(A.domain_shape());
      Signal v = Signal::zeros(A.codomain_shape());
      for (std::size_t i = 0; i < u.size(); ++i) u[i] = stream.next();
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = stream.next();
      const double lhs = dot(A.apply(u), v);
      const double rhs = dot(u, A.apply_adjoint(v));
      CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + norm(u) * norm(v)));
    }
  }
}

TEST_CASE("fft and direct paths agree to 1e-10 relative error") {
  GaussianStream stream(RngSeed{21});
  // 1D
  {
    Signal psf = Signal::zeros(Shape{9});
    for (std::size_t i = 0; i < psf.size(); ++i) psf[i] = stream.next();
    for (Boundary boundary : {Boundary::periodic, Boundary::zero_pad}) {
      const LinearMap A = LinearMap::convolution(psf, Shape{50}, boundary);
      Signal u = Signal::zeros(Shape{50});
      for (std::size_t i = 0; i < u.size(); ++i) u[i] = stream.next();
      const Signal fft = A.apply(u, ConvPath::fft);
      const Signal direct = A.apply(u, ConvPath::direct);
      CHECK(norm_diff(fft, direct) <= 1e-10 * (1.0 + norm(direct)));
      const Signal fft_adj = A.apply_adjoint(u, ConvPath::fft);
      const Signal direct_adj = A.apply_adjoint(u, ConvPath::direct);
      CHECK(norm_diff(fft_adj, direct_adj) <= 1e-10 * (1.0 + norm(direct_adj)));
    }
  }
  // 2D up to 64x64
  {
    Signal psf = Signal::zeros(Shape{5, 7});
    for (std::size_t i = 0; i < psf.size(); ++i) psf[i] = stream.next();
    for (Boundary boundary : {Boundary::periodic, Boundary::zero_pad}) {
      const LinearMap A = LinearMap::convolution(psf, Shape{64, 64}, boundary);
      Signal u = Signal::zeros(Shape{64, 64});
      for (std::size_t i = 0; i < u.size(); ++i) u[i] = stream.next();
      const Signal fft = A.apply(u, ConvPath::fft);
      const Signal direct = A.apply(u, ConvPath::direct);
      CHECK(norm_diff(fft, direct) <= 1e-10 * (1.0 + norm(direct)));
    }
  }
}

TEST_CASE("2d convolution agrees with the direct oracle") {
  const Signal psf({0.5, 0.25, 0.15, 0.1}, Shape{2, 2});
  GaussianStream stream(RngSeed{33});
  Signal u = Signal::zeros(Shape{7, 6});
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = stream.next();
  for (Boundary boundary : {Boundary::periodic, Boundary::zero_pad}) {
    const LinearMap A = LinearMap::convolution(psf, Shape{7, 6}, boundary);
    const Signal expected = oracles::direct_convolve(psf, u, boundary);
    const Signal out = A.apply(u);
    CHECK(norm_diff(out, expected) <= 1e-12 * (1.0 + norm(expected)));
  }
}

TEST_CASE("shape mismatches are rejected") {
  const LinearMap id = LinearMap::identity(Shape{3});
  CHECK_THROWS_AS(id.apply(Signal::zeros(Shape{4})), std::invalid_argument);
  CHECK_THROWS_AS(id.apply_adjoint(Signal::zeros(Shape{2, 2})), std::invalid_argument);
  const Signal psf({1.0, 0.5}, Shape{2});
  CHECK_THROWS_AS(LinearMap::convolution(psf, Shape{2, 2}, Boundary::periodic),
                  std::invalid_argument);
  CHECK_THROWS_AS(LinearMap::convolution(Signal::zeros(Shape{5}), Shape{4},
                                         Boundary::periodic),
                  std::invalid_argument);
}

TEST_CASE("applying the same map twice is deterministic") {
  const Signal psf({0.6, 0.4}, Shape{2});
  const LinearMap A = LinearMap::convolution(psf, Shape{16}, Boundary::periodic);
  const Signal u = gaussian_noise(Shape{16}, 1.0, RngSeed{3});
  const Signal a = A.apply(u);
  const Signal b = A.apply(u);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}
