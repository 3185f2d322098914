#pragma once

// Periodized Gaussian on the circle, its derivatives under
// D = (1/sin phi) d/dphi, and the odd-dimensional sphere kernels built
// from them.

#include <heatkit/comtet.hpp>

namespace heatkit::theta {

enum class ThetaEvalMethod {
  auto_select,  // spatial for t <= 1, spectral above
  spatial,      // sum of Gaussians over 2*pi*Z shifts
  spectral      // Fourier series 1/(2 pi) + (1/pi) sum e^{-t n^2} cos(n z)
};

// route for (-D)^N theta; the lattice routes are sharp for small t, the
// spectral series for large t, and auto_route switches at t = 1/2
enum class NegDRoute {
  auto_route,  // pair below t = 1/2, spectral from there on
  pair,        // lattice pairs expanded through the Phi coefficient tables
  fdb,         // main term through the g_j partition sum instead
  spectral     // Chebyshev derivative series; well conditioned for t >= 0.4
};

// W_t(x) = (4 pi t)^{-1/2} exp(-x^2/(4t)) and d^k/dx^k of it, k <= 4
double gauss_kernel(double t, double x);
double gauss_kernel_deriv(int k, double t, double x);

// theta_t(z) = sum_n W_t(z + 2 pi n); 2*pi-periodic, even, mass 1 on a period
double theta(double t, double z, ThetaEvalMethod method = ThetaEvalMethod::auto_select);

// d^k/dz^k theta_t(z), k <= 4
double theta_deriv(int k, double t, double z,
                   ThetaEvalMethod method = ThetaEvalMethod::auto_select);

// eta_s(u) = (1/2)[theta_s(u) - theta_s(u + pi)]
//          = (1/pi) sum_{n >= 1 odd} e^{-s n^2} cos(n u);
// antisymmetric about pi/2
double eta(double s, double u, ThetaEvalMethod method = ThetaEvalMethod::auto_select);
double eta_deriv(int k, double s, double u,
                 ThetaEvalMethod method = ThetaEvalMethod::auto_select);

// (-D)^N theta_t(phi) for phi in [0, pi]; exact evaluation, strictly positive
double neg_d_pow_theta(int n, double t, double phi, const comtet::AposCoeffTable& table,
                       NegDRoute route = NegDRoute::auto_route);

// heat kernel on S^{2N+1}: K_t(phi) = (e^{t N^2}/(2 pi)^N) (-D)^N theta_t(phi);
// N = 0 is theta itself
double sphere_kernel_odd(int n, double t, double phi);

// ultraspherical kernel at the north pole for half-integer parameter
// lambda = N - 1/2: G_t(cos phi, 1) = (sqrt(4 pi)/(2^N Gamma(N + 1/2)))
// e^{t N^2} (-D)^N theta_t(phi)
double g_ultra_half_int(double lambda, double t, double phi);

}  // namespace heatkit::theta
