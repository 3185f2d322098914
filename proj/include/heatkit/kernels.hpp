#pragma once
// Heat kernel evaluators: the Jacobi series, the closed trigonometric forms
// for the four parameter pairs (+-1/2, +-1/2), the product-measure reduction
// quadrature, spherical and projective-space kernels, and the large-time
// remainder.

#include <heatkit/special.hpp>
#include <heatkit/theta.hpp>

namespace heatkit::kernels {

struct EvalPolicy {
  double tol = 1e-12;     // relative tail tolerance of series evaluators
  int max_terms = 20000;  // hard cap on series length
  double t_floor = 0.02;  // smallest time the generic series accepts

  void validate() const {
    if (!(tol > 0.0)) throw std::domain_error("EvalPolicy: tol must be positive");
    if (max_terms < 10) throw std::domain_error("EvalPolicy: max_terms must be at least 10");
  }
};

enum class CrossFamily {
  sphere,
  real_projective,
  complex_projective,
  quaternionic_projective,
  cayley_plane
};

// Compact rank one symmetric space of real dimension d.  The kernel is
// K_t(x,y) = (h_0^{alpha,beta} / vol) G^{alpha,beta}_{kappa^2 t}(cos(kappa r), 1)
// with r the geodesic distance, kappa = pi / diameter,
// alpha = d/2 - 1 and beta = (d - d~)/2 - 1 where d~ is the dimension of the
// antipodal manifold.
struct CrossSpace {
  CrossFamily family = CrossFamily::sphere;
  int dim = 1;
  double diameter = M_PI;

  double kappa() const { return M_PI / diameter; }
  int antipodal_dim() const;
  JacobiParams jacobi() const;
  double volume() const;
  void validate() const;
};

// G_t^{alpha,beta}(x,y) by direct spectral summation.  Requires
// t >= policy.t_floor and x, y in [-1, 1]; retries in extended precision when
// cancellation is detected and raises accuracy_error if that also fails.
double jacobi_kernel_series(const JacobiParams& p, double t, double x, double y,
                            const EvalPolicy& policy = {});

// As above but with the constant n = 0 term removed; used by the large-time
// remainder.  Exposed for cross-checks.
double jacobi_kernel_series_tail(const JacobiParams& p, double t, double x, double y,
                                 const EvalPolicy& policy = {});

// Closed form of G_t^{alpha,beta}(cos theta, cos varphi) for the four pairs
// alpha, beta in {-1/2, +1/2}, valid for every t > 0.  Removable
// singularities at the endpoint angles are filled by series limits.
double jacobi_kernel_theta(const JacobiParams& p, double t, double theta_ang, double phi_ang);

// H_t^lambda(x) for -3/2 < lambda <= -1: the even-degree spectral series
//   Gamma(lambda+3/2)/(sqrt(pi) Gamma(lambda+2))
//   + (2^{-2 lambda - 1}/Gamma(lambda+2)) sum_{n>=1} e^{-2tn(2n+2 lambda+1)}
//     [(4n+2 lambda+1) Gamma(2n+2 lambda+1)/Gamma(2n+lambda+1)] P_{2n}^{lambda,lambda}(x)
double h_kernel_series(double lambda, double t, double x, const EvalPolicy& policy = {});

// Product-measure reduction: for alpha, beta >= -1/2,
//   G_t^{alpha,beta}(cos theta, cos varphi) = (h_0^L / h_0^{alpha,beta}) *
//     Int Int G_{t/4}^{L}(u sin(theta/2)sin(varphi/2) + v cos(theta/2)cos(varphi/2), 1)
//             dPi_alpha(u) dPi_beta(v),   L = alpha + beta + 1/2.
// The explicit-rule form integrates with the given rules (point masses are
// used automatically at parameter -1/2).  The node-count form compares the
// n-node and 2n-node results and raises accuracy_error if they disagree by
// more than 1e-8 in relative terms.
double reduction_oracle(const JacobiParams& p, double t, double theta_ang, double phi_ang,
                        const special::QuadratureRule* rule_u, const special::QuadratureRule* rule_v);
double reduction_oracle(const JacobiParams& p, double t, double theta_ang, double phi_ang,
                        int nodes = 64);

// Heat kernel of the unit sphere S^d at geodesic angle phi:
//   K_t^d(phi) = (Gamma(d/2) / (2 pi^{d/2})) G_t^{d/2-1}(cos phi, 1).
// Odd d uses the exact iterated-derivative route; even d uses the series for
// t >= 0.05 and the reduction quadrature below.
double sphere_kernel(int d, double t, double phi, const EvalPolicy& policy = {});

// Heat kernel of a compact rank one symmetric space at geodesic distance
// dist in [0, diameter].
double cross_kernel(const CrossSpace& space, double t, double dist, const EvalPolicy& policy = {});

// Remainder E_t(x,y) defined by G_t(x,y) = (1/h_0)(1 + E_t(x,y)), evaluated
// for t >= 2 log 2 where the spectral tail is dominated by n = 1.
double large_time_remainder(const JacobiParams& p, double t, double x, double y,
                            const EvalPolicy& policy = {});

// Route to the preferred evaluator: closed trigonometric forms for the four
// (+-1/2, +-1/2) pairs, the series for t >= 0.05, and the reduction
// quadrature for small times when alpha, beta >= -1/2 and 2(alpha+beta) is
// an integer.  Arguments are x, y in [-1, 1].
double jacobi_kernel_auto(const JacobiParams& p, double t, double x, double y,
                          const EvalPolicy& policy = {});

}  // namespace heatkit::kernels
