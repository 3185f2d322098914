#pragma once
// Scalar special functions, Jacobi polynomials/norms, symmetrized beta
// distributions Pi_alpha and Gauss-Jacobi quadrature rules.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace heatkit {

// Raised when an evaluator cannot meet its accuracy contract.
struct accuracy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct JacobiParams {
  double alpha;
  double beta;

  // admissible type parameters: alpha, beta > -1
  void validate() const {
    if (!(alpha > -1.0) || !(beta > -1.0))
      throw std::domain_error("JacobiParams: require alpha, beta > -1");
  }
  // Lambda = alpha + beta + 1/2, the ultraspherical parameter reached by the
  // product-measure reduction
  double lambda() const { return alpha + beta + 0.5; }
  JacobiParams swapped() const { return {beta, alpha}; }
};

namespace special {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

// Gamma(x) for real non-pole x; negative arguments by upward recursion
// from (0,1].  lgamma_fn returns log|Gamma(x)|.
double gamma_fn(double x);
double lgamma_fn(double x);

// binom(x, k) = Gamma(x+1)/(Gamma(x-k+1) k!) for real x, integer k >= 0
double binom(double x, int k);

// D_alpha = Gamma(alpha+3/2)^{1/(alpha+1/2)} for alpha > -3/2, alpha != -1/2,
// extended by continuity with D_{-1/2} = e^{-euler_gamma}.
double d_alpha(double alpha);

// E_alpha = (alpha+1/2)/e + e^{-euler_gamma}, alpha >= -1/2
double e_alpha(double alpha);

// K_nu(y) for half-integer order nu = two_nu/2 (two_nu odd, >= 1), y > 0.
// Closed form sqrt(pi/2y) e^{-y} S_nu(1/y) with the upward recurrence
// S_{nu+1} = S_{nu-1} + (2 nu / y) S_nu seeded by S_{1/2} = 1, S_{3/2} = 1+1/y.
double bessel_k_half_int(int two_nu, double y);
// scaled value sqrt(2y/pi) e^{y} K_nu(y), the quantity the horizon estimates
// bound by (1+eps)^{nu-1/2}
double bessel_k_half_int_scaled(int two_nu, double y);

// P_n^{(alpha,beta)}(x) via the three-term recurrence; exact binomial values
// at x = +-1.  Valid for alpha+beta > -3 away from the recurrence poles;
// the degenerate line alpha+beta = -2 (P_2 = (x^2-1)/4) is handled explicitly.
double jacobi_poly(int n, const JacobiParams& p, double x);

// h_n = 2^{a+b+1} Gamma(n+a+1) Gamma(n+b+1) /
//       [(2n+a+b+1) Gamma(n+a+b+1) Gamma(n+1)]
// For n = 0 the product (a+b+1)Gamma(a+b+1) is read as Gamma(a+b+2), which
// also covers a+b = -1.
double jacobi_norm(int n, const JacobiParams& p);

// h_0 of the ultraspherical pair (lam, lam): sqrt(pi) Gamma(lam+1) / Gamma(lam+3/2)
double h0_ultra(double lam);

// Pi_alpha(u), the odd distribution function with
// dPi_alpha = Gamma(alpha+1)/(sqrt(pi) Gamma(alpha+1/2)) (1-u^2)^{alpha-1/2} du.
// alpha > -1/2: regularized incomplete beta, values in [-1/2, 1/2].
// alpha in (-1, -1/2): negative for u > 0 and unbounded at +-1; evaluated by
// the hypergeometric series for u^2 <= 1/2 and the connection formula
//   Pi(u)/c = A + B u (1-u^2)^{alpha+1/2} 2F1(1, alpha+1; alpha+3/2; 1-u^2)
// near the endpoints.
// alpha = -1/2 is the discrete measure (delta_{-1} + delta_1)/2 and is
// rejected here; integrate against it with integrate_pi.
double pi_distribution(double alpha, double u);

// density constant c_alpha = Gamma(alpha+1)/(sqrt(pi) Gamma(alpha+1/2))
// (negative for alpha in (-1,-1/2))
double pi_density_const(double alpha);

struct PiMeasure {
  double alpha;
  bool is_point_mass() const { return alpha == -0.5; }
};

struct QuadratureRule {
  std::vector<double> nodes;    // ascending, inside (-1,1)
  std::vector<double> weights;  // positive
  double exponent_a = 0.0;      // weight (1-x)^a (1+x)^b
  double exponent_b = 0.0;
  double mass = 0.0;            // sum of weights

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      double y = weights[i] * f(nodes[i]) - c;
      double u = s + y;
      c = (u - s) - y;
      s = u;
    }
    return s;
  }
};

// Golub-Welsch rule for the weight (1-x)^a (1+x)^b on [-1,1];
// total mass 2^{a+b+1} B(a+1, b+1)
QuadratureRule gauss_jacobi_general(double a, double b, int n);

// rule for the probability measure dPi_alpha (alpha > -1/2): weights sum to 1
QuadratureRule gauss_jacobi_rule(double alpha, int n);

// integrate f against dPi_alpha; alpha = -1/2 uses the two point masses.
// Builds a fresh rule each call; cache the rule directly in hot paths.
template <class F>
double integrate_pi(double alpha, int n_nodes, F&& f) {
  if (alpha == -0.5) return 0.5 * (f(-1.0) + f(1.0));
  return gauss_jacobi_rule(alpha, n_nodes).integrate(f);
}

// one-sided moment: integrate f over [0,1] against dPi_alpha (alpha >= -1/2),
// mapped to a (1-v)^{alpha-1/2} rule so the endpoint singularity is exact.
// alpha = -1/2 contributes only the mass at s = 1.
template <class F>
double integrate_pi_upper(double alpha, int n_nodes, F&& f) {
  if (alpha == -0.5) return 0.5 * f(1.0);
  if (!(alpha > -0.5))
    throw std::domain_error("integrate_pi_upper: require alpha >= -1/2");
  const QuadratureRule r = gauss_jacobi_general(alpha - 0.5, 0.0, n_nodes);
  const double c = pi_density_const(alpha) * std::pow(2.0, -alpha - 0.5);
  return c * r.integrate([&](double v) {
    return f(0.5 * (1.0 + v)) * std::pow(0.5 * (3.0 + v), alpha - 0.5);
  });
}

// Kahan-compensated accumulator
struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double u = s + y;
    c = (u - s) - y;
    s = u;
  }
  double value() const { return s; }
};

}  // namespace special
}  // namespace heatkit
