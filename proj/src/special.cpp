#include "heatkit/special.hpp"

#include <gsl/gsl_sf_gamma.h>

#include <Eigen/Dense>
#include <cmath>

namespace heatkit::special {

double gamma_fn(double x) {
  if (x > 0.0) return std::tgamma(x);
  if (x == std::floor(x)) throw std::domain_error("gamma_fn: pole at nonpositive integer");
  // Gamma(x) = Gamma(x+k) / [x (x+1) ... (x+k-1)], shift into (0,1]
  double prod = 1.0;
  double y = x;
  while (y <= 0.0) {
    prod *= y;
    y += 1.0;
  }
  return std::tgamma(y) / prod;
}

double lgamma_fn(double x) { return std::lgamma(x); }

double binom(double x, int k) {
  if (k < 0) throw std::domain_error("binom: k >= 0");
  double num = 1.0;
  for (int i = 0; i < k; ++i) num *= (x - i);
  double den = std::tgamma(static_cast<double>(k) + 1.0);
  return num / den;
}

double d_alpha(double alpha) {
  if (!(alpha > -1.5)) throw std::domain_error("d_alpha: require alpha > -3/2");
  const double h = alpha + 0.5;
  if (std::fabs(h) < 1e-4) {
    // log Gamma(1+h)/h = -gamma + zeta(2)/2 h - zeta(3)/3 h^2 + zeta(4)/4 h^3 - ...
    const double z2 = 1.6449340668482264365, z3 = 1.2020569031595942854,
                 z4 = 1.0823232337111381916, z5 = 1.0369277551433699263;
    double q = -euler_gamma + h * (z2 / 2 - h * (z3 / 3 - h * (z4 / 4 - h * z5 / 5)));
    return std::exp(q);
  }
  return std::exp(std::lgamma(alpha + 1.5) / h);
}

double e_alpha(double alpha) {
  if (!(alpha >= -0.5)) throw std::domain_error("e_alpha: require alpha >= -1/2");
  return (alpha + 0.5) / M_E + std::exp(-euler_gamma);
}

static void check_half_int_order(int two_nu) {
  if (two_nu < 1 || two_nu % 2 == 0)
    throw std::domain_error("bessel_k_half_int: order 2*nu must be odd and >= 1");
}

double bessel_k_half_int_scaled(int two_nu, double y) {
  check_half_int_order(two_nu);
  if (!(y > 0.0)) throw std::domain_error("bessel_k_half_int: require y > 0");
  // S_nu = sqrt(2y/pi) e^y K_nu(y):  S_{1/2} = 1,  S_{nu+1} = S_{nu-1} + (2nu/y) S_nu
  double s_prev = 1.0;  // nu = 1/2
  if (two_nu == 1) return s_prev;
  double s = 1.0 + 1.0 / y;  // nu = 3/2
  for (int k = 3; k < two_nu; k += 2) {
    double nu = 0.5 * k;
    double s_next = s_prev + (2.0 * nu / y) * s;
    s_prev = s;
    s = s_next;
  }
  return s;
}

double bessel_k_half_int(int two_nu, double y) {
  return std::sqrt(M_PI / (2.0 * y)) * std::exp(-y) * bessel_k_half_int_scaled(two_nu, y);
}

double jacobi_poly(int n, const JacobiParams& p, double x) {
  if (n < 0) throw std::domain_error("jacobi_poly: n >= 0");
  const double a = p.alpha, b = p.beta;
  if (n == 0) return 1.0;
  if (x == 1.0) return binom(n + a, n);
  if (x == -1.0) return (n % 2 ? -1.0 : 1.0) * binom(n + b, n);
  double prev = 1.0;
  double cur = 0.5 * (a + b + 2.0) * x + 0.5 * (a - b);
  int start = 2;
  if (std::fabs(a + b + 2.0) < 1e-6) {
    // the k = 2 recurrence coefficient vanishes on a+b = -2; seed P_2 from
    // the exact endpoint expansion sum_k C(n+a,n-k) C(n+b,k) ((x-1)/2)^k ((x+1)/2)^{n-k}
    if (n == 1) return cur;
    prev = cur;
    const double xm = 0.5 * (x - 1.0), xp = 0.5 * (x + 1.0);
    cur = binom(2.0 + a, 2) * xp * xp + binom(2.0 + a, 1) * binom(2.0 + b, 1) * xm * xp +
          binom(2.0 + b, 2) * xm * xm;
    start = 3;
  }
  for (int k = start; k <= n; ++k) {
    const double s = a + b;
    const double c0 = 2.0 * k * (k + s) * (2.0 * k + s - 2.0);
    const double c1 = (2.0 * k + s - 1.0) * ((2.0 * k + s) * (2.0 * k + s - 2.0) * x + a * a - b * b);
    const double c2 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + s);
    const double next = (c1 * cur - c2 * prev) / c0;
    prev = cur;
    cur = next;
  }
  return cur;
}

double jacobi_norm(int n, const JacobiParams& p) {
  p.validate();
  const double a = p.alpha, b = p.beta;
  if (n == 0)
    return std::exp((a + b + 1.0) * M_LN2 + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                    std::lgamma(a + b + 2.0));
  const double ln = (a + b + 1.0) * M_LN2 + std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) -
                    std::log(2.0 * n + a + b + 1.0) - std::lgamma(n + a + b + 1.0) -
                    std::lgamma(n + 1.0);
  return std::exp(ln);
}

double h0_ultra(double lam) {
  if (!(lam > -1.0)) throw std::domain_error("h0_ultra: require lambda > -1");
  return std::exp(0.5 * std::log(M_PI) + std::lgamma(lam + 1.0) - std::lgamma(lam + 1.5));
}

double pi_density_const(double alpha) {
  // Gamma(alpha+1) / (sqrt(pi) Gamma(alpha+1/2)); negative on (-1,-1/2)
  if (alpha == -0.5) throw std::domain_error("pi_density_const: alpha = -1/2 is a point mass");
  return std::tgamma(alpha + 1.0) / (std::sqrt(M_PI) * gamma_fn(alpha + 0.5));
}

double pi_distribution(double alpha, double u) {
  if (!(alpha > -1.0)) throw std::domain_error("pi_distribution: require alpha > -1");
  if (!(u >= -1.0 && u <= 1.0)) throw std::domain_error("pi_distribution: require |u| <= 1");
  if (alpha == -0.5)
    throw std::domain_error("pi_distribution: alpha = -1/2 is a point mass; use integrate_pi");
  const double sign = (u < 0.0) ? -1.0 : 1.0;
  const double au = std::fabs(u);
  if (alpha > -0.5) {
    if (au == 1.0) return sign * 0.5;
    return sign * 0.5 * gsl_sf_beta_inc(0.5, alpha + 0.5, au * au);
  }
  // alpha in (-1, -1/2)
  if (au == 1.0) return sign > 0 ? -HUGE_VAL : HUGE_VAL;
  const double c = pi_density_const(alpha);
  double J;
  if (au * au <= 0.5) {
    // J(u) = u 2F1(1/2, 1/2-alpha; 3/2; u^2), direct series
    const double z = au * au;
    double term = 1.0, s = 1.0;
    for (int k = 0; k < 400; ++k) {
      term *= (0.5 + k) * (0.5 - alpha + k) / ((1.5 + k) * (k + 1.0)) * z;
      s += term;
      if (std::fabs(term) < 1e-18 * std::fabs(s)) break;
    }
    J = au * s;
  } else {
    // connection formula at z -> 1:
    // J = A + B u (1-u^2)^{alpha+1/2} 2F1(1, alpha+1; alpha+3/2; 1-u^2)
    const double w = (1.0 - au) * (1.0 + au);
    const double A = std::tgamma(1.5) * gamma_fn(alpha + 0.5) / std::tgamma(alpha + 1.0);
    const double B = std::tgamma(1.5) * gamma_fn(-alpha - 0.5) /
                     (std::tgamma(0.5) * std::tgamma(0.5 - alpha));
    double term = 1.0, s = 1.0;
    for (int k = 0; k < 400; ++k) {
      term *= (alpha + 1.0 + k) / (alpha + 1.5 + k) * w;
      s += term;
      if (std::fabs(term) < 1e-18 * std::fabs(s)) break;
    }
    J = A + B * au * std::pow(w, alpha + 0.5) * s;
  }
  return sign * c * J;
}

QuadratureRule gauss_jacobi_general(double a, double b, int n) {
  if (!(a > -1.0) || !(b > -1.0)) throw std::domain_error("gauss_jacobi_general: a, b > -1");
  if (n < 1) throw std::domain_error("gauss_jacobi_general: n >= 1");
  Eigen::VectorXd diag(n), sub(n > 1 ? n - 1 : 1);
  const double s = a + b;
  diag(0) = (b - a) / (s + 2.0);
  for (int k = 1; k < n; ++k) {
    const double d = 2.0 * k + s;
    diag(k) = (b * b - a * a) / (d * (d + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    double beta_k;
    if (k == 1)
      // cancelled form, valid when a+b = -1 where the raw one is 0/0
      beta_k = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + s) * (2.0 + s) * (3.0 + s));
    else {
      const double d = 2.0 * k + s;
      beta_k = 4.0 * k * (k + a) * (k + b) * (k + s) / (d * d * (d + 1.0) * (d - 1.0));
    }
    sub(k - 1) = std::sqrt(beta_k);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(std::max(0, n - 1)), Eigen::ComputeEigenvectors);
  const double mass =
      std::exp((s + 1.0) * M_LN2 + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
               std::lgamma(s + 2.0));
  QuadratureRule r;
  r.exponent_a = a;
  r.exponent_b = b;
  r.mass = mass;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    r.weights[i] = mass * v0 * v0;
  }
  return r;
}

QuadratureRule gauss_jacobi_rule(double alpha, int n) {
  if (!(alpha > -0.5))
    throw std::domain_error("gauss_jacobi_rule: dPi_alpha rule needs alpha > -1/2");
  QuadratureRule r = gauss_jacobi_general(alpha - 0.5, alpha - 0.5, n);
  for (auto& w : r.weights) w /= r.mass;
  r.mass = 1.0;
  return r;
}

}  // namespace heatkit::special
