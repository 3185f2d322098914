#include <heatkit/theta.hpp>

#include <heatkit/special.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace heatkit::theta {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

void check_time(double t) {
  if (!(t > 0.0)) throw std::domain_error("theta: t must be positive");
}

double clamp_angle(double phi) {
  if (!(phi >= -1e-12 && phi <= M_PI + 1e-12))
    throw std::domain_error("theta: phi must lie in [0, pi]");
  return std::clamp(phi, 0.0, M_PI);
}

bool use_spatial(double t, ThetaEvalMethod method) {
  if (method == ThetaEvalMethod::spatial) return true;
  if (method == ThetaEvalMethod::spectral) return false;
  return t <= 1.0;
}

// index bound so that the discarded Gaussian shifts are dead to double
// precision: (pi * m)^2 / (4t) > 760 past it
int lattice_cap(double t, double spacing) {
  return static_cast<int>(std::ceil((std::sqrt(3100.0 * t) + M_PI) / spacing)) + 1;
}

double spatial_theta_deriv(int k, double t, double z) {
  const double zr = std::remainder(z, kTwoPi);
  const int cap = lattice_cap(t, kTwoPi);
  special::KahanSum acc;
  acc.add(gauss_kernel_deriv(k, t, zr));
  for (int n = 1; n <= cap; ++n) {
    acc.add(gauss_kernel_deriv(k, t, zr - kTwoPi * n));
    acc.add(gauss_kernel_deriv(k, t, zr + kTwoPi * n));
  }
  return acc.value();
}

double spectral_theta_deriv(int k, double t, double z) {
  special::KahanSum acc;
  if (k == 0) acc.add(1.0 / kTwoPi);
  for (int n = 1; n <= 200000; ++n) {
    const double e = std::exp(-t * static_cast<double>(n) * n);
    const double amp = e * std::pow(static_cast<double>(n), k) / M_PI;
    double osc = 0.0;
    switch (k) {
      case 0: osc = std::cos(n * z); break;
      case 1: osc = -std::sin(n * z); break;
      case 2: osc = -std::cos(n * z); break;
      case 3: osc = std::sin(n * z); break;
      case 4: osc = std::cos(n * z); break;
    }
    acc.add(amp * osc);
    if (amp < 1e-20 * (std::fabs(acc.value()) + 1e-30) && amp < 1e-25) break;
    if (amp < 1e-22) break;
  }
  return acc.value();
}

double spatial_eta_deriv(int k, double s, double u) {
  const double ur = std::remainder(u, kTwoPi);
  const int cap = lattice_cap(s, M_PI);
  special::KahanSum acc;
  acc.add(gauss_kernel_deriv(k, s, ur));
  for (int m = 1; m <= cap; ++m) {
    const double sign = (m % 2) ? -1.0 : 1.0;
    acc.add(sign * gauss_kernel_deriv(k, s, ur - M_PI * m));
    acc.add(sign * gauss_kernel_deriv(k, s, ur + M_PI * m));
  }
  return 0.5 * acc.value();
}

double spectral_eta_deriv(int k, double s, double u) {
  special::KahanSum acc;
  for (int n = 1; n <= 200001; n += 2) {
    const double e = std::exp(-s * static_cast<double>(n) * n);
    const double amp = e * std::pow(static_cast<double>(n), k) / M_PI;
    double osc = 0.0;
    switch (k) {
      case 0: osc = std::cos(n * u); break;
      case 1: osc = -std::sin(n * u); break;
      case 2: osc = -std::cos(n * u); break;
      case 3: osc = std::sin(n * u); break;
      case 4: osc = std::cos(n * u); break;
    }
    acc.add(amp * osc);
    if (amp < 1e-22) break;
  }
  return acc.value();
}

// e^{-z} i_n(z) / z^n for the modified spherical Bessel function i_n,
// z >= 0; positive, decreasing in z, equals 1/(2n+1)!! at z = 0
double scaled_sph_bessel_ratio(int n, double z) {
  if (z < 100.0) {
    double dfact = 1.0;
    for (int i = 3; i <= 2 * n + 1; i += 2) dfact *= i;
    double term = 1.0 / dfact;
    double acc = term;
    const double z2 = z * z;
    for (int k = 0; k < 400; ++k) {
      term *= z2 / (2.0 * (k + 1) * (2.0 * n + 2.0 * k + 3.0));
      acc += term;
      if (term < 1e-18 * acc) break;
    }
    return std::exp(-z) * acc;
  }
  // large argument: i_n(z) = (e^z S_alt(z) + (-1)^{n+1} e^{-z} S_plus(z)) / (2z)
  // with the finite Bessel polynomials in 1/z
  double c = 1.0;
  double s_alt = 1.0;
  double s_plus = 1.0;
  for (int k = 1; k <= n; ++k) {
    c *= (n + k) * (n - k + 1.0) / (2.0 * k);
    const double zk = c * std::pow(z, -k);
    s_alt += (k % 2) ? -zk : zk;
    s_plus += zk;
  }
  const double tail = ((n % 2) ? 1.0 : -1.0) * std::exp(-2.0 * z) * s_plus;
  return (s_alt + tail) / (2.0 * std::pow(z, n + 1));
}

std::vector<double> lambda_list(int n_pow, double phi) {
  std::vector<double> lam(static_cast<std::size_t>(n_pow));
  for (int i = 0; i < n_pow; ++i) lam[static_cast<std::size_t>(i)] = comtet::l_pow_psi(i, phi);
  return lam;
}

double phi_from_list(int n_pow, int j, const std::vector<double>& lam,
                     const comtet::AposCoeffTable& table) {
  std::vector<double> slice(lam.begin(), lam.begin() + (n_pow - j + 1));
  return comtet::eval_apoly(n_pow, j, slice, table);
}

// D^N applied to the Gaussian pair W_t(x - a) + W_t(x + a) at x in [0, pi/2],
// a > 0.  The pair is the even function 2 W_t(x) e^{-a^2/(4t)} cosh(a x / 2t),
// so the iterated-derivative expansion applies with
//   L^j [e^{-x^2/4t} cosh(kappa x)] =
//     e^{-x^2/4t} sum_m binom(j,m) (-1/2t)^{j-m} kappa^{2m} I_m(kappa x)
// where I_0 = cosh and I_m(y) = i_{m-1}(y)/y^{m-1}; the e^{+kappa x} growth
// is folded into the front factor e^{-(a-x)^2/(4t)}
double pair_term(int n_pow, double t, double a, double x, const std::vector<double>& lam,
                 const comtet::AposCoeffTable& table) {
  const double kappa = a / (2.0 * t);
  const double expo = (a - x) * (a - x) / (4.0 * t);
  if (expo - 2.0 * n_pow * std::log1p(kappa) - n_pow * std::fabs(std::log(2.0 * t)) > 745.0)
    return 0.0;
  const double z = kappa * x;
  std::vector<double> jhat(static_cast<std::size_t>(n_pow) + 1);
  jhat[0] = 0.5 * (1.0 + std::exp(-2.0 * z));
  for (int m = 1; m <= n_pow; ++m)
    jhat[static_cast<std::size_t>(m)] = scaled_sph_bessel_ratio(m - 1, z);
  special::KahanSum acc;
  for (int j = 1; j <= n_pow; ++j) {
    special::KahanSum inner;
    double binom = 1.0;
    double pw = std::pow(-0.5 / t, j);
    const double k2 = kappa * kappa;
    double kp = 1.0;
    for (int m = 0; m <= j; ++m) {
      inner.add(binom * pw * kp * jhat[static_cast<std::size_t>(m)]);
      binom *= static_cast<double>(j - m) / (m + 1.0);
      pw /= (-0.5 / t);
      kp *= k2;
    }
    acc.add(phi_from_list(n_pow, j, lam, table) * inner.value());
  }
  return 2.0 * std::exp(-expo) / std::sqrt(4.0 * M_PI * t) * acc.value();
}

int pair_cap(int n_pow, double t) {
  return static_cast<int>(std::ceil(3.0 + 6.0 * std::sqrt(t) * (n_pow + 1) / M_PI));
}

// sum over multisets (k_1, ..., k_N) with sum j k_j = N of
//   N!/(prod k_j!) (2t)^{-sum k_j} prod_j ((-1)^{j+1} g_j(phi)/j!)^{k_j}
double fdb_main_sum(int n_pow, double t, double phi) {
  const auto seq = comtet::hgw_sequences(n_pow, std::max(phi, 1e-9));
  std::vector<double> base(static_cast<std::size_t>(n_pow) + 1, 0.0);
  double fact = 1.0;
  for (int j = 1; j <= n_pow; ++j) {
    fact *= j;
    base[static_cast<std::size_t>(j)] =
        ((j % 2) ? 1.0 : -1.0) * seq.g[static_cast<std::size_t>(j)] / fact;
  }
  special::KahanSum acc;
  const double inv2t = 0.5 / t;
  // enumerate part sizes downward, carrying the partial product
  auto rec = [&](auto&& self, int size, int remaining, double factor) -> void {
    if (remaining == 0) {
      acc.add(factor);
      return;
    }
    if (size < 1) return;
    double f = factor;
    for (int count = 0; size * count <= remaining; ++count) {
      if (count > 0) f *= base[static_cast<std::size_t>(size)] * inv2t / count;
      self(self, size - 1, remaining - size * count, f);
    }
  };
  rec(rec, n_pow, n_pow, 1.0);
  double nfact = 1.0;
  for (int j = 2; j <= n_pow; ++j) nfact *= j;
  return nfact * acc.value();
}

// (1/pi) sum_{n >= N} e^{-t(n^2 - shift)} T_n^{(N)}(cos phi) where
// T_n^{(N)}(x) = n 2^{N-1} (N-1)! C^{(N)}_{n-N}(x) is the N-th derivative
// of the degree-n Chebyshev polynomial
double spectral_sum(int n_pow, double t, double phi, double shift) {
  const double x = std::cos(phi);
  double pref = 1.0 / M_PI;
  for (int j = 1; j < n_pow; ++j) pref *= 2.0 * j;
  double c_prev = 0.0;
  double c_cur = 1.0;
  double majorant = 1.0;  // binom(k + 2N - 1, k) >= |C_k^{(N)}(x)|
  special::KahanSum acc;
  double max_term = 0.0;
  for (int k = 0; k < 200000; ++k) {
    const int n = n_pow + k;
    const double e = std::exp(-t * (static_cast<double>(n) * n - shift));
    const double term = pref * e * n * c_cur;
    acc.add(term);
    max_term = std::max(max_term, std::fabs(term));
    const double bound = pref * e * n * majorant;
    if (k > 2 && bound < 1e-18 * std::max(std::fabs(acc.value()), max_term)) break;
    const double c_next =
        (2.0 * (k + n_pow) * x * c_cur - (k + 2.0 * n_pow - 1.0) * c_prev) / (k + 1.0);
    c_prev = c_cur;
    c_cur = c_next;
    majorant *= (k + 2.0 * n_pow) / (k + 1.0);
  }
  return acc.value();
}

double northern(int n_pow, double t, double phi, const comtet::AposCoeffTable& table,
                NegDRoute route) {
  const auto lam = lambda_list(n_pow, phi);
  double main = 0.0;
  if (route == NegDRoute::fdb) {
    main = gauss_kernel(t, phi) * fdb_main_sum(n_pow, t, phi);
  } else {
    special::KahanSum s;
    for (int j = 1; j <= n_pow; ++j) {
      const double sign = ((n_pow + j) % 2) ? -1.0 : 1.0;
      s.add(sign * std::pow(2.0 * t, -j) * phi_from_list(n_pow, j, lam, table));
    }
    main = gauss_kernel(t, phi) * s.value();
  }
  const double sign_n = (n_pow % 2) ? -1.0 : 1.0;
  special::KahanSum acc;
  acc.add(main);
  const int cap = pair_cap(n_pow, t);
  for (int n = 1; n <= cap; ++n)
    acc.add(sign_n * pair_term(n_pow, t, kTwoPi * n, phi, lam, table));
  return acc.value();
}

// phi > pi/2: reflect through pi.  With psi = pi - phi the operator becomes
// (+D_psi)^N and the lattice regroups into pairs at odd multiples of pi,
// so no main term and no alternating sign remain
double southern(int n_pow, double t, double psi, const comtet::AposCoeffTable& table) {
  const auto lam = lambda_list(n_pow, psi);
  special::KahanSum acc;
  const int cap = pair_cap(n_pow, t);
  for (int m = 0; m <= cap; ++m)
    acc.add(pair_term(n_pow, t, (2.0 * m + 1.0) * M_PI, psi, lam, table));
  return acc.value();
}

const comtet::AposCoeffTable& builtin_table() {
  static const comtet::AposCoeffTable tbl = comtet::build_coeff_table(20);
  return tbl;
}

// e^{t n^2} (-D)^n theta_t(phi); the scaling keeps large-time values
// representable, where the spectral series is also the stable route
double scaled_neg_d(int n, double t, double phi) {
  if (n == 0) return theta(t, phi);
  if (t < 0.5)
    return std::exp(t * static_cast<double>(n) * n) *
           neg_d_pow_theta(n, t, phi, builtin_table(), NegDRoute::pair);
  return spectral_sum(n, t, phi, static_cast<double>(n) * n);
}

}  // namespace

double gauss_kernel(double t, double x) {
  check_time(t);
  return std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * M_PI * t);
}

double gauss_kernel_deriv(int k, double t, double x) {
  check_time(t);
  const double w = std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * M_PI * t);
  switch (k) {
    case 0: return w;
    case 1: return -(x / (2.0 * t)) * w;
    case 2: return (x * x / (4.0 * t * t) - 1.0 / (2.0 * t)) * w;
    case 3: return (-x * x * x / (8.0 * t * t * t) + 3.0 * x / (4.0 * t * t)) * w;
    case 4:
      return (x * x * x * x / (16.0 * t * t * t * t) - 3.0 * x * x / (4.0 * t * t * t) +
              3.0 / (4.0 * t * t)) *
             w;
    default: throw std::domain_error("gauss_kernel_deriv: order must be 0..4");
  }
}

double theta(double t, double z, ThetaEvalMethod method) {
  check_time(t);
  return use_spatial(t, method) ? spatial_theta_deriv(0, t, z) : spectral_theta_deriv(0, t, z);
}

double theta_deriv(int k, double t, double z, ThetaEvalMethod method) {
  check_time(t);
  if (k < 0 || k > 4) throw std::domain_error("theta_deriv: order must be 0..4");
  return use_spatial(t, method) ? spatial_theta_deriv(k, t, z) : spectral_theta_deriv(k, t, z);
}

double eta(double s, double u, ThetaEvalMethod method) {
  check_time(s);
  bool spatial = (method == ThetaEvalMethod::auto_select) ? (s < 0.5)
                                                          : (method == ThetaEvalMethod::spatial);
  return spatial ? spatial_eta_deriv(0, s, u) : spectral_eta_deriv(0, s, u);
}

double eta_deriv(int k, double s, double u, ThetaEvalMethod method) {
  check_time(s);
  if (k < 0 || k > 4) throw std::domain_error("eta_deriv: order must be 0..4");
  bool spatial = (method == ThetaEvalMethod::auto_select) ? (s < 0.5)
                                                          : (method == ThetaEvalMethod::spatial);
  return spatial ? spatial_eta_deriv(k, s, u) : spectral_eta_deriv(k, s, u);
}

double neg_d_pow_theta(int n, double t, double phi, const comtet::AposCoeffTable& table,
                       NegDRoute route) {
  check_time(t);
  phi = clamp_angle(phi);
  if (n < 0) throw std::domain_error("neg_d_pow_theta: order must be non-negative");
  if (n == 0) return theta(t, phi);
  if (n > table.capacity())
    throw std::domain_error("neg_d_pow_theta: coefficient table too small for requested order");
  if (n > 26) throw std::domain_error("neg_d_pow_theta: order capped at 26");
  if (route == NegDRoute::auto_route)
    route = (t < 0.5) ? NegDRoute::pair : NegDRoute::spectral;
  if (route == NegDRoute::spectral) return spectral_sum(n, t, phi, 0.0);
  if (phi <= 0.5 * M_PI) return northern(n, t, phi, table, route);
  return southern(n, t, M_PI - phi, table);
}

double sphere_kernel_odd(int n, double t, double phi) {
  check_time(t);
  phi = clamp_angle(phi);
  if (n < 0 || n > 20) throw std::domain_error("sphere_kernel_odd: index must lie in [0, 20]");
  if (n == 0) return theta(t, phi);
  return scaled_neg_d(n, t, phi) / std::pow(kTwoPi, n);
}

double g_ultra_half_int(double lambda, double t, double phi) {
  check_time(t);
  phi = clamp_angle(phi);
  const double nd = lambda + 0.5;
  const int n = static_cast<int>(std::lround(nd));
  if (std::fabs(nd - n) > 1e-9 || n < 0 || n > 20)
    throw std::domain_error("g_ultra_half_int: lambda must be a half-integer in [-1/2, 39/2]");
  if (n == 0) return 2.0 * theta(t, phi);
  const double pref = std::sqrt(4.0 * M_PI) / (std::exp2(n) * std::tgamma(n + 0.5));
  return pref * scaled_neg_d(n, t, phi);
}

}  // namespace heatkit::theta
