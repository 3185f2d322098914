#include <heatkit/kernels.hpp>

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace heatkit::kernels {
namespace {

// ---------------------------------------------------------------------------
// escalating-precision spectral series
// ---------------------------------------------------------------------------

template <typename Real>
struct RealTraits;

template <>
struct RealTraits<double> {
  static double exp(double x) { return std::exp(x); }
  static double abs(double x) { return std::fabs(x); }
  static double gamma(double x) { return special::gamma_fn(x); }
  static double pow2(double e) { return std::pow(2.0, e); }
  static constexpr double eps = 2.3e-16;
};

template <>
struct RealTraits<__float128> {
  static __float128 exp(__float128 x) { return expq(x); }
  static __float128 abs(__float128 x) { return fabsq(x); }
  static __float128 gamma(__float128 x) { return tgammaq(x); }
  static __float128 pow2(__float128 e) { return powq(2.0q, e); }
  static constexpr double eps = 2.0e-34;
};

struct SeriesOut {
  double value;
  double cond;  // estimated relative rounding error
};

double clamp_unit(double v, const char* what) {
  if (!(v >= -1.0 - 1e-12 && v <= 1.0 + 1e-12))
    throw std::domain_error(std::string(what) + ": argument outside [-1, 1]");
  return std::min(1.0, std::max(-1.0, v));
}

double clamp_angle(double a, const char* what) {
  if (!(a >= -1e-12 && a <= M_PI + 1e-12))
    throw std::domain_error(std::string(what) + ": angle outside [0, pi]");
  return std::min(M_PI, std::max(0.0, a));
}

// G_t^{alpha,beta}(x,y) = sum_n e^{-t n(n+alpha+beta+1)} P_n(x) P_n(y) / h_n.
// Polynomials advance by the three-term recurrence (exact binomial ratios at
// x = +-1), 1/h_n by a rational ratio.  The tail after degree n is bounded by
// the next majorant term times 1.2: once t(n+1) >= 4, n >= 8 and
// n+1 >= 2(|alpha|+|beta|+2), consecutive majorant terms shrink by more than
// a factor of 10.
template <typename Real>
SeriesOut series_impl(double alpha, double beta, double t, double x, double y,
                      const EvalPolicy& policy, bool drop_constant) {
  using T = RealTraits<Real>;
  const Real a = alpha, b = beta;
  const Real one = 1.0;
  const Real q = a + b + one;
  const Real h0 = T::pow2(a + b + one) * T::gamma(a + one) * T::gamma(b + one) /
                  T::gamma(a + b + Real(2.0));

  // sup_{[-1,1]} |P_n|: binom(n+g, n) for g = max(alpha,beta) >= -1/2;
  // otherwise both parameters lie in (-1,-1/2) and the sup is bounded by
  // ((2n+g+1)/(g+1)) binom(n+g, n) with g = min(alpha,beta)
  const bool both_low = (std::max(alpha, beta) < -0.5);
  const Real gs = both_low ? std::min(alpha, beta) : std::max(alpha, beta);

  const bool x1 = (x == 1.0), xm1 = (x == -1.0);
  const bool y1 = (y == 1.0), ym1 = (y == -1.0);
  const Real xx = x, yy = y;

  Real acc = 0.0, comp = 0.0;
  auto add = [&](Real v) {
    const Real yk = v - comp;
    const Real uk = acc + yk;
    comp = (uk - acc) - yk;
    acc = uk;
  };

  Real px = 1.0, px_m = 0.0;
  Real py = 1.0, py_m = 0.0;
  Real wn = one / h0;
  Real mb = 1.0;  // binom(n + gs, n)
  Real max_term = 0.0;
  bool converged = false;

  for (int n = 0; n <= policy.max_terms; ++n) {
    const Real nr = n;
    if (n > 0 || !drop_constant) {
      const Real term = T::exp(-Real(t) * nr * (nr + q)) * px * py * wn;
      add(term);
      const Real at = T::abs(term);
      if (at > max_term) max_term = at;
    }

    const Real rn = (n == 0) ? (a + one) * (b + one) / (a + b + Real(3.0))
                             : ((Real(2.0) * nr + q) / (Real(2.0) * nr + q + Real(2.0))) *
                                   ((nr + a + one) * (nr + b + one)) /
                                   ((nr + q) * (nr + one));
    const Real wn1 = wn / rn;
    const Real mb1 = mb * (nr + one + gs) / (nr + one);

    auto advance = [&](Real& p_cur, Real& p_prev, bool at1, bool atm1, Real arg) {
      Real next;
      if (at1)
        next = p_cur * (nr + one + a) / (nr + one);
      else if (atm1)
        next = -p_cur * (nr + one + b) / (nr + one);
      else if (n == 0)
        next = (a + one) + (a + b + Real(2.0)) * (arg - one) / Real(2.0);
      else {
        const Real s = Real(2.0) * nr + a + b;
        const Real c0 = Real(2.0) * (nr + one) * (nr + one + a + b) * s;
        const Real c1 = (s + one) * ((s + Real(2.0)) * s * arg + (a - b) * (a + b));
        const Real c2 = Real(2.0) * (nr + a) * (nr + b) * (s + Real(2.0));
        next = (c1 * p_cur - c2 * p_prev) / c0;
      }
      p_prev = p_cur;
      p_cur = next;
    };
    advance(px, px_m, x1, xm1, xx);
    advance(py, py_m, y1, ym1, yy);

    const Real n1 = nr + one;
    Real sup1 = mb1;
    if (both_low) sup1 = sup1 * (Real(2.0) * n1 + gs + one) / (gs + one);
    const Real maj = T::exp(-Real(t) * n1 * (n1 + q)) * sup1 * sup1 * wn1;
    const double maj_d = static_cast<double>(maj);
    const double acc_d = std::fabs(static_cast<double>(acc));
    if (n >= 8 && t * (n + 1.0) >= 4.0 &&
        n + 1.0 >= 2.0 * (std::fabs(alpha) + std::fabs(beta) + 2.0) &&
        1.2 * maj_d <= policy.tol * acc_d + 1e-300) {
      converged = true;
      wn = wn1;
      mb = mb1;
      break;
    }
    wn = wn1;
    mb = mb1;
  }
  if (!converged) throw accuracy_error("jacobi kernel series: no convergence within max_terms");

  const double value = static_cast<double>(acc);
  const double cond = (max_term == Real(0.0))
                          ? 0.0
                          : 10.0 * T::eps * static_cast<double>(max_term) /
                                std::max(std::fabs(value), 1e-300);
  return {value, cond};
}

double series_eval(const JacobiParams& p, double t, double x, double y, const EvalPolicy& policy,
                   bool drop_constant) {
  p.validate();
  policy.validate();
  if (!(t >= policy.t_floor))
    throw std::domain_error(
        "jacobi_kernel_series: t is below the small-time floor; use the closed "
        "trigonometric forms (parameters +-1/2), the product-measure reduction "
        "quadrature, or the sphere/cross evaluators instead");
  x = clamp_unit(x, "jacobi_kernel_series");
  y = clamp_unit(y, "jacobi_kernel_series");

  SeriesOut r = series_impl<double>(p.alpha, p.beta, t, x, y, policy, drop_constant);
  if (!(r.cond <= 1e-9) || !std::isfinite(r.value)) {
    r = series_impl<__float128>(p.alpha, p.beta, t, x, y, policy, drop_constant);
    if (!(r.cond <= 1e-8) || !std::isfinite(r.value))
      throw accuracy_error(
          "jacobi kernel series: cancellation exceeds extended-precision headroom");
  }
  if (!drop_constant && !(r.value > 0.0))
    throw accuracy_error("jacobi kernel series: positivity lost to rounding");
  return r.value;
}

// ---------------------------------------------------------------------------
// closed trigonometric forms for parameters +-1/2
// ---------------------------------------------------------------------------

int half_class(double v) {
  if (std::fabs(v - 0.5) < 1e-12) return 1;
  if (std::fabs(v + 0.5) < 1e-12) return -1;
  return 0;
}

// candidate value with an estimated relative error, used to decide between
// the direct quotient and its edge Taylor replacement
struct Cand {
  double value;
  double err;
};

double better(const Cand& c1, const Cand& c2) { return (c1.err <= c2.err) ? c1.value : c2.value; }

constexpr double kHuge = std::numeric_limits<double>::infinity();

// (1/2,1/2): G = e^t [theta(th-ph) - theta(th+ph)] / (sin th sin ph)
Cand pp_direct(double t, double th, double ph) {
  const double va = theta::theta(t, th - ph);
  const double vb = theta::theta(t, th + ph);
  const double num = va - vb;
  const double den = std::sin(th) * std::sin(ph);
  if (!(den > 0.0)) return {0.0, kHuge};
  const double err = 4e-16 * (std::fabs(va) + std::fabs(vb)) / std::max(std::fabs(num), 1e-300);
  return {std::exp(t) * num / den, err};
}

// th -> 0 with ph generic: the quotient tends to -2 e^t theta'(ph)/sin ph,
// with quadratic correction f/sin th = f'(0) + th^2 [f'''(0) + f'(0)]/6
Cand pp_taylor_edge(double t, double th, double ph) {
  const double f1 = -2.0 * theta::theta_deriv(1, t, ph);
  const double f3 = -2.0 * theta::theta_deriv(3, t, ph);
  const double corr = th * th * (f3 + f1) / 6.0;
  const double rel = std::fabs(corr) / std::max(std::fabs(f1), 1e-300);
  return {std::exp(t) * (f1 + corr) / std::sin(ph), rel * rel + 1e-16};
}

// th -> 0 and ph -> pi simultaneously (s = pi - ph): with psi(w) = theta(pi-w),
// G = 2 e^t [psi''(0)(1 + (th^2+s^2)/6) + psi''''(0)(th^2+s^2)/6] + O(edge^4)
Cand pp_taylor_corner0(double t, double th, double ph) {
  const double p2 = theta::theta_deriv(2, t, 0.0);
  const double p4 = theta::theta_deriv(4, t, 0.0);
  const double r2 = th * th + ph * ph;
  const double rel = r2 * (std::fabs(p4) + std::fabs(p2)) / (6.0 * std::max(std::fabs(p2), 1e-300));
  const double val = -2.0 * std::exp(t) * (p2 * (1.0 + r2 / 6.0) + p4 * r2 / 6.0);
  return {val, rel * rel + 1e-16};
}
Cand pp_taylor_corner(double t, double th, double s) {
  const double p2 = theta::theta_deriv(2, t, M_PI);
  const double p4 = theta::theta_deriv(4, t, M_PI);
  const double r2 = th * th + s * s;
  const double rel = r2 * (std::fabs(p4) + std::fabs(p2)) / (6.0 * std::max(std::fabs(p2), 1e-300));
  const double val = 2.0 * std::exp(t) * (p2 * (1.0 + r2 / 6.0) + p4 * r2 / 6.0);
  return {val, rel * rel + 1e-16};
}

double kernel_pp(double t, double th, double ph) {
  // invariant under the simultaneous reflection and under swapping
  if (th + ph > M_PI) {
    th = M_PI - th;
    ph = M_PI - ph;
  }
  if (th > ph) std::swap(th, ph);
  const double edge = 1e-3;
  const double s = M_PI - ph;
  if (ph < edge) {
    const Cand ty = pp_taylor_corner0(t, th, ph);
    if (th > 1e-12 && ph > 1e-12) return better(pp_direct(t, th, ph), ty);
    return ty.value;
  }
  if (th < edge && s < edge) {
    const Cand ty = pp_taylor_corner(t, th, s);
    if (th > 1e-12 && s > 1e-12) return better(pp_direct(t, th, ph), ty);
    return ty.value;
  }
  if (th < edge) {
    const Cand ty = pp_taylor_edge(t, th, ph);
    if (th > 1e-12) return better(pp_direct(t, th, ph), ty);
    return ty.value;
  }
  return pp_direct(t, th, ph).value;
}

// (-1/2,1/2): G = e^{t/4} [eta(u) + eta(v)] / (2 cos(th/2) cos(ph/2)),
// u = (th-ph)/2, v = (th+ph)/2, eta at time t/4; singular toward th, ph = pi
Cand mp_direct(double t4, double th, double ph) {
  const double va = theta::eta(t4, 0.5 * (th - ph));
  const double vb = theta::eta(t4, 0.5 * (th + ph));
  const double num = va + vb;
  const double den = 2.0 * std::cos(0.5 * th) * std::cos(0.5 * ph);
  if (!(den > 0.0)) return {0.0, kHuge};
  const double err = 4e-16 * (std::fabs(va) + std::fabs(vb)) / std::max(std::fabs(num), 1e-300);
  return {std::exp(t4) * num / den, err};
}

// th -> pi with ph generic (p = (pi-th)/2, q = (pi-ph)/2):
// G = e^{t/4} [-eta'(q) - (p^2/6)(eta'''(q) + eta'(q))] / cos(ph/2)
Cand mp_taylor_edge(double t4, double p, double ph) {
  const double q = 0.5 * (M_PI - ph);
  const double e1 = theta::eta_deriv(1, t4, q);
  const double e3 = theta::eta_deriv(3, t4, q);
  const double corr = -p * p * (e3 + e1) / 6.0;
  const double rel = std::fabs(corr) / std::max(std::fabs(e1), 1e-300);
  return {std::exp(t4) * (-e1 + corr) / std::cos(0.5 * ph), rel * rel + 1e-16};
}

// th, ph -> pi simultaneously:
// G = -e^{t/4} [eta''(0)(1 + (p^2+q^2)/6) + eta''''(0)(p^2+q^2)/6] + O(edge^4)
Cand mp_taylor_corner(double t4, double p, double q) {
  const double e2 = theta::eta_deriv(2, t4, 0.0);
  const double e4 = theta::eta_deriv(4, t4, 0.0);
  const double r2 = p * p + q * q;
  const double rel = r2 * (std::fabs(e4) + std::fabs(e2)) / (6.0 * std::max(std::fabs(e2), 1e-300));
  const double val = -std::exp(t4) * (e2 * (1.0 + r2 / 6.0) + e4 * r2 / 6.0);
  return {val, rel * rel + 1e-16};
}

double kernel_mp(double t, double th, double ph) {
  if (th < ph) std::swap(th, ph);  // the larger angle carries the edge at pi
  const double t4 = 0.25 * t;
  const double p = 0.5 * (M_PI - th);
  const double q = 0.5 * (M_PI - ph);
  const double edge = 5e-4;  // in half-angle units
  if (p < edge && q < edge) {
    const Cand ty = mp_taylor_corner(t4, p, q);
    if (p > 1e-12 && q > 1e-12) return better(mp_direct(t4, th, ph), ty);
    return ty.value;
  }
  if (p < edge) {
    const Cand ty = mp_taylor_edge(t4, p, ph);
    if (p > 1e-12) return better(mp_direct(t4, th, ph), ty);
    return ty.value;
  }
  return mp_direct(t4, th, ph).value;
}

// ---------------------------------------------------------------------------
// product-measure reduction
// ---------------------------------------------------------------------------

struct Measure {
  std::vector<double> x, w;
};

const special::QuadratureRule& cached_pi_rule(double alpha, int nodes) {
  static std::map<std::pair<long long, int>, special::QuadratureRule> cache;
  static std::mutex guard;
  const std::pair<long long, int> key{std::llround(alpha * 1e12), nodes};
  std::lock_guard<std::mutex> lock(guard);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, special::gauss_jacobi_rule(alpha, nodes)).first;
  return it->second;
}

Measure pi_measure(double alpha, int nodes) {
  if (std::fabs(alpha + 0.5) < 1e-12) return {{-1.0, 1.0}, {0.5, 0.5}};
  const special::QuadratureRule& r = cached_pi_rule(alpha, nodes);
  return {r.nodes, r.weights};
}

bool near_nonneg_int(double v, long* out) {
  const long r = std::lround(v);
  if (std::fabs(v - r) < 1e-9 && r >= 0) {
    if (out) *out = r;
    return true;
  }
  return false;
}

// G^{lam,lam}_sigma(w, 1) for 2*lam integral, lam >= -1/2, any sigma > 0.
// Half-integer lam is the iterated-derivative route; integer lam reduces once
// more over dPi_lam to the half-integer parameter 2*lam + 1/2.
double ultra_pole_exact(double lam, double sigma, double w, int nodes) {
  w = clamp_unit(w, "reduction");
  if (near_nonneg_int(lam + 0.5, nullptr))
    return theta::g_ultra_half_int(lam, sigma, std::acos(w));
  long m = 0;
  if (!near_nonneg_int(lam, &m))
    throw std::domain_error("reduction: inner parameter must be a half-integer or an integer");
  const double lam2 = 2.0 * lam + 0.5;
  const double c = std::sqrt(0.5 * (1.0 + w));
  const Measure mv = pi_measure(lam, nodes);
  special::KahanSum s;
  for (std::size_t j = 0; j < mv.x.size(); ++j)
    s.add(mv.w[j] *
          theta::g_ultra_half_int(lam2, 0.25 * sigma,
                                  std::acos(clamp_unit(mv.x[j] * c, "reduction"))));
  return special::h0_ultra(lam2) / special::h0_ultra(lam) * s.value();
}

double inner_pole(double lam, double sigma, double w, int nodes, const EvalPolicy& policy) {
  if (near_nonneg_int(lam + 0.5, nullptr) || near_nonneg_int(lam, nullptr))
    return ultra_pole_exact(lam, sigma, w, nodes);
  return jacobi_kernel_series({lam, lam}, sigma, clamp_unit(w, "reduction"), 1.0, policy);
}

double reduction_value(const JacobiParams& p, double t, double th, double ph, const Measure& mu,
                       const Measure& mv, int nodes, const EvalPolicy& policy) {
  const double lam = p.lambda();
  const double ss = std::sin(0.5 * th) * std::sin(0.5 * ph);
  const double cc = std::cos(0.5 * th) * std::cos(0.5 * ph);
  auto inner = [&](double arg) { return inner_pole(lam, 0.25 * t, arg, nodes, policy); };
  special::KahanSum acc;
  if (ss < 1e-15) {
    for (std::size_t j = 0; j < mv.x.size(); ++j) acc.add(mv.w[j] * inner(mv.x[j] * cc));
  } else if (cc < 1e-15) {
    for (std::size_t i = 0; i < mu.x.size(); ++i) acc.add(mu.w[i] * inner(mu.x[i] * ss));
  } else {
    for (std::size_t i = 0; i < mu.x.size(); ++i)
      for (std::size_t j = 0; j < mv.x.size(); ++j)
        acc.add(mu.w[i] * mv.w[j] * inner(mu.x[i] * ss + mv.x[j] * cc));
  }
  return special::h0_ultra(lam) / special::jacobi_norm(0, p) * acc.value();
}

void reduction_checks(const JacobiParams& p, double t) {
  p.validate();
  if (!(p.alpha >= -0.5 - 1e-12 && p.beta >= -0.5 - 1e-12))
    throw std::domain_error("reduction_oracle: requires alpha, beta >= -1/2");
  if (!(t > 0.0)) throw std::domain_error("reduction_oracle: t must be positive");
}

double reduction_at(const JacobiParams& p, double t, double th, double ph, int nodes,
                    const EvalPolicy& policy) {
  return reduction_value(p, t, th, ph, pi_measure(p.alpha, nodes), pi_measure(p.beta, nodes),
                         nodes, policy);
}

// node ladder for production small-time use: accept on 1e-10 agreement of a
// doubling step, tolerate 1e-8 at the top of the ladder
double reduction_escalated(const JacobiParams& p, double t, double th, double ph,
                           const EvalPolicy& policy) {
  double prev = reduction_at(p, t, th, ph, 64, policy);
  double rel = kHuge;
  for (int nodes : {128, 256, 512}) {
    const double cur = reduction_at(p, t, th, ph, nodes, policy);
    rel = std::fabs(cur - prev) / std::max(std::fabs(cur), 1e-300);
    if (rel <= 1e-10) return cur;
    prev = cur;
  }
  if (rel <= 1e-8) return prev;
  throw accuracy_error("reduction quadrature: node escalation did not converge");
}

// G^{alpha,beta}_tau(cos th, 1) routed to the best evaluator
double g_pole(const JacobiParams& p, double tau, double th, const EvalPolicy& policy) {
  const int ca = half_class(p.alpha), cb = half_class(p.beta);
  if (ca != 0 && cb != 0) return jacobi_kernel_theta(p, tau, th, 0.0);
  if (p.alpha == p.beta && near_nonneg_int(p.alpha + 0.5, nullptr) && p.alpha <= 19.5)
    return theta::g_ultra_half_int(p.alpha, tau, th);
  if (tau >= 0.05) return jacobi_kernel_series(p, tau, std::cos(th), 1.0, policy);
  const double twol = 2.0 * p.lambda();
  if (p.alpha >= -0.5 && p.beta >= -0.5 && std::fabs(twol - std::lround(twol)) < 1e-9)
    return reduction_escalated(p, tau, th, 0.0, policy);
  return jacobi_kernel_series(p, tau, std::cos(th), 1.0, policy);
}

}  // namespace

// ---------------------------------------------------------------------------
// public evaluators
// ---------------------------------------------------------------------------

double jacobi_kernel_series(const JacobiParams& p, double t, double x, double y,
                            const EvalPolicy& policy) {
  return series_eval(p, t, x, y, policy, false);
}

double jacobi_kernel_series_tail(const JacobiParams& p, double t, double x, double y,
                                 const EvalPolicy& policy) {
  return series_eval(p, t, x, y, policy, true);
}

double jacobi_kernel_theta(const JacobiParams& p, double t, double theta_ang, double phi_ang) {
  if (!(t > 0.0)) throw std::domain_error("jacobi_kernel_theta: t must be positive");
  const double th = clamp_angle(theta_ang, "jacobi_kernel_theta");
  const double ph = clamp_angle(phi_ang, "jacobi_kernel_theta");
  const int ca = half_class(p.alpha), cb = half_class(p.beta);
  if (ca == 0 || cb == 0)
    throw std::domain_error(
        "jacobi_kernel_theta: closed forms exist only for parameters +-1/2");
  if (ca < 0 && cb < 0) return theta::theta(t, th - ph) + theta::theta(t, th + ph);
  if (ca > 0 && cb > 0) return kernel_pp(t, th, ph);
  if (ca < 0) return kernel_mp(t, th, ph);
  // (1/2,-1/2)(cos th, cos ph) = (-1/2,1/2)(cos(pi-th), cos(pi-ph))
  return kernel_mp(t, M_PI - th, M_PI - ph);
}

double h_kernel_series(double lambda, double t, double x, const EvalPolicy& policy) {
  policy.validate();
  if (!(lambda > -1.5 && lambda <= -1.0))
    throw std::domain_error("h_kernel_series: lambda must lie in (-3/2, -1]");
  if (!(t >= policy.t_floor))
    throw std::domain_error("h_kernel_series: t is below the small-time floor");
  x = clamp_unit(x, "h_kernel_series");

  const JacobiParams pl{lambda, lambda};
  const double g2 = special::gamma_fn(lambda + 2.0);
  const double front = std::pow(2.0, -2.0 * lambda - 1.0) / g2;
  special::KahanSum sum;
  sum.add(special::gamma_fn(lambda + 1.5) / (std::sqrt(M_PI) * g2));
  double c = (2.0 * lambda + 5.0) * special::gamma_fn(2.0 * lambda + 3.0) /
             special::gamma_fn(lambda + 3.0);
  int small_run = 0;
  for (int n = 1; n <= policy.max_terms; ++n) {
    const double en = std::exp(-2.0 * t * n * (2.0 * n + 2.0 * lambda + 1.0));
    sum.add(front * en * c * special::jacobi_poly(2 * n, pl, x));
    // generous power allowance for the even-degree polynomial sup
    const double maj = front * en * std::fabs(c) * 10.0 * std::pow(2.0 * n + 1.0, 2.5);
    if (maj < policy.tol * std::max(std::fabs(sum.value()), 1e-300)) {
      if (++small_run >= 3 && 4.0 * t * n >= 2.0) return sum.value();
    } else {
      small_run = 0;
    }
    const double nn = n;
    c *= ((4.0 * nn + 2.0 * lambda + 5.0) / (4.0 * nn + 2.0 * lambda + 1.0)) *
         ((2.0 * nn + 2.0 * lambda + 2.0) * (2.0 * nn + 2.0 * lambda + 1.0)) /
         ((2.0 * nn + lambda + 2.0) * (2.0 * nn + lambda + 1.0));
  }
  throw accuracy_error("h_kernel_series: no convergence within max_terms");
}

double reduction_oracle(const JacobiParams& p, double t, double theta_ang, double phi_ang,
                        const special::QuadratureRule* rule_u,
                        const special::QuadratureRule* rule_v) {
  reduction_checks(p, t);
  const double th = clamp_angle(theta_ang, "reduction_oracle");
  const double ph = clamp_angle(phi_ang, "reduction_oracle");
  auto measure_from = [](double alpha, const special::QuadratureRule* r) -> Measure {
    if (std::fabs(alpha + 0.5) < 1e-12) return {{-1.0, 1.0}, {0.5, 0.5}};
    if (r == nullptr)
      throw std::domain_error("reduction_oracle: a quadrature rule is required away from -1/2");
    return {r->nodes, r->weights};
  };
  const Measure mu = measure_from(p.alpha, rule_u);
  const Measure mv = measure_from(p.beta, rule_v);
  const int inner_nodes = static_cast<int>(std::max<std::size_t>(
      64, std::max(mu.x.size(), mv.x.size())));
  return reduction_value(p, t, th, ph, mu, mv, inner_nodes, EvalPolicy{});
}

double reduction_oracle(const JacobiParams& p, double t, double theta_ang, double phi_ang,
                        int nodes) {
  reduction_checks(p, t);
  if (nodes < 8) throw std::domain_error("reduction_oracle: need at least 8 nodes");
  const double th = clamp_angle(theta_ang, "reduction_oracle");
  const double ph = clamp_angle(phi_ang, "reduction_oracle");
  const EvalPolicy policy{};
  const double coarse = reduction_at(p, t, th, ph, nodes, policy);
  const double fine = reduction_at(p, t, th, ph, 2 * nodes, policy);
  if (std::fabs(coarse - fine) > 1e-8 * std::max(std::fabs(fine), 1e-300))
    throw accuracy_error("reduction_oracle: node doubling moved the value by more than 1e-8");
  return fine;
}

double sphere_kernel(int d, double t, double phi, const EvalPolicy& policy) {
  policy.validate();
  if (d < 1) throw std::domain_error("sphere_kernel: dimension must be at least 1");
  if (d > 41) throw std::domain_error("sphere_kernel: dimension capped at 41");
  if (!(t > 0.0)) throw std::domain_error("sphere_kernel: t must be positive");
  phi = clamp_angle(phi, "sphere_kernel");
  if (d % 2 == 1) return theta::sphere_kernel_odd((d - 1) / 2, t, phi);
  const double lam = 0.5 * d - 1.0;
  const double pref = special::gamma_fn(0.5 * d) / (2.0 * std::pow(M_PI, 0.5 * d));
  return pref * g_pole({lam, lam}, t, phi, policy);
}

int CrossSpace::antipodal_dim() const {
  switch (family) {
    case CrossFamily::sphere: return 0;
    case CrossFamily::real_projective: return dim - 1;
    case CrossFamily::complex_projective: return dim - 2;
    case CrossFamily::quaternionic_projective: return dim - 4;
    case CrossFamily::cayley_plane: return 8;
  }
  throw std::domain_error("CrossSpace: unknown family");
}

JacobiParams CrossSpace::jacobi() const {
  return {0.5 * dim - 1.0, 0.5 * (dim - antipodal_dim()) - 1.0};
}

double CrossSpace::volume() const {
  const double kd = std::pow(kappa(), dim);
  switch (family) {
    case CrossFamily::sphere:
      return 2.0 * std::pow(M_PI, 0.5 * (dim + 1)) / special::gamma_fn(0.5 * (dim + 1)) / kd;
    case CrossFamily::real_projective:
      return std::sqrt(M_PI) * std::pow(4.0 * M_PI, 0.5 * dim) /
             (kd * special::gamma_fn(0.5 * dim + 0.5));
    case CrossFamily::complex_projective:
      return std::pow(4.0 * M_PI, 0.5 * dim) / (kd * special::gamma_fn(0.5 * dim + 1.0));
    case CrossFamily::quaternionic_projective:
      return std::pow(4.0 * M_PI, 0.5 * dim) / (kd * special::gamma_fn(0.5 * dim + 2.0));
    case CrossFamily::cayley_plane:
      return 6.0 * std::pow(4.0 * M_PI, 8.0) / (kd * special::gamma_fn(12.0));
  }
  throw std::domain_error("CrossSpace: unknown family");
}

void CrossSpace::validate() const {
  if (!(diameter > 0.0)) throw std::domain_error("CrossSpace: diameter must be positive");
  switch (family) {
    case CrossFamily::sphere:
      if (dim < 1) throw std::domain_error("CrossSpace: sphere dimension must be at least 1");
      break;
    case CrossFamily::real_projective:
      if (dim < 1) throw std::domain_error("CrossSpace: real projective dimension must be >= 1");
      break;
    case CrossFamily::complex_projective:
      if (dim < 2 || dim % 2 != 0)
        throw std::domain_error("CrossSpace: complex projective dimension must be even, >= 2");
      break;
    case CrossFamily::quaternionic_projective:
      if (dim < 4 || dim % 4 != 0)
        throw std::domain_error(
            "CrossSpace: quaternionic projective dimension must be a positive multiple of 4");
      break;
    case CrossFamily::cayley_plane:
      if (dim != 16) throw std::domain_error("CrossSpace: the Cayley plane has dimension 16");
      break;
  }
}

double cross_kernel(const CrossSpace& space, double t, double dist, const EvalPolicy& policy) {
  space.validate();
  policy.validate();
  if (!(t > 0.0)) throw std::domain_error("cross_kernel: t must be positive");
  if (!(dist >= -1e-12 && dist <= space.diameter * (1.0 + 1e-12)))
    throw std::domain_error("cross_kernel: distance outside [0, diameter]");
  const double kap = space.kappa();
  const double th = clamp_angle(kap * std::min(std::max(dist, 0.0), space.diameter),
                                "cross_kernel");
  const double tau = kap * kap * t;
  const JacobiParams p = space.jacobi();
  return special::jacobi_norm(0, p) / space.volume() * g_pole(p, tau, th, policy);
}

double large_time_remainder(const JacobiParams& p, double t, double x, double y,
                            const EvalPolicy& policy) {
  if (!(t >= 2.0 * M_LN2 - 1e-12))
    throw std::domain_error("large_time_remainder: requires t >= 2 log 2");
  return special::jacobi_norm(0, p) * series_eval(p, t, x, y, policy, true);
}

double jacobi_kernel_auto(const JacobiParams& p, double t, double x, double y,
                          const EvalPolicy& policy) {
  p.validate();
  policy.validate();
  if (!(t > 0.0)) throw std::domain_error("jacobi_kernel_auto: t must be positive");
  x = clamp_unit(x, "jacobi_kernel_auto");
  y = clamp_unit(y, "jacobi_kernel_auto");
  const int ca = half_class(p.alpha), cb = half_class(p.beta);
  if (ca != 0 && cb != 0) return jacobi_kernel_theta(p, t, std::acos(x), std::acos(y));
  if (x == 1.0) return g_pole(p, t, std::acos(y), policy);
  if (y == 1.0) return g_pole(p, t, std::acos(x), policy);
  if (x == -1.0) return g_pole(p.swapped(), t, std::acos(-y), policy);
  if (y == -1.0) return g_pole(p.swapped(), t, std::acos(-x), policy);
  if (t >= 0.05) return jacobi_kernel_series(p, t, x, y, policy);
  const double twol = 2.0 * p.lambda();
  if (p.alpha >= -0.5 && p.beta >= -0.5 && std::fabs(twol - std::lround(twol)) < 1e-9)
    return reduction_escalated(p, t, std::acos(x), std::acos(y), policy);
  return jacobi_kernel_series(p, t, x, y, policy);
}

}  // namespace heatkit::kernels
