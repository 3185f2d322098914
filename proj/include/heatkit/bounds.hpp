#pragma once
// Envelope functions and the explicit multiplicative-constant pipeline: the
// arccos-square distance F, the Psi/Xi/Z envelopes, the step constants A-E,
// the assembled two-sided kernel constants with their reflected (G) and
// Chebyshev-quadratic (H) refinements, sphere and projective-space bounds,
// and the large/medium-time constants.  Every constant is evaluated from a
// declarative formula table by a tiny expression interpreter so each formula
// is transcribed exactly once; tests recompute them independently.

#include <heatkit/kernels.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace heatkit::bounds {

// Raised when a requested horizon T or variant flag is incompatible with the
// admissible rows of the half-integer base estimate.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Side { lower, upper };

struct BoundPair {
  double lower = 0.0;
  double upper = 0.0;
};

// bracket constants of the two-sided envelope: lower kappa = 1/2,
// upper kappa = 2/pi^2
inline constexpr double kappa_lower = 0.5;
inline constexpr double kappa_upper = 2.0 / (M_PI * M_PI);

// F(u,v) = arccos^2(u sin(theta/2)sin(phi/2) + v cos(theta/2)cos(phi/2));
// the argument is clamped to [-1,1] against roundoff.
double f_arccos_sq(double theta_ang, double phi_ang, double u, double v);

// Psi_alpha^kappa(t,theta,phi) = [D_alpha t v kappa theta phi]^{-alpha-1/2},
// alpha > -3/2; returns exactly 1 at alpha = -1/2.
double psi_envelope(double alpha, double kappa, double t, double theta_ang, double phi_ang);

// Xi^{alpha,beta}_kappa = Psi_alpha^kappa(t,theta,phi)
//   * Psi_beta^kappa(t,pi-theta,pi-phi) * t^{-1/2} exp(-(theta-phi)^2/(4t))
double xi_envelope(const JacobiParams& p, double kappa, double t, double theta_ang,
                   double phi_ang);

// Z^{alpha,beta} = [t+theta phi]^{-alpha-1/2} [t+(pi-theta)(pi-phi)]^{-beta-1/2}
//   * t^{-1/2} exp(-(theta-phi)^2/(4t))
double z_envelope(const JacobiParams& p, double t, double theta_ang, double phi_ang);

// One side of the kernel sandwich: constant * Xi_kappa, valid for t in
// (0, time_horizon] (the lower side of the assembled pair holds for all
// horizons; the recorded value is the one it was built for).
struct Envelope {
  double kappa = kappa_lower;
  double constant = 0.0;
  Side side = Side::lower;
  double time_horizon = 0.0;
  JacobiParams params{0.0, 0.0};

  double value(double t, double theta_ang, double phi_ang) const {
    return constant * xi_envelope(params, kappa, t, theta_ang, phi_ang);
  }
};

// --- scalar ledger symbols -------------------------------------------------

double w0();        // (1+21/500)/(1+256/(27 pi^3))
double w0_prime();  // 1.001 e
double w1();        // (pi/4)(1+256/(27 pi^3))

BoundPair kk_pair(double alpha);  // (k_alpha, K_alpha), alpha > -1
BoundPair ll_pair(double alpha);  // (l_alpha, L_alpha)
BoundPair nn_pair(double alpha);  // (n_alpha, N_alpha), alpha > -1/2
BoundPair mm_pair(double omega);  // (m_omega, M_omega), omega > 0
BoundPair bb_pair(double alpha);  // (b_alpha, B_alpha), alpha >= -1/2

// lam_breve = ceil(2 lam) - lam, the companion index of the two-sided
// integer-sum reduction; lam <= lam_breve < lam + 1
double lambda_breve(double lam);

// time windows of step C: omega_window is non-increasing, capital_omega_window
// is non-decreasing, and both lie in [e^{-(lam+3/4)t}, e^{(lam+1/2)t}]
double omega_window(double lam, double t);
double capital_omega_window(double lam, double t);

// q_lam(t) = 2(lam+1)(lam+2)e^{-t(lam+3/2)}, q~_lam(t) = 2(lam+2)e^{-t(lam+3/2)}
double q_factor(double lam, double t);
double q_factor_tilde(double lam, double t);

// --- step constants ----------------------------------------------------------

enum class Step { A, B, C, D, E };

// Rows of the half-integer base estimate's upper constant.  first_row is
// admissible for lam != -1/2 with T <= 1/(2 lam + 2); second_row for
// T <= 1/(2 lam + 2)^2; theta_row only at lam = +-1/2 with T <= pi^2/2.
// auto_pick prefers the widest admissible row (theta_row at +-1/2, else
// first_row); an explicitly requested row whose constraint fails raises
// config_error.
enum class CAVariant { auto_pick, first_row, second_row, theta_row };

// (lower, upper) constants of one pipeline step at its own horizon T:
//   A: endpoint kernel at half-integer lam, envelope t^{-lam-1} e^{-theta^2/4t}
//   B: endpoint kernel for pairs with integer alpha+beta (pass JacobiParams)
//   C: endpoint kernel for real lam > 0 via the companion pair (lam, lam_breve)
//   D: endpoint kernel for lam in (-1,0) from steps C at lam+1, lam+2
//   E: even-part kernel for lam in (-3/2,-1] from step B-or-C at lam+2
// The lambda overload reads step B at the ultraspherical pair (lam, lam).
BoundPair step_constants(Step step, double lam, double T,
                         CAVariant variant = CAVariant::auto_pick);
BoundPair step_constants(Step step, const JacobiParams& p, double T,
                         CAVariant variant = CAVariant::auto_pick);

// Assembled constants (c, C) of the two-sided sandwich
//   c Xi_{1/2} <= G_t <= C Xi_{2/pi^2},  0 < t <= T,
// dispatched over the five parameter regions (both >= -1/2; one below -1/2;
// both below with Lambda > -1 or Lambda <= -1).
BoundPair final_constants(const JacobiParams& p, double T,
                          CAVariant variant = CAVariant::auto_pick);

// The same pair packaged as evaluatable envelopes (lower, upper).
std::pair<Envelope, Envelope> final_envelopes(const JacobiParams& p, double T,
                                              CAVariant variant = CAVariant::auto_pick);

// Reflected endpoint constants (c_ref, C_ref) for alpha, beta >= -1/2 with
// alpha+beta+1 a nonnegative integer:
//   c_ref Psi_beta^{1/2}(t,pi-theta,pi) t^{-alpha-1} e^{-theta^2/4t} <= G_t(
//   cos theta, 1) <= C_ref Psi_beta^{2/pi^2}(t,pi-theta,pi) ...
BoundPair refined_constants_g(const JacobiParams& p, double T,
                              CAVariant variant = CAVariant::auto_pick);

// Quadratic-map endpoint constants for integer alpha >= 0 paired with -1/2;
// both envelope brackets are already resolved, so the bounds carry no Psi:
//   c_ref t^{-alpha-1} e^{-theta^2/4t} <= G_t^{alpha,-1/2}(cos theta, 1) <= C_ref ...
BoundPair refined_constants_h(int alpha, double T,
                              CAVariant variant = CAVariant::auto_pick);

// --- sphere and projective-space bounds -------------------------------------

struct SphereBounds {
  double lower_constant = 0.0;  // multiplies Psi^{1/2}(t,pi-phi,pi) (4 pi t)^{-d/2} e^{-phi^2/4t}
  double upper_constant = 0.0;  // multiplies Psi^{2/pi^2}(t,pi-phi,pi) (4 pi t)^{-d/2} e^{-phi^2/4t}
  double lower = 0.0;           // evaluated bounds at (t, phi)
  double upper = 0.0;
  double horizon = 0.0;         // admissible sup of t for the upper side
};

// Two-sided bounds for the heat kernel of the unit d-sphere at geodesic
// angle phi.  The lower bound holds for all t > 0; the upper requires
// t <= T <= horizon of the chosen row.  d = 1 and d = 2 use the theta_row
// constants; d >= 3 uses first_row (horizon 2/(d-1/2)) or second_row
// (horizon 1/(d-1/2)^2).
SphereBounds sphere_bounds(int d, double T, double t, double phi,
                           CAVariant variant = CAVariant::auto_pick);

enum class CrossVariant { horizon_one, horizon_two, special_small_d };

struct CrossBounds {
  std::optional<double> lower_constant;  // multiplies the Psi factor below; absent
                                         // when only the generic Gaussian lower holds
  double upper_constant = 0.0;
  double psi_index = 0.0;   // the Psi factors carry this type index (= beta)
  double lower = 0.0;       // evaluated bounds at (t, dist)
  double upper = 0.0;
  bool lower_is_generic = false;  // lower = (4 pi t)^{-d/2} e^{-dist^2/(4t)}
  double horizon = 0.0;           // admissible sup of t for the upper side
};

// Two-sided bounds for the heat kernel of a compact rank one symmetric space
// at geodesic distance dist.  horizon_one / horizon_two select the wide /
// narrow admissible-time rows; special_small_d selects the sharper
// theta-row route (real projective d in {2,3}); there T > 0 is the chosen
// horizon (default: the tightest legal one, kappa^2 T = kappa^2 t).
// Real projective spaces get the generic Gaussian lower bound, flagged.
CrossBounds cross_bounds(const kernels::CrossSpace& space, CrossVariant variant,
                         double t, double dist, double T = 0.0);

// --- large and medium times --------------------------------------------------

struct LargeTimeBounds {
  double remainder_bound = 0.0;  // upper bound on |E_t| where G = (1+E)/h0
  double threshold = 0.0;        // time beyond which |E| <= 1/2 is guaranteed
  bool sandwich = false;         // t >= max(threshold, 2 log 2)
  double h0 = 0.0;               // the constant the kernel converges to is 1/h0
};

// Bound on the relative large-time remainder, t >= 2 log 2.
LargeTimeBounds large_time_bounds(const JacobiParams& p, double t);

// Constants sandwiching G_t(x,y) for ALL t >= t0 and x,y in [-1,1], derived
// from the small-time pair (c, C) = base valid at horizon t0 by extremizing
// the envelope over the angle square and using conservativity.
BoundPair medium_time_bounds(const JacobiParams& p, double t0, const BoundPair& base);

// --- constant ledger ----------------------------------------------------------

struct LedgerEntry {
  std::string symbol;
  std::string table;       // "num", "par", "fun" or "steps"
  double value = 0.0;
  std::string derivation;  // formula text or assembling rule
};

// Immutable tabulation of every constant the pipeline uses for a fixed
// (alpha, beta, T, variant), grouped like the reference tables: fixed
// numerics, parametric constants, auxiliary function values at T, and the
// step/final constants with their derivations.
class ConstantLedger {
 public:
  static ConstantLedger build(const JacobiParams& p, double T,
                              CAVariant variant = CAVariant::auto_pick);

  const std::vector<LedgerEntry>& entries() const { return entries_; }
  bool has(const std::string& symbol) const;
  double value(const std::string& symbol) const;  // throws std::out_of_range
  const JacobiParams& params() const { return params_; }
  double horizon() const { return horizon_; }

  // JSON document with tables "num", "par", "fun", "steps"; each entry is
  // {"value": ..., "derivation": ...} under its symbol key.
  std::string to_json(int indent = 2) const;

 private:
  JacobiParams params_{0.0, 0.0};
  double horizon_ = 0.0;
  std::vector<LedgerEntry> entries_;
};

// the formula text behind a declarative-table symbol (empty if unknown);
// exposed so tests can assert the table and the interpreter agree.
std::string formula_text(const std::string& name);

// evaluate a formula-table expression with the given symbol bindings;
// exposed for the double-entry tests.
double eval_formula(const std::string& expr,
                    const std::vector<std::pair<std::string, double>>& env);

}  // namespace heatkit::bounds
