#include <heatkit/bounds.hpp>
#include <heatkit/special.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace heatkit::bounds {

namespace {

constexpr double kMemberTol = 1e-12;   // lattice-membership tolerance
constexpr double kWarnTol = 1e-8;      // near-boundary warning band
constexpr double kHorizonSlack = 1e-9; // relative slack for horizon comparisons

using Env = std::vector<std::pair<std::string, double>>;

std::string num_str(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// ---------------------------------------------------------------------------
// expression interpreter for the declarative formula table

class Interp {
 public:
  Interp(const std::string& text, const Env& env) : s_(text), env_(env) {}

  double run() {
    double v = sum();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  const std::string& s_;
  const Env& env_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::logic_error("formula \"" + s_ + "\" at offset " +
                           std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double sum() {
    double v = product();
    for (;;) {
      if (eat('+'))
        v += product();
      else if (eat('-'))
        v -= product();
      else
        return v;
    }
  }

  double product() {
    double v = unary();
    for (;;) {
      if (eat('*'))
        v *= unary();
      else if (eat('/'))
        v /= unary();
      else
        return v;
    }
  }

  double unary() {
    if (eat('-')) return -unary();
    return power();
  }

  double power() {
    double base = atom();
    if (eat('^')) return std::pow(base, unary());
    return base;
  }

  double atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      double v = sum();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return symbol();
    fail("unexpected character");
  }

  double number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
      ++pos_;
    return std::stod(s_.substr(start, pos_ - start));
  }

  double symbol() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    skip();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      std::vector<double> args;
      args.push_back(sum());
      while (eat(',')) args.push_back(sum());
      if (!eat(')')) fail("expected ')' closing arguments of " + name);
      return call(name, args);
    }
    if (name == "pi") return M_PI;
    if (name == "e") return M_E;
    if (name == "euler") return special::euler_gamma;
    for (const auto& [key, value] : env_)
      if (key == name) return value;
    fail("unknown symbol " + name);
  }

  double call(const std::string& name, const std::vector<double>& a) {
    auto arity = [&](std::size_t n) {
      if (a.size() != n) fail(name + " expects " + std::to_string(n) + " argument(s)");
    };
    if (name == "exp") { arity(1); return std::exp(a[0]); }
    if (name == "log") { arity(1); return std::log(a[0]); }
    if (name == "sqrt") { arity(1); return std::sqrt(a[0]); }
    if (name == "abs") { arity(1); return std::abs(a[0]); }
    if (name == "ceil") { arity(1); return std::ceil(a[0]); }
    if (name == "gamma") { arity(1); return special::gamma_fn(a[0]); }
    if (name == "min" || name == "max") {
      if (a.size() < 2) fail(name + " expects at least two arguments");
      double v = a[0];
      for (std::size_t i = 1; i < a.size(); ++i)
        v = (name == "min") ? std::min(v, a[i]) : std::max(v, a[i]);
      return v;
    }
    fail("unknown function " + name);
  }
};

const std::map<std::string, std::string>& formula_table() {
  static const std::map<std::string, std::string> table = {
      // fixed numerics
      {"frak_b", "2/pi^2"},
      {"frak_B", "1/2"},
      {"w0", "(1+21/500)/(1+256/(27*pi^3))"},
      {"w0_prime", "(1+1/1000)*e"},
      {"w1", "(pi/4)*(1+256/(27*pi^3))"},
      // parametric constants
      {"k_alpha", "2^(al-1/2)*abs(al+1/2)*gamma(al+1)/(sqrt(pi)*gamma(al+3/2))"},
      {"K_alpha", "gamma(al+1)/(sqrt(pi)*gamma(al+3/2))"},
      {"l_alpha", "abs(al+1/2)/(4*(al+1)*(al+2))"},
      {"L_alpha", "1/((al+1)*(al+2))"},
      {"n_alpha", "min(1,2^(1/2-al))*sqrt(pi)*gamma(al+1/2)/gamma(al+1)"},
      {"N_alpha", "max(1,2^(1/2-al))*sqrt(pi)*gamma(al+1/2)/gamma(al+1)"},
      {"m_omega", "(1-2^(-om))/(e*om)"},
      {"M_omega", "2/((1-1/e)^2*om)"},
      {"D_alpha", "gamma(al+3/2)^(1/(al+1/2))"},
      {"D_alpha_limit", "exp(-euler)"},
      {"E_alpha", "(al+1/2)/e+exp(-euler)"},
      {"b_alpha", "min(1,2^(al-1/2))*(gamma(al+1)/sqrt(pi))*exp(-D)"},
      {"B_alpha", "max(1,2^(al-1/2))*gamma(al+1)/sqrt(pi)"},
      {"h0_jacobi", "2^(al+be+1)*gamma(al+1)*gamma(be+1)/gamma(al+be+2)"},
      {"h0_ultra", "sqrt(pi)*gamma(lam+1)/gamma(lam+3/2)"},
      {"lambda_breve", "ceil(2*lam)-lam"},
      // auxiliary functions of (lam, t)
      {"omega_window",
       "2^(ceil(2*lam)/2-lam)*exp((lam-ceil(2*lam)/2)*(lam+ceil(2*lam)/2+1)*t)"},
      {"capital_omega_window",
       "2^(ceil(2*lam)/2-lam-1/2)*exp((lam-ceil(2*lam)/2+1/2)*(lam+ceil(2*lam)/2+1/2)*t)"},
      {"q_factor", "2*(lam+1)*(lam+2)*exp(-t*(lam+3/2))"},
      {"q_factor_tilde", "2*(lam+2)*exp(-t*(lam+3/2))"},
      // step constants
      {"c_A", "1/(4^(lam+1/2)*gamma(lam+1))"},
      {"C_A_first", "w0*(sqrt(e)*w1/2)^(lam+1/2)/gamma(lam+1)"},
      {"C_A_second", "exp(1/4)*w0p*(pi/8)^(lam+1/2)/gamma(lam+1)"},
      {"C_A_theta_minus", "(1+2*exp(-pi^2/(2*T)))/gamma(lam+1)"},
      {"C_A_theta_plus", "pi*exp(T)/8/gamma(lam+1)"},
      {"c_B", "cA*4^(al+be+3/2)*b_be/max(D_be*T,frak_B*pi^2)^(be+1/2)*h0r"},
      {"C_B", "CA*4^(al+be+2)*B_be/(frak_b*pi^2/2)^(be+1/2)*h0r"},
      {"c_C", "cB*om"},
      {"C_C", "CB*Om"},
      {"c_D",
       "8*(lam+1)/pi*exp(-(2*lam+2)*T)*min(cC1,cC2*m2*(8*(lam+2)/pi)*exp(-(2*lam+4)*T))"},
      {"C_D",
       "4*(lam+1)*max(CC1,CC2*M2*(16*(lam+2)/pi^2)*(16*T/pi^2+1)^(lam+1))"},
      {"c_E",
       "32*(1-1/e)/pi^2*(lam+2)*exp(-(4*lam+6)*T)*c2*min(2*m2*(16*T/pi^2+1)^(lam+1),1)"},
      {"C_E", "16*(lam+2)*C2*max(4/pi^2*M2,1)"},
      // assembled constants, by parameter region
      {"c_F1", "c0*4^(L+1)*b_al*b_be*h0r"},
      {"C_F1", "C0*4^(L+2)*B_al*B_be*h0r"},
      {"c_F2",
       "4^(L+1/2)*b_out*min(c2*qT*(4*D_in/(pi^2*D_in2))^2*4/frak_B^2*l_in*b_in2,"
       "c0*D_in^(nu+1/2))*h0r"},
      {"C_F2",
       "4^(L+3/2)*B_out*(C2*q0*4/frak_b^2*L_in*B_in2+C0*D_in^(nu+1/2))*h0r"},
      {"c_F4",
       "4^(L+1)*min("
       "c4*q2T*qT*(2/pi)^8*l_al*l_be*b_al2*b_be2*(2*D_al*D_be/(D_al2*D_be2*frak_B^2))^2,"
       "c2*qT*(2/pi)^4/frak_B^2*min((D_al/D_al2)^2*D_be^(be+1/2)*l_al*b_al2,"
       "(D_be/D_be2)^2*D_al^(al+1/2)*l_be*b_be2),"
       "c0/4*D_al^(al+1/2)*D_be^(be+1/2))*h0r"},
      {"C_F4",
       "4^(L+2)*("
       "C4*q20*q0*4/frak_b^4*L_al*L_be*B_al2*B_be2"
       "+C2*q0/frak_b^2*(L_al*B_al2*D_be^(be+1/2)+L_be*B_be2*D_al^(al+1/2))"
       "+C0/4*D_al^(al+1/2)*D_be^(be+1/2))*h0r"},
      {"c_F5",
       "4^(L+1)*min("
       "c4*q2T*qtT*(2/pi)^8*l_al*l_be*b_al2*b_be2*(2*D_al*D_be/(D_al2*D_be2*frak_B^2))^2,"
       "c2*qtT*(2/pi)^4/frak_B^2*min((D_al/D_al2)^2*D_be^(be+1/2)*l_al*b_al2,"
       "(D_be/D_be2)^2*D_al^(al+1/2)*l_be*b_be2),"
       "c0/2*D_al^(al+1/2)*D_be^(be+1/2))*tail"},
      {"C_F5",
       "4^(L+2)*("
       "C4*q20*qt0*4/frak_b^4*L_al*L_be*B_al2*B_be2"
       "+C2*qt0/frak_b^2*(L_al*B_al2*D_be^(be+1/2)+L_be*B_be2*D_al^(al+1/2))"
       "+C0/4*D_al^(al+1/2)*D_be^(be+1/2))*tail"},
      {"tail_low_lambda", "sqrt(pi)*gamma(L+2)/(h0ab*gamma(L+3/2))"},
      // reflected and quadratic-map endpoint constants
      {"c_G", "cA*4^(al+be+3/2)*b_be*h0r"},
      {"C_G", "CA*4^(al+be+2)*B_be*h0r"},
      {"c_H", "cA*2*(32/max(D_al*T/4,frak_B*pi^2))^(al+1/2)*b_al*h0r"},
      {"C_H", "CA*8*(64/(frak_b*pi^2))^(al+1/2)*B_al*h0r"},
  };
  return table;
}

double table_eval(const std::string& name, const Env& env) {
  return Interp(formula_table().at(name), env).run();
}

// lattice helpers (tolerance kMemberTol)

bool near_value(double x, double v) { return std::abs(x - v) <= kMemberTol; }

bool is_nonneg_integer(double x) {
  double r = std::round(x);
  return std::abs(x - r) <= kMemberTol && r >= -0.5;
}

// member of {-1/2, 1/2, 3/2, ...}
bool is_nat_minus_half(double lam) { return is_nonneg_integer(lam + 0.5); }

double snap_half(double x) {
  double r = std::round(2.0 * x) / 2.0;
  return std::abs(x - r) <= kMemberTol ? r : x;
}

double dd(double alpha) { return special::d_alpha(snap_half(alpha)); }

double bb_lower(double alpha) {
  alpha = snap_half(alpha);
  if (alpha == -0.5) return 0.5;
  return table_eval("b_alpha", {{"al", alpha}, {"D", dd(alpha)}});
}

double bb_upper(double alpha) {
  alpha = snap_half(alpha);
  if (alpha == -0.5) return 0.5;
  return table_eval("B_alpha", {{"al", alpha}});
}

double h0_pair(const JacobiParams& p) { return special::jacobi_norm(0, p); }

// ---------------------------------------------------------------------------
// step constants with an optional evaluation trace

struct Trace {
  std::vector<LedgerEntry>* out = nullptr;
  void add(const std::string& symbol, double value, const std::string& derivation) const {
    if (out) out->push_back({symbol, "steps", value, derivation});
  }
};

struct ARow {
  CAVariant row;
  double horizon;
  const char* name;
};

ARow resolve_a(double lam, double T, CAVariant variant) {
  const bool minus_half = near_value(lam, -0.5);
  const bool plus_half = near_value(lam, 0.5);
  const double h_first = 1.0 / (2.0 * lam + 2.0);
  const double h_second = h_first * h_first;
  const double h_theta = M_PI * M_PI / 2.0;
  auto fits = [&](double h) { return T <= h * (1.0 + kHorizonSlack); };
  auto reject = [&](const std::string& why) -> ARow {
    throw config_error("step A: " + why + " (lambda=" + num_str(lam) + ", T=" + num_str(T) +
                       "; admissible horizons: first row " + num_str(h_first) +
                       ", second row " + num_str(h_second) +
                       (minus_half || plus_half ? ", theta row " + num_str(h_theta) : "") + ")");
  };
  switch (variant) {
    case CAVariant::first_row:
      if (minus_half) return reject("first row not admissible at lambda = -1/2");
      if (!fits(h_first)) return reject("first row requires T <= 1/(2 lambda + 2)");
      return {CAVariant::first_row, h_first, "first row"};
    case CAVariant::second_row:
      if (!fits(h_second)) return reject("second row requires T <= 1/(2 lambda + 2)^2");
      return {CAVariant::second_row, h_second, "second row"};
    case CAVariant::theta_row:
      if (!minus_half && !plus_half)
        return reject("theta row only applies at lambda = -1/2 or 1/2");
      if (!fits(h_theta)) return reject("theta row requires T <= pi^2/2");
      return {CAVariant::theta_row, h_theta, "theta row"};
    case CAVariant::auto_pick:
      if ((minus_half || plus_half) && fits(h_theta))
        return {CAVariant::theta_row, h_theta, "theta row"};
      if (!minus_half && fits(h_first)) return {CAVariant::first_row, h_first, "first row"};
      if (fits(h_second)) return {CAVariant::second_row, h_second, "second row"};
      return reject("no admissible upper-bound row");
  }
  return reject("unhandled variant");
}

BoundPair step_a_impl(double lam, double T, CAVariant variant, const Trace& tr) {
  if (!(T > 0.0)) throw std::domain_error("step A: requires T > 0");
  if (!is_nat_minus_half(lam))
    throw std::domain_error("step A: requires lambda in {-1/2, 1/2, 3/2, ...}; got lambda=" +
                            num_str(lam));
  lam = snap_half(lam);
  const ARow row = resolve_a(lam, T, variant);
  const double lower = table_eval("c_A", {{"lam", lam}});
  double upper = 0.0;
  switch (row.row) {
    case CAVariant::first_row:
      upper = table_eval("C_A_first", {{"lam", lam}, {"w0", w0()}, {"w1", w1()}});
      break;
    case CAVariant::second_row:
      upper = table_eval("C_A_second", {{"lam", lam}, {"w0p", w0_prime()}});
      break;
    case CAVariant::theta_row:
      upper = near_value(lam, -0.5) ? table_eval("C_A_theta_minus", {{"lam", lam}, {"T", T}})
                                    : table_eval("C_A_theta_plus", {{"lam", lam}, {"T", T}});
      break;
    default:
      break;
  }
  tr.add("c_A(" + num_str(lam) + ")", lower, "half-integer base lower constant, any horizon");
  tr.add("C_A(" + num_str(lam) + ")", upper,
         std::string("half-integer base upper constant, ") + row.name +
             ", horizon T=" + num_str(T));
  return {lower, upper};
}

BoundPair step_b_impl(const JacobiParams& p, double T, CAVariant variant, const Trace& tr) {
  if (!(T > 0.0)) throw std::domain_error("step B: requires T > 0");
  if (p.alpha < -0.5 - kMemberTol || p.beta < -0.5 - kMemberTol)
    throw std::domain_error("step B: requires alpha, beta >= -1/2; got alpha=" +
                            num_str(p.alpha) + ", beta=" + num_str(p.beta));
  const double s = p.alpha + p.beta;
  if (!is_nonneg_integer(s))
    throw std::domain_error(
        "step B: requires alpha + beta a nonnegative integer; got alpha+beta=" + num_str(s));
  const double lam_a = std::round(s) + 0.5;
  const BoundPair a = step_a_impl(lam_a, T / 4.0, variant, tr);
  const double h0r = special::h0_ultra(lam_a) / h0_pair(p);
  const Env env = {{"cA", a.lower},          {"CA", a.upper},
                   {"al", p.alpha},          {"be", p.beta},
                   {"b_be", bb_lower(p.beta)}, {"B_be", bb_upper(p.beta)},
                   {"D_be", dd(p.beta)},     {"T", T},
                   {"frak_b", kappa_upper},  {"frak_B", kappa_lower},
                   {"h0r", h0r}};
  const BoundPair out{table_eval("c_B", env), table_eval("C_B", env)};
  const std::string args = "(" + num_str(p.alpha) + "," + num_str(p.beta) + ")";
  tr.add("c_B" + args, out.lower, "integer-sum pair lower constant, horizon T=" + num_str(T));
  tr.add("C_B" + args, out.upper, "integer-sum pair upper constant, horizon T=" + num_str(T));
  return out;
}

BoundPair step_c_impl(double lam, double T, CAVariant variant, const Trace& tr) {
  if (!(T > 0.0)) throw std::domain_error("step C: requires T > 0");
  if (!(lam > 0.0)) throw std::domain_error("step C: requires lambda > 0; got lambda=" + num_str(lam));
  const double breve = lambda_breve(lam);
  const BoundPair low_pair = step_b_impl({lam, breve}, T, variant, tr);
  const BoundPair up_pair = step_b_impl({lam, breve - 1.0}, T, variant, tr);
  const Env env = {{"cB", low_pair.lower},
                   {"CB", up_pair.upper},
                   {"om", omega_window(lam, T)},
                   {"Om", capital_omega_window(lam, T)}};
  const BoundPair out{table_eval("c_C", env), table_eval("C_C", env)};
  tr.add("c_C(" + num_str(lam) + ")", out.lower,
         "companion-pair lower constant via (" + num_str(lam) + "," + num_str(breve) +
             "), horizon T=" + num_str(T));
  tr.add("C_C(" + num_str(lam) + ")", out.upper,
         "companion-pair upper constant via (" + num_str(lam) + "," + num_str(breve - 1.0) +
             "), horizon T=" + num_str(T));
  return out;
}

BoundPair step_d_impl(double lam, double T, CAVariant variant, const Trace& tr) {
  if (!(T > 0.0)) throw std::domain_error("step D: requires T > 0");
  if (!(lam > -1.0 && lam < 0.0))
    throw std::domain_error("step D: requires lambda in (-1, 0); got lambda=" + num_str(lam));
  const BoundPair c1 = step_c_impl(lam + 1.0, T, variant, tr);
  const BoundPair c2 = step_c_impl(lam + 2.0, T, variant, tr);
  const BoundPair m2 = mm_pair(lam + 2.0);
  const Env env = {{"lam", lam},      {"T", T},
                   {"cC1", c1.lower}, {"cC2", c2.lower},
                   {"CC1", c1.upper}, {"CC2", c2.upper},
                   {"m2", m2.lower},  {"M2", m2.upper}};
  const BoundPair out{table_eval("c_D", env), table_eval("C_D", env)};
  tr.add("c_D(" + num_str(lam) + ")", out.lower,
         "negative-index lower constant, horizon T=" + num_str(T));
  tr.add("C_D(" + num_str(lam) + ")", out.upper,
         "negative-index upper constant, horizon T=" + num_str(T));
  return out;
}

BoundPair step_e_impl(double lam, double T, CAVariant variant, const Trace& tr) {
  if (!(T > 0.0)) throw std::domain_error("step E: requires T > 0");
  if (!(lam > -1.5 && lam <= -1.0 + kMemberTol))
    throw std::domain_error("step E: requires lambda in (-3/2, -1]; got lambda=" + num_str(lam));
  const double shifted = lam + 2.0;
  const BoundPair sub = near_value(shifted, 1.0)
                            ? step_b_impl({1.0, 1.0}, T, variant, tr)
                            : step_c_impl(shifted, T, variant, tr);
  const BoundPair m2 = mm_pair(shifted);
  const Env env = {{"lam", lam},      {"T", T},        {"c2", sub.lower},
                   {"C2", sub.upper}, {"m2", m2.lower}, {"M2", m2.upper}};
  const BoundPair out{table_eval("c_E", env), table_eval("C_E", env)};
  tr.add("c_E(" + num_str(lam) + ")", out.lower,
         "even-part kernel lower constant, horizon T=" + num_str(T));
  tr.add("C_E(" + num_str(lam) + ")", out.upper,
         "even-part kernel upper constant, horizon T=" + num_str(T));
  return out;
}

// base-step dispatch over the index lattice
Step classify_star(double lam) {
  const double half_dist = std::abs(lam - std::round(2.0 * lam) / 2.0);
  if (half_dist > kMemberTol && half_dist <= kWarnTol)
    std::cerr << "heatkit: base-step index " << lam << " lies within " << half_dist
              << " of the half-integer lattice; dispatching on the exact value\n";
  if (is_nat_minus_half(lam)) return Step::A;
  if (is_nonneg_integer(lam)) return Step::B;
  if (lam > 0.0) return Step::C;
  if (lam > -1.0 + kMemberTol) return Step::D;
  if (lam > -1.5 + kMemberTol) return Step::E;
  throw std::domain_error("base step dispatch: index " + num_str(lam) +
                          " is below the admissible range (-3/2, infinity)");
}

BoundPair star_constants(double lam, double T, CAVariant variant, const Trace& tr) {
  switch (classify_star(lam)) {
    case Step::A: return step_a_impl(lam, T, variant, tr);
    case Step::B: return step_b_impl({lam, lam}, T, variant, tr);
    case Step::C: return step_c_impl(lam, T, variant, tr);
    case Step::D: return step_d_impl(lam, T, variant, tr);
    case Step::E: return step_e_impl(lam, T, variant, tr);
  }
  throw std::logic_error("base step dispatch: unreachable");
}

// ---------------------------------------------------------------------------
// assembled constants

BoundPair bullet_both_high(const JacobiParams& p, double T, CAVariant v, const Trace& tr) {
  const double L = p.lambda();
  const BoundPair s0 = star_constants(L, T / 4.0, v, tr);
  const double h0r = special::h0_ultra(L) / h0_pair(p);
  const Env env = {{"c0", s0.lower},           {"C0", s0.upper},
                   {"L", L},                   {"b_al", bb_lower(p.alpha)},
                   {"b_be", bb_lower(p.beta)}, {"B_al", bb_upper(p.alpha)},
                   {"B_be", bb_upper(p.beta)}, {"h0r", h0r}};
  return {table_eval("c_F1", env), table_eval("C_F1", env)};
}

BoundPair bullet_mixed(const JacobiParams& p, double good, double low, double T, CAVariant v,
                       const Trace& tr) {
  const double L = p.lambda();
  const BoundPair s0 = star_constants(L, T / 4.0, v, tr);
  const BoundPair s2 = star_constants(L + 2.0, T / 4.0, v, tr);
  const double h0r = special::h0_ultra(L) / h0_pair(p);
  const Env env = {{"c0", s0.lower},         {"C0", s0.upper},
                   {"c2", s2.lower},         {"C2", s2.upper},
                   {"qT", q_factor(L, T)},   {"q0", q_factor(L, 0.0)},
                   {"L", L},                 {"nu", low},
                   {"b_out", bb_lower(good)}, {"B_out", bb_upper(good)},
                   {"D_in", dd(low)},        {"D_in2", dd(low + 2.0)},
                   {"l_in", ll_pair(low).lower}, {"L_in", ll_pair(low).upper},
                   {"b_in2", bb_lower(low + 2.0)}, {"B_in2", bb_upper(low + 2.0)},
                   {"frak_b", kappa_upper},  {"frak_B", kappa_lower},
                   {"h0r", h0r}};
  return {table_eval("c_F2", env), table_eval("C_F2", env)};
}

BoundPair bullet_both_low(const JacobiParams& p, double T, CAVariant v, const Trace& tr) {
  const double L = p.lambda();
  const bool low_lambda = !(L > -1.0 + kMemberTol);
  const BoundPair s0 = star_constants(L, T / 4.0, v, tr);
  const BoundPair s2 = star_constants(L + 2.0, T / 4.0, v, tr);
  const BoundPair s4 = star_constants(L + 4.0, T / 4.0, v, tr);
  Env env = {{"c0", s0.lower},   {"C0", s0.upper},
             {"c2", s2.lower},   {"C2", s2.upper},
             {"c4", s4.lower},   {"C4", s4.upper},
             {"q2T", q_factor(L + 2.0, T)}, {"q20", q_factor(L + 2.0, 0.0)},
             {"L", L},           {"al", p.alpha},
             {"be", p.beta},     {"D_al", dd(p.alpha)},
             {"D_be", dd(p.beta)}, {"D_al2", dd(p.alpha + 2.0)},
             {"D_be2", dd(p.beta + 2.0)}, {"l_al", ll_pair(p.alpha).lower},
             {"l_be", ll_pair(p.beta).lower}, {"L_al", ll_pair(p.alpha).upper},
             {"L_be", ll_pair(p.beta).upper}, {"b_al2", bb_lower(p.alpha + 2.0)},
             {"b_be2", bb_lower(p.beta + 2.0)}, {"B_al2", bb_upper(p.alpha + 2.0)},
             {"B_be2", bb_upper(p.beta + 2.0)}, {"frak_b", kappa_upper},
             {"frak_B", kappa_lower}};
  if (low_lambda) {
    env.emplace_back("qtT", q_factor_tilde(L, T));
    env.emplace_back("qt0", q_factor_tilde(L, 0.0));
    env.emplace_back("tail", table_eval("tail_low_lambda", {{"L", L}, {"h0ab", h0_pair(p)}}));
    return {table_eval("c_F5", env), table_eval("C_F5", env)};
  }
  env.emplace_back("qT", q_factor(L, T));
  env.emplace_back("q0", q_factor(L, 0.0));
  env.emplace_back("h0r", special::h0_ultra(L) / h0_pair(p));
  return {table_eval("c_F4", env), table_eval("C_F4", env)};
}

BoundPair final_impl(const JacobiParams& p, double T, CAVariant v, const Trace& tr) {
  p.validate();
  if (!(T > 0.0)) throw std::domain_error("final constants: requires T > 0");
  const bool alpha_low = p.alpha < -0.5 - kMemberTol;
  const bool beta_low = p.beta < -0.5 - kMemberTol;
  BoundPair out{};
  const char* region = "";
  if (!alpha_low && !beta_low) {
    out = bullet_both_high(p, T, v, tr);
    region = "both indices at least -1/2";
  } else if (!alpha_low && beta_low) {
    out = bullet_mixed(p, p.alpha, p.beta, T, v, tr);
    region = "beta below -1/2";
  } else if (alpha_low && !beta_low) {
    out = bullet_mixed(p, p.beta, p.alpha, T, v, tr);
    region = "alpha below -1/2";
  } else {
    out = bullet_both_low(p, T, v, tr);
    region = p.lambda() > -1.0 + kMemberTol ? "both indices below -1/2, Lambda > -1"
                                            : "both indices below -1/2, Lambda <= -1";
  }
  tr.add("c_final", out.lower,
         std::string("assembled lower sandwich constant, region: ") + region +
             ", horizon T=" + num_str(T));
  tr.add("C_final", out.upper,
         std::string("assembled upper sandwich constant, region: ") + region +
             ", horizon T=" + num_str(T));
  return out;
}

BoundPair refined_g_impl(const JacobiParams& p, double T, CAVariant v, const Trace& tr) {
  if (!(T > 0.0)) throw std::domain_error("reflected endpoint constants: requires T > 0");
  if (p.alpha < -0.5 - kMemberTol || p.beta < -0.5 - kMemberTol)
    throw std::domain_error("reflected endpoint constants: requires alpha, beta >= -1/2");
  const double s = p.alpha + p.beta;
  if (!is_nonneg_integer(s + 1.0))
    throw std::domain_error(
        "reflected endpoint constants: requires alpha + beta + 1 a nonnegative integer; "
        "got alpha+beta=" + num_str(s));
  const double lam_a = std::round(s + 1.0) - 0.5;
  const BoundPair a = step_a_impl(lam_a, T / 4.0, v, tr);
  const double h0r = special::h0_ultra(lam_a) / h0_pair(p);
  const Env env = {{"cA", a.lower},  {"CA", a.upper},
                   {"al", p.alpha},  {"be", p.beta},
                   {"b_be", bb_lower(p.beta)}, {"B_be", bb_upper(p.beta)},
                   {"h0r", h0r}};
  const BoundPair out{table_eval("c_G", env), table_eval("C_G", env)};
  const std::string args = "(" + num_str(p.alpha) + "," + num_str(p.beta) + ")";
  tr.add("c_ref" + args, out.lower, "reflected endpoint lower constant, any horizon");
  tr.add("C_ref" + args, out.upper,
         "reflected endpoint upper constant, horizon T=" + num_str(T));
  return out;
}

BoundPair refined_h_impl(int alpha, double T, CAVariant v, const Trace& tr) {
  if (alpha < 0)
    throw std::domain_error(
        "quadratic-map endpoint constants: requires integer alpha >= 0; got alpha=" +
        std::to_string(alpha));
  if (!(T > 0.0)) throw std::domain_error("quadratic-map endpoint constants: requires T > 0");
  const double al = alpha;
  const double lam_a = 2.0 * al + 0.5;
  const BoundPair a = step_a_impl(lam_a, T / 16.0, v, tr);
  const double h0r = special::h0_ultra(lam_a) / special::h0_ultra(al);
  const Env env = {{"cA", a.lower},  {"CA", a.upper},  {"al", al},
                   {"b_al", bb_lower(al)}, {"B_al", bb_upper(al)},
                   {"D_al", dd(al)}, {"T", T},
                   {"frak_b", kappa_upper}, {"frak_B", kappa_lower},
                   {"h0r", h0r}};
  const BoundPair out{table_eval("c_H", env), table_eval("C_H", env)};
  const std::string args = "(" + std::to_string(alpha) + ",-1/2)";
  tr.add("c_ref" + args, out.lower,
         "quadratic-map endpoint lower constant, horizon T=" + num_str(T));
  tr.add("C_ref" + args, out.upper,
         "quadratic-map endpoint upper constant, horizon T=" + num_str(T));
  return out;
}

double a_row_horizon(double lam_a, double T_a, CAVariant v) {
  return resolve_a(snap_half(lam_a), T_a, v).horizon;
}

}  // namespace

// ---------------------------------------------------------------------------
// envelopes

double f_arccos_sq(double theta_ang, double phi_ang, double u, double v) {
  const double arg = u * std::sin(theta_ang / 2.0) * std::sin(phi_ang / 2.0) +
                     v * std::cos(theta_ang / 2.0) * std::cos(phi_ang / 2.0);
  const double a = std::acos(std::clamp(arg, -1.0, 1.0));
  return a * a;
}

double psi_envelope(double alpha, double kappa, double t, double theta_ang, double phi_ang) {
  if (!(alpha > -1.5))
    throw std::domain_error("psi envelope: requires alpha > -3/2; got alpha=" + num_str(alpha));
  if (!(t > 0.0) || !(kappa > 0.0))
    throw std::domain_error("psi envelope: requires t > 0 and kappa > 0");
  if (std::abs(alpha + 0.5) <= kMemberTol) return 1.0;
  const double bracket = std::max(dd(alpha) * t, kappa * theta_ang * phi_ang);
  return std::pow(bracket, -(alpha + 0.5));
}

double xi_envelope(const JacobiParams& p, double kappa, double t, double theta_ang,
                   double phi_ang) {
  p.validate();
  if (!(t > 0.0)) throw std::domain_error("xi envelope: requires t > 0");
  const double gap = theta_ang - phi_ang;
  return psi_envelope(p.alpha, kappa, t, theta_ang, phi_ang) *
         psi_envelope(p.beta, kappa, t, M_PI - theta_ang, M_PI - phi_ang) *
         std::exp(-gap * gap / (4.0 * t)) / std::sqrt(t);
}

double z_envelope(const JacobiParams& p, double t, double theta_ang, double phi_ang) {
  p.validate();
  if (!(t > 0.0)) throw std::domain_error("z envelope: requires t > 0");
  const double gap = theta_ang - phi_ang;
  return std::pow(t + theta_ang * phi_ang, -(p.alpha + 0.5)) *
         std::pow(t + (M_PI - theta_ang) * (M_PI - phi_ang), -(p.beta + 0.5)) *
         std::exp(-gap * gap / (4.0 * t)) / std::sqrt(t);
}

// ---------------------------------------------------------------------------
// scalar ledger symbols

double w0() { return table_eval("w0", {}); }
double w0_prime() { return table_eval("w0_prime", {}); }
double w1() { return table_eval("w1", {}); }

BoundPair kk_pair(double alpha) {
  if (!(alpha > -1.0)) throw std::domain_error("parametric constants k, K: require alpha > -1");
  return {table_eval("k_alpha", {{"al", alpha}}), table_eval("K_alpha", {{"al", alpha}})};
}

BoundPair ll_pair(double alpha) {
  if (!(alpha > -1.0)) throw std::domain_error("parametric constants l, L: require alpha > -1");
  return {table_eval("l_alpha", {{"al", alpha}}), table_eval("L_alpha", {{"al", alpha}})};
}

BoundPair nn_pair(double alpha) {
  if (!(alpha > -0.5)) throw std::domain_error("parametric constants n, N: require alpha > -1/2");
  return {table_eval("n_alpha", {{"al", alpha}}), table_eval("N_alpha", {{"al", alpha}})};
}

BoundPair mm_pair(double omega) {
  if (!(omega > 0.0)) throw std::domain_error("parametric constants m, M: require omega > 0");
  return {table_eval("m_omega", {{"om", omega}}), table_eval("M_omega", {{"om", omega}})};
}

BoundPair bb_pair(double alpha) {
  if (alpha < -0.5 - kMemberTol)
    throw std::domain_error("parametric constants b, B: require alpha >= -1/2");
  return {bb_lower(alpha), bb_upper(alpha)};
}

double lambda_breve(double lam) { return table_eval("lambda_breve", {{"lam", lam}}); }

double omega_window(double lam, double t) {
  return table_eval("omega_window", {{"lam", lam}, {"t", t}});
}

double capital_omega_window(double lam, double t) {
  return table_eval("capital_omega_window", {{"lam", lam}, {"t", t}});
}

double q_factor(double lam, double t) {
  return table_eval("q_factor", {{"lam", lam}, {"t", t}});
}

double q_factor_tilde(double lam, double t) {
  return table_eval("q_factor_tilde", {{"lam", lam}, {"t", t}});
}

// ---------------------------------------------------------------------------
// public step and assembly entry points

BoundPair step_constants(Step step, double lam, double T, CAVariant variant) {
  const Trace tr{};
  switch (step) {
    case Step::A: return step_a_impl(lam, T, variant, tr);
    case Step::B: return step_b_impl({lam, lam}, T, variant, tr);
    case Step::C: return step_c_impl(lam, T, variant, tr);
    case Step::D: return step_d_impl(lam, T, variant, tr);
    case Step::E: return step_e_impl(lam, T, variant, tr);
  }
  throw std::logic_error("step_constants: unreachable");
}

BoundPair step_constants(Step step, const JacobiParams& p, double T, CAVariant variant) {
  if (step == Step::B) {
    const Trace tr{};
    return step_b_impl(p, T, variant, tr);
  }
  if (p.alpha != p.beta)
    throw std::domain_error(
        "step_constants: only step B takes a general pair; steps A, C, D, E take a single "
        "index");
  return step_constants(step, p.alpha, T, variant);
}

BoundPair final_constants(const JacobiParams& p, double T, CAVariant variant) {
  const Trace tr{};
  return final_impl(p, T, variant, tr);
}

std::pair<Envelope, Envelope> final_envelopes(const JacobiParams& p, double T,
                                              CAVariant variant) {
  const BoundPair c = final_constants(p, T, variant);
  Envelope lower{kappa_lower, c.lower, Side::lower, T, p};
  Envelope upper{kappa_upper, c.upper, Side::upper, T, p};
  return {lower, upper};
}

BoundPair refined_constants_g(const JacobiParams& p, double T, CAVariant variant) {
  const Trace tr{};
  return refined_g_impl(p, T, variant, tr);
}

BoundPair refined_constants_h(int alpha, double T, CAVariant variant) {
  const Trace tr{};
  return refined_h_impl(alpha, T, variant, tr);
}

// ---------------------------------------------------------------------------
// sphere and projective-space bounds

SphereBounds sphere_bounds(int d, double T, double t, double phi, CAVariant variant) {
  if (d < 1) throw std::domain_error("sphere bounds: requires dimension d >= 1");
  if (!(T > 0.0) || !(t > 0.0)) throw std::domain_error("sphere bounds: requires t, T > 0");
  if (t > T * (1.0 + kHorizonSlack))
    throw std::domain_error("sphere bounds: the upper bound requires t <= T");
  if (!(phi >= 0.0 && phi <= M_PI + kMemberTol))
    throw std::domain_error("sphere bounds: requires geodesic angle phi in [0, pi]");
  const double lam = d / 2.0 - 1.0;
  const JacobiParams p{lam, lam};
  const Trace tr{};
  const BoundPair ref = refined_g_impl(p, T, variant, tr);
  const double front = special::gamma_fn(d / 2.0) * std::pow(2.0, d - 1);
  SphereBounds out;
  out.lower_constant = front * ref.lower;
  out.upper_constant = front * ref.upper;
  out.horizon = 4.0 * a_row_horizon(d - 1.5, T / 4.0, variant);
  const double gau = std::pow(4.0 * M_PI * t, -d / 2.0) * std::exp(-phi * phi / (4.0 * t));
  out.lower = out.lower_constant * psi_envelope(lam, kappa_lower, t, M_PI - phi, M_PI) * gau;
  out.upper = out.upper_constant * psi_envelope(lam, kappa_upper, t, M_PI - phi, M_PI) * gau;
  return out;
}

CrossBounds cross_bounds(const kernels::CrossSpace& space, CrossVariant variant, double t,
                         double dist, double T) {
  space.validate();
  if (!(t > 0.0)) throw std::domain_error("cross bounds: requires t > 0");
  if (!(dist >= 0.0 && dist <= space.diameter * (1.0 + kMemberTol)))
    throw std::domain_error("cross bounds: requires 0 <= dist <= diameter");
  if (T <= 0.0) T = t;
  if (t > T * (1.0 + kHorizonSlack))
    throw std::domain_error("cross bounds: the upper bound requires t <= T");

  const int d = space.dim;
  const double kap = space.kappa();
  const double t_jac = kap * kap * t;
  const double T_jac = kap * kap * T;
  const JacobiParams p = space.jacobi();
  using kernels::CrossFamily;

  CAVariant row = CAVariant::first_row;
  switch (variant) {
    case CrossVariant::horizon_one: row = CAVariant::first_row; break;
    case CrossVariant::horizon_two: row = CAVariant::second_row; break;
    case CrossVariant::special_small_d: row = CAVariant::theta_row; break;
  }
  const bool h_route = space.family == CrossFamily::real_projective && d % 2 == 0;
  if (variant == CrossVariant::special_small_d) {
    const bool ok = (space.family == CrossFamily::real_projective && (d == 2 || d == 3)) ||
                    (space.family == CrossFamily::sphere && (d == 1 || d == 2));
    if (!ok)
      throw config_error(
          "cross bounds: the small-dimension route applies to spheres of dimension 1 or 2 "
          "and real projective spaces of dimension 2 or 3");
  }

  const Trace tr{};
  const BoundPair ref = h_route
                            ? refined_h_impl(static_cast<int>(std::lround(p.alpha)), T_jac, row, tr)
                            : refined_g_impl(p, T_jac, row, tr);
  const double front = h0_pair(p) * std::pow(4.0 * M_PI, d / 2.0) /
                       (std::pow(kap, d) * space.volume());
  const double lam_a = h_route ? 2.0 * p.alpha + 0.5 : p.alpha + p.beta + 0.5;
  const double t_a = h_route ? T_jac / 16.0 : T_jac / 4.0;
  const double scale = h_route ? 16.0 : 4.0;

  CrossBounds out;
  out.psi_index = p.beta;
  out.upper_constant = front * ref.upper;
  out.horizon = scale * a_row_horizon(lam_a, t_a, row) / (kap * kap);
  const double gau = std::pow(4.0 * M_PI * t, -d / 2.0) * std::exp(-dist * dist / (4.0 * t));
  const double psi_up =
      h_route ? 1.0 : psi_envelope(p.beta, kappa_upper, t_jac, M_PI - kap * dist, M_PI);
  out.upper = out.upper_constant * psi_up * gau;
  if (space.family == CrossFamily::real_projective) {
    out.lower_is_generic = true;
    out.lower = gau;
  } else {
    out.lower_constant = front * ref.lower;
    out.lower = *out.lower_constant *
                psi_envelope(p.beta, kappa_lower, t_jac, M_PI - kap * dist, M_PI) * gau;
  }
  return out;
}

// ---------------------------------------------------------------------------
// large and medium times

LargeTimeBounds large_time_bounds(const JacobiParams& p, double t) {
  p.validate();
  const double t_min = 2.0 * std::log(2.0);
  if (t < t_min * (1.0 - kHorizonSlack))
    throw std::domain_error("large-time bounds: requires t >= 2 log 2");
  const double s = p.alpha + p.beta + 2.0;
  const double lo = std::min(p.alpha, p.beta);
  const double hi = std::max(p.alpha, p.beta);
  LargeTimeBounds out;
  if (hi >= -0.5) {
    out.remainder_bound = 2.0 / (lo + 1.0) * std::exp(-(t - 1.0) * s);
    out.threshold = 1.0 + std::log(4.0 / (lo + 1.0)) / s;
  } else {
    const double prod = (p.alpha + 1.0) * (p.beta + 1.0);
    out.remainder_bound = 2.7 / prod * std::exp(-(t - 1.0) * s);
    out.threshold = 1.0 + std::log(5.4 / prod) / s;
  }
  out.h0 = h0_pair(p);
  out.sandwich = t >= std::max(out.threshold, t_min) * (1.0 - kHorizonSlack);
  return out;
}

BoundPair medium_time_bounds(const JacobiParams& p, double t0, const BoundPair& base) {
  p.validate();
  if (!(t0 > 0.0)) throw std::domain_error("medium-time bounds: requires t0 > 0");
  const double pi2 = M_PI * M_PI;
  auto floor_factor = [&](double a) {
    return std::min(1.0, std::pow(std::max(1.0, pi2 / (2.0 * dd(a) * t0)), -(a + 0.5)));
  };
  auto cap_factor = [&](double a) {
    return std::max(1.0, std::pow(std::max(1.0, 2.0 / (dd(a) * t0)), -(a + 0.5)));
  };
  const double den = std::pow(t0, p.alpha + p.beta + 1.5) *
                     special::gamma_fn(p.alpha + 1.5) * special::gamma_fn(p.beta + 1.5);
  BoundPair out;
  out.lower = base.lower * floor_factor(p.alpha) * floor_factor(p.beta) *
              std::exp(-pi2 / (4.0 * t0)) / den;
  out.upper = base.upper * cap_factor(p.alpha) * cap_factor(p.beta) / den;
  return out;
}

// ---------------------------------------------------------------------------
// constant ledger

bool ConstantLedger::has(const std::string& symbol) const {
  for (const auto& e : entries_)
    if (e.symbol == symbol) return true;
  return false;
}

double ConstantLedger::value(const std::string& symbol) const {
  for (const auto& e : entries_)
    if (e.symbol == symbol) return e.value;
  throw std::out_of_range("constant ledger: unknown symbol " + symbol);
}

ConstantLedger ConstantLedger::build(const JacobiParams& p, double T, CAVariant variant) {
  p.validate();
  if (!(T > 0.0)) throw std::domain_error("constant ledger: requires T > 0");
  ConstantLedger led;
  led.params_ = p;
  led.horizon_ = T;
  auto add = [&](const std::string& symbol, const std::string& table, double value,
                 const std::string& derivation) {
    if (!led.has(symbol)) led.entries_.push_back({symbol, table, value, derivation});
  };
  auto formula = [&](const std::string& name) { return formula_table().at(name); };

  add("euler_gamma", "num", special::euler_gamma, "Euler-Mascheroni constant");
  add("frak_b", "num", kappa_upper, formula("frak_b"));
  add("frak_B", "num", kappa_lower, formula("frak_B"));
  add("w0", "num", w0(), formula("w0"));
  add("w0_prime", "num", w0_prime(), formula("w0_prime"));
  add("w1", "num", w1(), formula("w1"));

  const double L = p.lambda();
  const std::vector<std::pair<std::string, double>> points = {{"alpha", p.alpha},
                                                              {"beta", p.beta}};
  for (const auto& [name, val] : points) {
    add("k(" + name + ")", "par", kk_pair(val).lower, formula("k_alpha"));
    add("K(" + name + ")", "par", kk_pair(val).upper, formula("K_alpha"));
    add("l(" + name + ")", "par", ll_pair(val).lower, formula("l_alpha"));
    add("L(" + name + ")", "par", ll_pair(val).upper, formula("L_alpha"));
    if (val > -0.5 + kMemberTol) {
      add("n(" + name + ")", "par", nn_pair(val).lower, formula("n_alpha"));
      add("N(" + name + ")", "par", nn_pair(val).upper, formula("N_alpha"));
    }
    add("D(" + name + ")", "par", dd(val),
        std::abs(val + 0.5) <= kMemberTol ? formula("D_alpha_limit") : formula("D_alpha"));
    if (val > -0.5 - kMemberTol) {
      add("E(" + name + ")", "par", special::e_alpha(val), formula("E_alpha"));
      add("b(" + name + ")", "par", bb_pair(val).lower,
          std::abs(val + 0.5) <= kMemberTol ? "1/2" : formula("b_alpha"));
      add("B(" + name + ")", "par", bb_pair(val).upper,
          std::abs(val + 0.5) <= kMemberTol ? "1/2" : formula("B_alpha"));
    }
  }
  add("Lambda", "par", L, "alpha+beta+1/2");
  add("h0(alpha,beta)", "par", h0_pair(p), formula("h0_jacobi"));
  if (L > -1.0 + kMemberTol) add("h0(Lambda)", "par", special::h0_ultra(L), formula("h0_ultra"));
  add("m(Lambda+2)", "par", mm_pair(L + 2.0).lower, formula("m_omega"));
  add("M(Lambda+2)", "par", mm_pair(L + 2.0).upper, formula("M_omega"));
  if (L > kMemberTol) {
    add("Lambda_breve", "par", lambda_breve(L), formula("lambda_breve"));
    add("omega(Lambda,T/4)", "fun", omega_window(L, T / 4.0), formula("omega_window"));
    add("Omega(Lambda,T/4)", "fun", capital_omega_window(L, T / 4.0),
        formula("capital_omega_window"));
  }
  add("q(Lambda,T)", "fun", q_factor(L, T), formula("q_factor"));
  add("q(Lambda,0)", "fun", q_factor(L, 0.0), formula("q_factor"));
  add("q_tilde(Lambda,T)", "fun", q_factor_tilde(L, T), formula("q_factor_tilde"));
  add("q_tilde(Lambda,0)", "fun", q_factor_tilde(L, 0.0), formula("q_factor_tilde"));

  std::vector<LedgerEntry> trace;
  Trace tr{&trace};
  final_impl(p, T, variant, tr);
  for (const auto& e : trace) add(e.symbol, e.table, e.value, e.derivation);
  return led;
}

std::string ConstantLedger::to_json(int indent) const {
  nlohmann::ordered_json doc;
  doc["params"] = {{"alpha", params_.alpha}, {"beta", params_.beta}, {"T", horizon_}};
  for (const char* table : {"num", "par", "fun", "steps"}) {
    nlohmann::ordered_json group = nlohmann::ordered_json::object();
    for (const auto& e : entries_)
      if (e.table == table)
        group[e.symbol] = {{"value", e.value}, {"derivation", e.derivation}};
    doc[table] = std::move(group);
  }
  return doc.dump(indent);
}

std::string formula_text(const std::string& name) {
  const auto& table = formula_table();
  auto it = table.find(name);
  return it == table.end() ? std::string{} : it->second;
}

double eval_formula(const std::string& expr,
                    const std::vector<std::pair<std::string, double>>& env) {
  return Interp(expr, env).run();
}

}  // namespace heatkit::bounds
