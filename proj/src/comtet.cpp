#include <heatkit/comtet.hpp>

#include <heatkit/special.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace heatkit {
namespace comtet {

namespace {

uint128 checked_add(uint128 a, uint128 b) {
  const uint128 s = a + b;
  if (s < a) throw std::overflow_error("AposCoeffTable: coefficient exceeds 128-bit capacity");
  return s;
}

uint128 checked_mul(uint128 a, uint128 b) {
  uint128 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("AposCoeffTable: coefficient exceeds 128-bit capacity");
  return r;
}

}  // namespace

std::string uint128_to_string(uint128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return out;
}

bool PartitionIndex::valid_for(int n, int j) const {
  if (static_cast<int>(k.size()) != n - j + 1) return false;
  long long total = 0, weighted = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] < 0) return false;
    total += k[i];
    weighted += static_cast<long long>(i) * k[i];
  }
  return total == n && weighted == n - j && k[0] >= j;
}

const AposCoeffTable::Row& AposCoeffTable::row(int n, int j) const {
  if (n < 1 || n > n_max_ || j < 1 || j > n)
    throw std::out_of_range("AposCoeffTable::row: need 1 <= j <= N <= capacity");
  return rows_[n][j];
}

std::string AposCoeffTable::to_json() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int n = 1; n <= n_max_; ++n)
    for (int j = 1; j <= n; ++j)
      for (const auto& [idx, coeff] : rows_[n][j]) {
        if (!first) os << ",";
        first = false;
        os << "\"" << n << "/" << j << "/";
        for (std::size_t i = 0; i < idx.k.size(); ++i) {
          if (i) os << ",";
          os << idx.k[i];
        }
        os << "\":\"" << uint128_to_string(coeff) << "\"";
      }
  os << "}";
  return os.str();
}

AposCoeffTable build_coeff_table(int n_max) {
  if (n_max < 1) throw std::domain_error("build_coeff_table: n_max >= 1");
  if (n_max > 33) throw std::overflow_error("build_coeff_table: capacity limited to n_max <= 33");
  AposCoeffTable t;
  t.n_max_ = n_max;
  t.rows_.assign(n_max + 1, {});
  for (int n = 1; n <= n_max; ++n) t.rows_[n].assign(n + 1, {});

  t.rows_[1][1][PartitionIndex{{1}}] = 1;
  for (int n = 1; n < n_max; ++n) {
    for (int j = 1; j <= n; ++j) {
      for (const auto& [idx, coeff] : t.rows_[n][j]) {
        // raising the order by one either increments the degree index
        // (target (n+1, j+1), same multi-index length)...
        PartitionIndex up = idx;
        up.k[0] += 1;
        uint128& slot = t.rows_[n + 1][j + 1][up];
        slot = checked_add(slot, coeff);
        // ...or applies L to one factor, shifting mass k_i -> k_{i+1}
        // (target (n+1, j), length grows by one)
        PartitionIndex base = idx;
        base.k[0] += 1;
        base.k.push_back(0);
        for (int i = 0; i <= n - j; ++i) {
          if (idx.k[i] < 1) continue;
          PartitionIndex moved = base;
          moved.k[i] -= 1;
          moved.k[i + 1] += 1;
          uint128& dest = t.rows_[n + 1][j][moved];
          dest = checked_add(dest, checked_mul(static_cast<uint128>(idx.k[i]), coeff));
        }
      }
    }
  }
  return t;
}

double eval_apoly(int n, int j, const std::vector<double>& lambda, const AposCoeffTable& table) {
  if (static_cast<int>(lambda.size()) != n - j + 1)
    throw std::invalid_argument("eval_apoly: lambda must have length N-j+1");
  special::KahanSum sum;
  for (const auto& [idx, coeff] : table.row(n, j)) {
    double mono = static_cast<double>(coeff);
    for (std::size_t i = 0; i < idx.k.size(); ++i)
      for (int rep = 0; rep < idx.k[i]; ++rep) mono *= lambda[i];
    sum.add(mono);
  }
  return sum.value();
}

namespace {

// c_n of Psi(z) = sum_n c_n z^{2n}: c_0 = 1 and
// c_n = 2 zeta(2n) (1 - 2^{1-2n}) / pi^{2n}
const std::vector<double>& psi_series_coeffs() {
  static const std::vector<double> coeffs = [] {
    std::vector<double> c(640, 0.0);
    c[0] = 1.0;
    for (std::size_t n = 1; n < c.size(); ++n)
      c[n] = 2.0 * std::riemann_zeta(2.0 * static_cast<double>(n)) *
             (1.0 - std::pow(2.0, 1.0 - 2.0 * static_cast<double>(n))) *
             std::pow(M_PI, -2.0 * static_cast<double>(n));
    return c;
  }();
  return coeffs;
}

}  // namespace

double l_pow_psi(int i, double phi) {
  if (i < 0 || i > 25) throw std::domain_error("l_pow_psi: require 0 <= i <= 25");
  if (!(phi >= 0.0 && phi <= M_PI_2 * (1.0 + 1e-12)))
    throw std::domain_error("l_pow_psi: require phi in [0, pi/2]");
  // termwise L^i gives the factor 2^i n!/(n-i)! and lowers z^{2n} to z^{2(n-i)}
  const std::vector<double>& c = psi_series_coeffs();
  special::KahanSum sum;
  const double phi2 = phi * phi;
  double fall = 1.0;  // n!/(n-i)!, advanced by (n+1)/(n+1-i)
  for (int k = 2; k <= i; ++k) fall *= k;
  double zp = std::pow(2.0, i);  // 2^i phi^{2(n-i)}
  for (int n = i; n < static_cast<int>(c.size()); ++n) {
    const double term = c[static_cast<std::size_t>(n)] * fall * zp;
    sum.add(term);
    if (n > i && term < 1e-18 * sum.value()) break;
    fall *= static_cast<double>(n + 1) / static_cast<double>(n + 1 - i);
    zp *= phi2;
  }
  return sum.value();
}

double phi_nj(int n, int j, double phi, const AposCoeffTable& table) {
  std::vector<double> lambda(static_cast<std::size_t>(n - j) + 1);
  for (int i = 0; i <= n - j; ++i) lambda[static_cast<std::size_t>(i)] = l_pow_psi(i, phi);
  return eval_apoly(n, j, lambda, table);
}

double bessel_sum_identity_lhs(int n, double x) {
  if (n < 1) throw std::domain_error("bessel_sum_identity_lhs: n >= 1");
  if (!(x > 0.0)) throw std::domain_error("bessel_sum_identity_lhs: x > 0");
  special::KahanSum sum;
  for (int j = 1; j <= n; ++j) {
    const double c =
        std::exp(std::lgamma(2.0 * n - j) - std::lgamma(n - j + 1.0) - std::lgamma(j));
    sum.add(c * std::pow(x, j));
  }
  return sum.value();
}

double lah_sum(int n, double s) {
  if (n < 1) throw std::domain_error("lah_sum: n >= 1");
  special::KahanSum sum;
  for (int m = 1; m <= n; ++m) {
    const double c = std::exp(std::lgamma(n + 1.0) - std::lgamma(m + 1.0) -
                              std::lgamma(n - m + 1.0) + std::lgamma(static_cast<double>(n)) -
                              std::lgamma(static_cast<double>(m)));
    sum.add(c * std::pow(s, m));
  }
  return sum.value();
}

namespace {

std::vector<double> psi_series(int n_terms) {
  std::vector<double> c(static_cast<std::size_t>(n_terms), 0.0);
  c[0] = 1.0;
  for (int n = 1; n < n_terms; ++n)
    c[static_cast<std::size_t>(n)] = 2.0 * std::riemann_zeta(2.0 * n) *
                                     (1.0 - std::pow(2.0, 1.0 - 2.0 * n)) *
                                     std::pow(M_PI, -2.0 * n);
  return c;
}

double eval_even_series(const std::vector<double>& a, double phi) {
  const double p2 = phi * phi;
  double acc = 0.0;
  for (std::size_t m = a.size(); m-- > 0;) acc = acc * p2 + a[m];
  return acc;
}

}  // namespace

HgwSequences hgw_sequences(int j_max, double phi) {
  if (j_max < 1 || j_max > 64) throw std::domain_error("hgw_sequences: j_max in [1, 64]");
  if (!(phi > 0.0 && phi < M_PI)) throw std::domain_error("hgw_sequences: phi in (0, pi)");
  HgwSequences r;
  r.h.assign(static_cast<std::size_t>(j_max) + 1, 0.0);
  r.g = r.h;
  r.w = r.h;
  const double s = std::sin(phi);
  if (phi <= 2.0) {
    // below the zero of cos the two-step h recurrence cancels; iterate
    // D = (1/sin) d/dphi on the even series of z/sin z instead, where every
    // coefficient stays positive
    const int m0 = j_max + 130;
    const std::vector<double> psi = psi_series(m0);
    std::vector<double> a = psi;
    for (int j = 1; j <= j_max; ++j) {
      r.g[static_cast<std::size_t>(j)] = eval_even_series(a, phi);
      std::vector<double> shifted(a.size() - 1);
      for (std::size_t m = 0; m + 1 < a.size(); ++m) shifted[m] = 2.0 * (m + 1) * a[m + 1];
      std::vector<double> next(shifted.size(), 0.0);
      for (std::size_t n = 0; n < shifted.size(); ++n)
        for (std::size_t k = 0; n + k < shifted.size(); ++k) next[n + k] += psi[n] * shifted[k];
      a = std::move(next);
    }
    for (int j = 1; j <= j_max; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      r.h[ju] = r.g[ju] * std::pow(s, 2.0 * j - 1.0);
      r.w[ju] = r.g[ju] * std::pow(s / phi, static_cast<double>(j)) *
                std::pow(M_PI - phi, j - 1.0) / std::tgamma(j + 1.0);
    }
  } else {
    const double c = std::cos(phi);
    r.h[1] = phi;
    if (j_max >= 2) r.h[2] = s - phi * c;
    for (int j = 1; j + 2 <= j_max; ++j)
      r.h[static_cast<std::size_t>(j) + 2] =
          -(2.0 * j + 1.0) * c * r.h[static_cast<std::size_t>(j) + 1] +
          static_cast<double>(j) * j * s * s * r.h[static_cast<std::size_t>(j)];
    for (int j = 1; j <= j_max; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      r.g[ju] = r.h[ju] * std::pow(s, 1.0 - 2.0 * j);
      r.w[ju] = r.h[ju] * std::pow(M_PI - phi, j - 1.0) /
                (std::tgamma(j + 1.0) * std::pow(phi, j) * std::pow(s, j - 1.0));
    }
  }
  return r;
}

}  // namespace comtet
}  // namespace heatkit
