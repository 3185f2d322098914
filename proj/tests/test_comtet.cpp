#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <heatkit/comtet.hpp>
#include <heatkit/special.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <quadmath.h>
#include <vector>

using namespace heatkit;
using namespace heatkit::comtet;

namespace {

constexpr double kSlack = 1e-9;
bool leq(double a, double b) { return a <= b + kSlack * (std::fabs(a) + std::fabs(b)); }
double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

// --- truncated-Taylor (jet) arithmetic in quad precision, used to apply
// D = (1/sin phi) d/dphi symbolically and read off exact derivative values ---

using f128 = __float128;

struct Jet {
  std::vector<f128> c;  // coefficients in h around the expansion point
};

Jet jet_mul(const Jet& a, const Jet& b) {
  const std::size_t m = std::min(a.c.size(), b.c.size());
  Jet r;
  r.c.assign(m, f128(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; i + j < m; ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

Jet jet_recip(const Jet& a) {
  Jet r;
  r.c.assign(a.c.size(), f128(0));
  r.c[0] = f128(1) / a.c[0];
  for (std::size_t n = 1; n < a.c.size(); ++n) {
    f128 acc = 0;
    for (std::size_t k = 1; k <= n; ++k) acc += a.c[k] * r.c[n - k];
    r.c[n] = -acc / a.c[0];
  }
  return r;
}

Jet jet_deriv(const Jet& a) {
  Jet r;
  if (a.c.size() <= 1) {
    r.c.assign(1, f128(0));
    return r;
  }
  r.c.assign(a.c.size() - 1, f128(0));
  for (std::size_t n = 0; n + 1 < a.c.size(); ++n) r.c[n] = f128(n + 1) * a.c[n + 1];
  return r;
}

Jet jet_sin(double x0, std::size_t m) {
  Jet r;
  r.c.assign(m, f128(0));
  const f128 s = sinq(x0), c = cosq(x0);
  f128 fact = 1;
  for (std::size_t n = 0; n < m; ++n) {
    if (n > 0) fact *= f128(n);
    switch (n % 4) {
      case 0: r.c[n] = s / fact; break;
      case 1: r.c[n] = c / fact; break;
      case 2: r.c[n] = -s / fact; break;
      default: r.c[n] = -c / fact; break;
    }
  }
  return r;
}

Jet jet_cos_scaled(double v, double x0, std::size_t m) {
  Jet r;
  r.c.assign(m, f128(0));
  const f128 s = sinq(f128(v) * f128(x0)), c = cosq(f128(v) * f128(x0));
  f128 fact = 1, vpow = 1;
  for (std::size_t n = 0; n < m; ++n) {
    if (n > 0) {
      fact *= f128(n);
      vpow *= f128(v);
    }
    switch (n % 4) {
      case 0: r.c[n] = vpow * c / fact; break;
      case 1: r.c[n] = -vpow * s / fact; break;
      case 2: r.c[n] = -vpow * c / fact; break;
      default: r.c[n] = vpow * s / fact; break;
    }
  }
  return r;
}

Jet jet_D(const Jet& f, const Jet& inv_sin) {
  return jet_mul(inv_sin, jet_deriv(f));
}

// (L^j cos)(z) for L = (1/z) d/dz, via spherical Bessel functions
double l_pow_cos(int j, double z) {
  if (j == 0) return std::cos(z);
  return (j % 2 ? -1.0 : 1.0) * std::sph_bessel(static_cast<unsigned>(j - 1), z) /
         std::pow(z, j - 1);
}

std::vector<std::vector<std::uint64_t>> stirling_first(int n_max) {
  std::vector<std::vector<std::uint64_t>> c(n_max + 1, std::vector<std::uint64_t>(n_max + 1, 0));
  c[0][0] = 1;
  for (int n = 0; n < n_max; ++n)
    for (int k = 0; k <= n; ++k) {
      c[n + 1][k + 1] += c[n][k];
      c[n + 1][k] += static_cast<std::uint64_t>(n) * c[n][k];
    }
  return c;
}

std::vector<std::vector<std::uint64_t>> stirling_second(int n_max) {
  std::vector<std::vector<std::uint64_t>> s(n_max + 1, std::vector<std::uint64_t>(n_max + 1, 0));
  s[0][0] = 1;
  for (int n = 0; n < n_max; ++n)
    for (int k = 0; k <= n; ++k) {
      s[n + 1][k + 1] += s[n][k];
      s[n + 1][k] += static_cast<std::uint64_t>(k) * s[n][k];
    }
  return s;
}

std::vector<std::uint64_t> partition_counts(int m_max) {
  std::vector<std::uint64_t> p(m_max + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= m_max; ++part)
    for (int m = part; m <= m_max; ++m) p[m] += p[m - part];
  return p;
}

// enumerated partition sum: over k_1 + 2 k_2 + ... = N of N!/(prod k_j!) s^{sum k}
double lah_lhs_enumerated(int n, double s) {
  double total = 0.0;
  std::function<void(int, int, double, int)> go = [&](int remaining, int part, double inv_fact,
                                                      int count) {
    if (remaining == 0) {
      total += std::tgamma(n + 1.0) * inv_fact * std::pow(s, count);
      return;
    }
    if (part > remaining) return;
    for (int k = 0; k * part <= remaining; ++k) {
      double f = inv_fact;
      for (int r = 1; r <= k; ++r) f /= r;
      if (part == remaining && k * part == remaining) {
        go(0, part + 1, f, count + k);
      } else if (part < n) {
        go(remaining - k * part, part + 1, f, count + k);
      } else if (k * part == remaining) {
        go(0, part + 1, f, count + k);
      }
    }
  };
  go(n, 1, 1.0, 0);
  return total;
}

}  // namespace

TEST_CASE("coefficient table: seeds, exact small rows, invariants") {
  const AposCoeffTable t = build_coeff_table(12);
  CHECK(t.capacity() == 12);
  CHECK(t.row(1, 1).at(PartitionIndex{{1}}) == 1);
  CHECK(t.row(3, 2).at(PartitionIndex{{2, 1}}) == 3);

  uint128 sum42 = 0;
  for (const auto& [idx, coeff] : t.row(4, 2)) {
    (void)idx;
    sum42 += coeff;
  }
  CHECK(static_cast<std::uint64_t>(sum42) == 11);
  CHECK(t.row(4, 2).at(PartitionIndex{{2, 2, 0}}) == 7);
  CHECK(t.row(4, 2).at(PartitionIndex{{3, 0, 1}}) == 4);

  // order-five depth-one row, derived by hand from the recurrence
  CHECK(t.row(5, 1).at(PartitionIndex{{1, 4, 0, 0, 0}}) == 1);
  CHECK(t.row(5, 1).at(PartitionIndex{{2, 2, 1, 0, 0}}) == 11);
  CHECK(t.row(5, 1).at(PartitionIndex{{3, 0, 2, 0, 0}}) == 4);
  CHECK(t.row(5, 1).at(PartitionIndex{{3, 1, 0, 1, 0}}) == 7);
  CHECK(t.row(5, 1).at(PartitionIndex{{4, 0, 0, 0, 1}}) == 1);

  const auto p = partition_counts(12);
  for (int n = 1; n <= 12; ++n)
    for (int j = 1; j <= n; ++j) {
      const auto& row = t.row(n, j);
      CHECK(row.size() == p[n - j]);
      for (const auto& [idx, coeff] : row) {
        CHECK(idx.valid_for(n, j));
        CHECK(coeff > 0);
      }
    }
  CHECK_THROWS_AS((void)build_coeff_table(34), std::overflow_error);
}

TEST_CASE("A-polynomial evaluations: powers, Stirling, factorial closed form") {
  const AposCoeffTable t = build_coeff_table(15);
  CHECK(eval_apoly(3, 3, {2.0}, t) == doctest::Approx(8.0));
  CHECK(eval_apoly(4, 2, {1.0, 1.0, 2.0}, t) == doctest::Approx(15.0));
  CHECK(eval_apoly(3, 1, {1.0, 1.0, 1.0}, t) == doctest::Approx(2.0));
  CHECK_THROWS_AS((void)eval_apoly(4, 2, {1.0, 1.0}, t), std::invalid_argument);

  const auto c1 = stirling_first(10);
  const auto s2 = stirling_second(10);
  for (int n = 1; n <= 10; ++n)
    for (int j = 1; j <= n; ++j) {
      const std::vector<double> ones(static_cast<std::size_t>(n - j) + 1, 1.0);
      CHECK(eval_apoly(n, j, ones, t) ==
            doctest::Approx(static_cast<double>(c1[n][j])).epsilon(1e-12));
      std::vector<double> kron(static_cast<std::size_t>(n - j) + 1, 0.0);
      kron[0] = 1.0;
      if (kron.size() > 1) kron[1] = 1.0;
      CHECK(eval_apoly(n, j, kron, t) ==
            doctest::Approx(static_cast<double>(s2[n][j])).epsilon(1e-12));
    }

  for (int n = 1; n <= 15; ++n)
    for (int j = 1; j <= n; ++j) {
      std::vector<double> fact(static_cast<std::size_t>(n - j) + 1);
      for (int i = 0; i <= n - j; ++i) fact[static_cast<std::size_t>(i)] = std::tgamma(i + 1.0);
      const double want = std::exp(std::lgamma(2.0 * n - j) - (n - j) * M_LN2 -
                                   std::lgamma(n - j + 1.0) - std::lgamma(static_cast<double>(j)));
      CHECK(rel_err(eval_apoly(n, j, fact, t), want) < 1e-10);
    }
}

TEST_CASE("A-polynomial homogeneity grading") {
  const AposCoeffTable t = build_coeff_table(9);
  const std::vector<double> lam = {1.3, 0.42, 0.91, 0.27, 1.7, 0.63, 0.11};
  const double a = 1.3, b = 0.7;
  for (int j : {3, 5, 9}) {
    const int n = 9;
    std::vector<double> scaled(static_cast<std::size_t>(n - j) + 1);
    std::vector<double> plain(static_cast<std::size_t>(n - j) + 1);
    double bpow = 1.0;
    for (int i = 0; i <= n - j; ++i) {
      plain[static_cast<std::size_t>(i)] = lam[static_cast<std::size_t>(i)];
      scaled[static_cast<std::size_t>(i)] = a * bpow * lam[static_cast<std::size_t>(i)];
      bpow *= b;
    }
    const double want = std::pow(a, n) * std::pow(b, n - j) * eval_apoly(n, j, plain, t);
    CHECK(rel_err(eval_apoly(n, j, scaled, t), want) < 1e-12);
  }
}

TEST_CASE("iterated L of z/sin z: exact values, tabulated values, bounds") {
  CHECK(l_pow_psi(0, M_PI_2) == doctest::Approx(M_PI_2).epsilon(1e-14));
  CHECK(l_pow_psi(1, M_PI_2) == doctest::Approx(2.0 / M_PI).epsilon(1e-14));
  CHECK(l_pow_psi(2, M_PI_2) ==
        doctest::Approx(2.0 / M_PI - 8.0 / std::pow(M_PI, 3)).epsilon(1e-13));
  CHECK(l_pow_psi(3, M_PI_2) == doctest::Approx(96.0 / std::pow(M_PI, 5)).epsilon(1e-13));

  // reference values computed with 60-digit arithmetic, i = 0..6 at pi/2
  const double table[] = {1.5707963267948966,  0.63661977236758134, 0.37860749690198543,
                          0.31370530973312501, 0.34065620165392637, 0.46066497747463604,
                          0.74695259914380838};
  for (int i = 0; i <= 6; ++i) CHECK(rel_err(l_pow_psi(i, M_PI_2), table[i]) < 1e-13);

  // values at zero: c_i 2^i i! with c_1 = 1/6, c_2 = 7/360
  CHECK(l_pow_psi(0, 0.0) == doctest::Approx(1.0));
  CHECK(l_pow_psi(1, 0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(l_pow_psi(2, 0.0) == doctest::Approx(7.0 / 45.0).epsilon(1e-14));

  for (int i = 0; i <= 15; ++i) {
    const double top = l_pow_psi(i, M_PI_2);
    const double cap = std::pow(8.0, i + 1.0) * std::tgamma(i + 1.0) /
                       (std::pow(3.0, i + 1.0) * std::pow(M_PI, 2.0 * i));
    CHECK(leq(top, cap));
    CHECK(top < cap);
    double prev = 0.0;
    for (double phi = 0.0; phi <= M_PI_2 + 1e-9; phi += M_PI_2 / 24.0) {
      const double v = l_pow_psi(i, std::min(phi, M_PI_2));
      CHECK(v > 0.0);
      CHECK(v > prev - 1e-15);
      CHECK(leq(v, top));
      prev = v;
    }
  }
  CHECK_THROWS_AS((void)l_pow_psi(1, 2.0), std::domain_error);
  CHECK_THROWS_AS((void)l_pow_psi(26, 1.0), std::domain_error);
}

TEST_CASE("Phi factors: examples, positivity, growth envelope") {
  const AposCoeffTable t = build_coeff_table(12);
  CHECK(phi_nj(2, 2, M_PI_2, t) == doctest::Approx(M_PI * M_PI / 4.0).epsilon(1e-13));
  CHECK(phi_nj(3, 2, M_PI_2, t) == doctest::Approx(3.0 * M_PI / 2.0).epsilon(1e-13));
  CHECK(phi_nj(1, 1, 0.0, t) == doctest::Approx(1.0));

  for (int n = 1; n <= 12; ++n)
    for (int j = 1; j <= n; ++j)
      for (double phi : {0.0, 0.3, 0.9, 1.3, M_PI_2}) {
        const double v = phi_nj(n, j, phi, t);
        CHECK(v > 0.0);
        const double cap = std::pow(8.0 / 3.0, n) * std::pow(4.0 / (3.0 * M_PI * M_PI), n - j) *
                           std::pow(3.0 * M_PI / 16.0, j) *
                           std::exp(std::lgamma(2.0 * n - j) - std::lgamma(n - j + 1.0) -
                                    std::lgamma(static_cast<double>(j)));
        CHECK(leq(v, cap));
      }
}

TEST_CASE("Phi factors match the explicit near-diagonal rows") {
  const AposCoeffTable t = build_coeff_table(10);
  for (double phi : {0.3, 1.0, M_PI_2}) {
    std::vector<double> lam(6);
    for (int i = 0; i <= 5; ++i) lam[static_cast<std::size_t>(i)] = l_pow_psi(i, phi);
    for (int n = 2; n <= 10; ++n) {
      const double want = special::binom(n, 2) * std::pow(lam[0], n - 1) * lam[1];
      CHECK(rel_err(phi_nj(n, n - 1, phi, t), want) < 1e-12);
    }
    for (int n = 3; n <= 10; ++n) {
      const double want = special::binom(n, 3) * (std::pow(lam[0], n - 1) * lam[2] +
                                                  (3.0 * n - 5.0) / 4.0 *
                                                      std::pow(lam[0], n - 2) * lam[1] * lam[1]);
      CHECK(rel_err(phi_nj(n, n - 2, phi, t), want) < 1e-12);
    }
    for (int n = 4; n <= 10; ++n) {
      const double want =
          special::binom(n, 4) *
          (std::pow(lam[0], n - 1) * lam[3] +
           2.0 * (n - 2.0) * std::pow(lam[0], n - 2) * lam[1] * lam[2] +
           0.5 * (n - 3.0) * (n - 2.0) * std::pow(lam[0], n - 3) * std::pow(lam[1], 3));
      CHECK(rel_err(phi_nj(n, n - 3, phi, t), want) < 1e-12);
    }
  }
}

TEST_CASE("iterated D of F(v phi) agrees with the Phi expansion") {
  const AposCoeffTable t = build_coeff_table(8);
  for (double v : {0.37, 1.1})
    for (double phi0 : {0.35, 0.8, 1.2, 1.5}) {
      const std::size_t m = 22;
      const Jet inv_sin = jet_recip(jet_sin(phi0, m));
      Jet f = jet_cos_scaled(v, phi0, m);
      for (int n = 1; n <= 8; ++n) {
        f = jet_D(f, inv_sin);
        special::KahanSum rhs;
        for (int j = 1; j <= n; ++j)
          rhs.add(std::pow(v, 2.0 * j) * l_pow_cos(j, v * phi0) * phi_nj(n, j, phi0, t));
        CHECK(static_cast<double>(f.c[0]) == doctest::Approx(rhs.value()).epsilon(1e-9));
      }
    }
}

TEST_CASE("half-integer Bessel polynomial identity") {
  CHECK(bessel_sum_identity_lhs(1, 0.7) == doctest::Approx(0.7));
  CHECK(bessel_sum_identity_lhs(2, 1.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(std::sqrt(1.0 / M_PI) * std::exp(0.5) * special::bessel_k_half_int(3, 0.5) ==
        doctest::Approx(3.0).epsilon(1e-13));
  for (int n = 1; n <= 12; ++n)
    for (double x : {0.5, 1.0, 5.0, 40.0}) {
      const double rhs = std::pow(x, n) * std::sqrt(x / M_PI) * std::exp(0.5 * x) *
                         special::bessel_k_half_int(2 * n - 1, 0.5 * x);
      CHECK(rel_err(bessel_sum_identity_lhs(n, x), rhs) < 1e-10);
    }
}

TEST_CASE("partition sum closed form") {
  CHECK(lah_sum(1, 0.8) == doctest::Approx(0.8));
  CHECK(lah_sum(2, 1.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(lah_sum(3, 1.0) == doctest::Approx(13.0).epsilon(1e-13));
  for (int n = 1; n <= 12; ++n)
    for (double s : {0.5, 1.0, 2.0})
      CHECK(rel_err(lah_sum(n, s), lah_lhs_enumerated(n, s)) < 1e-11);
}

TEST_CASE("h/g/w sequences: values, recurrences, envelopes") {
  CHECK(hgw_sequences(1, 1.0).h[1] == doctest::Approx(1.0));
  const HgwSequences mid = hgw_sequences(12, M_PI_2);
  CHECK(mid.g[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mid.g[5] == doctest::Approx(M_PI_2 * 9.0).epsilon(1e-13));
  // even orders [(j-2)!!]^2, odd orders (pi/2)[(j-2)!!]^2
  CHECK(mid.g[1] == doctest::Approx(M_PI_2));
  CHECK(mid.g[3] == doctest::Approx(M_PI_2).epsilon(1e-14));
  CHECK(mid.g[4] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(mid.g[6] == doctest::Approx(64.0).epsilon(1e-13));
  CHECK(mid.g[7] == doctest::Approx(M_PI_2 * 225.0).epsilon(1e-13));

  for (double phi : {0.4, 1.0, 2.2, 2.9}) {
    const double d = 1e-5;
    const HgwSequences lo = hgw_sequences(9, phi - d);
    const HgwSequences hi = hgw_sequences(9, phi + d);
    const HgwSequences at = hgw_sequences(9, phi);
    for (int j = 1; j <= 8; ++j) {
      const double fd = (hi.h[static_cast<std::size_t>(j) + 1] -
                         lo.h[static_cast<std::size_t>(j) + 1]) /
                        (2.0 * d);
      const double want = static_cast<double>(j) * j * at.h[static_cast<std::size_t>(j)] *
                          std::sin(phi);
      CHECK(fd == doctest::Approx(want).epsilon(1e-6));
    }
  }

  std::vector<double> prev_h(10, 0.0), prev_g(10, 0.0);
  for (double phi = 0.05; phi < M_PI - 0.05; phi += 0.05) {
    const HgwSequences r = hgw_sequences(9, phi);
    for (int j = 1; j <= 9; ++j) {
      CHECK(r.h[static_cast<std::size_t>(j)] >= 0.0);
      CHECK(r.h[static_cast<std::size_t>(j)] >= prev_h[static_cast<std::size_t>(j)] - 1e-12);
      CHECK(r.g[static_cast<std::size_t>(j)] >= prev_g[static_cast<std::size_t>(j)] - 1e-12);
      prev_h[static_cast<std::size_t>(j)] = r.h[static_cast<std::size_t>(j)];
      prev_g[static_cast<std::size_t>(j)] = r.g[static_cast<std::size_t>(j)];
    }
  }

  for (double phi = 0.02; phi <= M_PI_2 + 1e-12; phi += 0.02) {
    const HgwSequences r = hgw_sequences(12, std::min(phi, M_PI_2));
    for (int j = 1; j <= 12; ++j) {
      CHECK(r.w[static_cast<std::size_t>(j)] > 0.0);
      CHECK(leq(r.w[static_cast<std::size_t>(j)], std::pow(M_PI, j - 1.0)));
    }
  }
  CHECK_THROWS_AS((void)hgw_sequences(3, 0.0), std::domain_error);
  CHECK_THROWS_AS((void)hgw_sequences(3, M_PI), std::domain_error);
}

TEST_CASE("g sequence equals iterated D of z/sin z") {
  for (double phi0 : {0.05, 0.5, 1.0, 1.4, 2.0, 2.8}) {
    const std::size_t m = 26;
    const Jet inv_sin = jet_recip(jet_sin(phi0, m));
    Jet id;
    id.c.assign(m, f128(0));
    id.c[0] = f128(phi0);
    id.c[1] = 1;
    Jet psi = jet_mul(id, inv_sin);
    const HgwSequences r = hgw_sequences(9, phi0);
    CHECK(r.g[1] == doctest::Approx(static_cast<double>(psi.c[0])).epsilon(1e-12));
    // each D application near zero cancels like 1/phi0^2, so even the quad
    // jets lose digits at the smallest probe point
    const double eps = phi0 < 0.1 ? 1e-7 : 1e-11;
    for (int j = 2; j <= 9; ++j) {
      psi = jet_D(psi, inv_sin);
      CHECK(r.g[static_cast<std::size_t>(j)] ==
            doctest::Approx(static_cast<double>(psi.c[0])).epsilon(eps));
    }
  }
}

TEST_CASE("table snapshot serialization") {
  const AposCoeffTable t = build_coeff_table(4);
  const std::string js = t.to_json();
  CHECK(js.find("\"1/1/1\":\"1\"") != std::string::npos);
  CHECK(js.find("\"3/2/2,1\":\"3\"") != std::string::npos);
  CHECK(js.find("\"4/2/2,2,0\":\"7\"") != std::string::npos);
  CHECK(uint128_to_string(static_cast<uint128>(12345678901234567890ull)) ==
        "12345678901234567890");
}
