#pragma once
// Exact combinatorics for iterated D = (1/sin phi) d/dphi derivatives:
// integer coefficient tables of the homogeneous A-polynomials, the positive
// factors Phi_{N,j}(phi) = A_{N,j}(Psi, L Psi, ..., L^{N-j} Psi), iterated
// L = (1/z) d/dz applied to Psi(z) = z/sin z, and the h_j/g_j/w_j sequences.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace heatkit {
namespace comtet {

using uint128 = unsigned __int128;

std::string uint128_to_string(uint128 v);

// multi-index k = (k_0,...,k_{N-j}); member of the index set of (N,j) iff
// sum k_i = N, sum i*k_i = N-j (which forces k_0 >= j)
struct PartitionIndex {
  std::vector<int> k;

  bool operator<(const PartitionIndex& o) const { return k < o.k; }
  bool operator==(const PartitionIndex& o) const { return k == o.k; }
  bool valid_for(int n, int j) const;
};

// coefficients a_{N,j}(k) of the homogeneous polynomials
// A_{N,j}(lambda) = sum_k a_{N,j}(k) lambda^k, 1 <= j <= N <= capacity
class AposCoeffTable {
 public:
  using Row = std::map<PartitionIndex, uint128>;

  int capacity() const { return n_max_; }
  const Row& row(int n, int j) const;
  std::string to_json() const;  // keys "N/j/k0,k1,...", decimal string values

 private:
  friend AposCoeffTable build_coeff_table(int n_max);
  int n_max_ = 0;
  std::vector<std::vector<Row>> rows_;  // rows_[n][j]
};

// builds all coefficients up to n_max by forward propagation of the two-term
// recurrence seeded by a_{1,1}((1)) = 1; wide-integer overflow is checked
AposCoeffTable build_coeff_table(int n_max);

// A_{N,j}(lambda_0,...,lambda_{N-j}); homogeneous of degree N, and grading
// A(..., a b^i lambda_i, ...) = a^N b^{N-j} A(..., lambda_i, ...)
double eval_apoly(int n, int j, const std::vector<double>& lambda, const AposCoeffTable& table);

// (L^i Psi)(phi) for Psi(z) = z/sin z, by termwise L of the even zeta series;
// positive and increasing on [0, pi/2], 0 <= i <= 25
double l_pow_psi(int i, double phi);

// Phi_{N,j}(phi) = A_{N,j}(Psi(phi), L Psi(phi), ..., L^{N-j} Psi(phi))
double phi_nj(int n, int j, double phi, const AposCoeffTable& table);

// sum_{j=1}^N (2N-j-1)!/((N-j)!(j-1)!) x^j, the polynomial side of the
// half-integer Bessel identity x^N sqrt(x/pi) e^{x/2} K_{N-1/2}(x/2)
double bessel_sum_identity_lhs(int n, double x);

// sum_{n=1}^N binom(N,n) (N-1)!/(n-1)! s^n, the closed form of the partition
// sum over k_1 + 2 k_2 + ... = N of N!/(k_1! ... k_N!) s^{k_1+...+k_N}
double lah_sum(int n, double s);

// h_j, g_j = h_j / (sin phi)^{2j-1} = D^{j-1} Psi, and
// w_j = h_j (pi-phi)^{j-1} / (j! phi^j (sin phi)^{j-1}); entries indexed by j
// with slot 0 unused
struct HgwSequences {
  std::vector<double> h;
  std::vector<double> g;
  std::vector<double> w;
};

HgwSequences hgw_sequences(int j_max, double phi);

}  // namespace comtet
}  // namespace heatkit
