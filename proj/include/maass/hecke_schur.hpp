#pragma once

#include <functional>
#include <map>
#include <vector>

#include "maass/types.hpp"

namespace maass {

// Π_M: ℓ at ∞ plus Satake parameters at finitely many primes.
struct LocalDataSet {
  int n = 2;
  SpectralParameter infinity;
  std::map<long long, SpectralParameter> finite;  // prime → ℓ_p

  void validate() const;  // ranks agree, primes are prime, |Re ℓ_∞,j| < 1/2
  bool has_place(long long p) const { return p == 0 || finite.count(p) > 0; }  // 0 ≡ ∞
  const SpectralParameter& at(long long place) const;
};

using HeckeIndex = std::vector<long long>;  // (m_1, …, m_{n−1}), m_k ≥ 1

bool is_prime(long long p);
std::vector<std::pair<long long, int>> factorize(long long m);

// S_{k_1..k_{n−1}}(x) by Jacobi–Trudi: partition λ_i = k_1 + … + k_{n−i},
// s_λ = det[h_{λ_i − i + j}]. Finite at repeated x.
cplx schur(const std::vector<int>& k, const std::vector<cplx>& x);

// e_j(p^{−ℓ_1}, …, p^{−ℓ_n})
cplx satake_hecke_eigenvalue(int j, long long p, const SpectralParameter& ell_p);

// p^{−ℓ}
std::vector<cplx> satake_values(long long p, const SpectralParameter& ell_p);

// A_{Π_M}: Schur values at each p ∈ M, multiplicative across coprime
// supports, zero on indices divisible by a prime outside M. Values with all
// m_k ≤ dense_bound are tabulated at construction; the table is read-only
// afterwards.
class CoefficientTable {
 public:
  explicit CoefficientTable(const LocalDataSet& data, long long dense_bound = 0);

  cplx operator()(const HeckeIndex& m) const;
  cplx at2(long long m1, long long m2) const;  // n = 3 fast path (m_k ≥ 1)
  cplx at1(long long m) const;                 // n = 2 fast path
  int n() const { return n_; }
  const LocalDataSet& data() const { return data_; }

 private:
  cplx compute(const HeckeIndex& m) const;

  LocalDataSet data_;
  int n_;
  long long dense_ = 0;
  std::vector<cplx> dense_vals_;
};

// G_N with 0 ≤ c_{i,j} < c_j, in a fixed lexicographic order.
std::vector<IMat> hecke_cosets(int n, long long N);
long long hecke_coset_count(int n, long long N);  // Σ_{c_1⋯c_n = N} ∏_j c_j^{j−1}

using PointFunction = std::function<cplx(const IwasawaPoint&)>;

// N^{−(n−1)/2} Σ_{γ ∈ G_N} f(γz), projective action. Cosets may be evaluated
// in parallel; the sum is taken in enumeration order.
cplx apply_T_N(const PointFunction& f, long long N, const IwasawaPoint& z);

// Formal polynomial in the commuting operators T_{p^r}.
struct HeckeMonomial {
  double coeff = 1.0;
  std::vector<int> powers;  // sorted r's: ∏ T_{p^r}
};

struct HeckeExpansion {
  int j = 1;
  long long p = 2;
  std::vector<HeckeMonomial> terms;
  long long sharp = 0;  // ♯T_p^(j): Σ over monomials of ∏ |G_{p^r}|

  // Σ coeff·∏ eig(r)
  cplx eigenvalue(const std::function<cplx(int)>& eig) const;
  std::string to_string() const;
};

// T_p^(j) = Σ_{k<j} (−1)^k T_{p^{k+1}} T_p^{(j−k−1)}, T_p^(0) = 1.
HeckeExpansion T_p_j_expansion(int n, int j, long long p);

struct MultiplicativityReport {
  double max_deviation = 0.0;  // relative to max(1, |lhs|)
  int checks = 0;
};

// A(p^e,1,…)·A(p^k) = Σ_{Σa = e, a_j ≤ k_j (j<n)} A(p^{k_j + a_{j−1} − a_j}),
// a_0 := a_n, over all exponent tuples ≤ max_exp.
MultiplicativityReport verify_multiplicativity(const SpectralParameter& ell_p, long long p, int max_exp);

}  // namespace maass
