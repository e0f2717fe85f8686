#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "maass/numeric/rng.hpp"
#include "maass/types.hpp"

namespace maass {

// ♮̂_p^n(ℓ₁, ℓ₂) = ∏_{k ≤ ⌊n/2⌋} ∏_{|I| = |J| = k} (1 − p^{−(ℓ₁(I) + ℓ₂(J))}),
// ℓ(I) = Σ_{i∈I} ℓ_i. ℓ₁ is the archimedean argument, ℓ₂ the one at p.
cplx natural_symbol(long long p, const SpectralParameter& ell1, const SpectralParameter& ell2);

// (p^{−a} + p^{a})^{n·2^{n−1}}, a = (n²−1)/(2(n²+1))
double natural_norm_bound(int n, long long p);

// ---- exact bookkeeping ----------------------------------------------------

struct Rational {
  long long num = 0, den = 1;
  Rational() = default;
  Rational(long long n, long long d = 1);
  bool is_zero() const { return num == 0; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const { return *this + Rational(-o.num, o.den); }
  Rational operator*(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

// c + Σ_s coef[s]·σ_s over free complex symbols σ_s.
struct AffineForm {
  Rational c;
  std::map<int, Rational> coef;  // zero coefficients are never stored

  static AffineForm constant(Rational r) { return {r, {}}; }
  static AffineForm symbol(int s, Rational r = 1);
  bool is_zero() const { return c.is_zero() && coef.empty(); }
  cplx eval(const std::vector<cplx>& sym) const;
  AffineForm operator+(const AffineForm& o) const;
  AffineForm operator-() const;
  AffineForm operator-(const AffineForm& o) const { return *this + (-o); }
  AffineForm scaled(Rational r) const;
};

using SymbolicParameter = std::vector<AffineForm>;

struct ExactSymbolValue {
  cplx value = 0.0;
  int forced_zero_factors = 0;  // factors whose exponent is identically zero
};

// Factors with an identically vanishing exponent are exact zeros; the value
// is then exactly 0 regardless of the symbol values.
ExactSymbolValue natural_symbol_exact(long long p, const SymbolicParameter& ell1, const SymbolicParameter& ell2,
                                      const std::vector<cplx>& symbols);

// ---- factorization into (archimedean × Hecke) pairs ------------------------

// For each k, with X_I = p^{−ℓ₁(I)} and Y_J = p^{−ℓ₂(J)} over the d = C(n,k)
// k-subsets, ∏_I (1 − X_I x) = Σ_r (−1)^r B_{r,k}(ℓ₁) x^r, so
//   ∏_{I,J} (1 − X_I Y_J) = Σ_λ (−1)^{|λ|} ∏_i B_{λ_i,k}(ℓ₁) · m_λ(Y),
// λ running over partitions with d parts ≤ d and m_λ the monomial symmetric
// function. A pair of the full symbol picks one λ per k.
class SymbolFactorization {
 public:
  SymbolFactorization(int n, long long p);

  int n() const { return n_; }
  long long p() const { return p_; }
  int kmax() const { return static_cast<int>(parts_.size()); }
  const std::vector<std::vector<int>>& partitions(int k) const { return parts_.at(k - 1); }
  std::size_t size() const;  // number of pairs (product over k)

  // B_{r,k}(ℓ₁), r = 0..d
  std::vector<cplx> B(int k, const SpectralParameter& ell1) const;
  cplx a(std::size_t j, const SpectralParameter& ell1) const;
  cplx b(std::size_t j, const SpectralParameter& ell2) const;
  std::string label(std::size_t j) const;  // e.g. "k1:[2,1,0]"

  // Σ_j a_j(ℓ₁) b_j(ℓ₂), evaluated per k and multiplied
  cplx evaluate(const SpectralParameter& ell1, const SpectralParameter& ell2) const;

 private:
  std::vector<int> decode(std::size_t j) const;

  int n_;
  long long p_;
  std::vector<std::vector<std::vector<int>>> parts_;  // [k−1][λ]
};

SymbolFactorization factorize_symbol(int n, long long p);

// ---- explicit operator expansions (n = 2, 3) -------------------------------

// Eigenvalue of the expansion on a joint eigenfunction of type ℓ₁ at ∞ and
// Satake parameter ℓ₂ at p. T_p^(j) acts by λ_p^(j)(ℓ₂) = e_j(p^{−ℓ₂}) and
// T_{p²} (n = 2) by h₂(p^{−ℓ₂}); κ̂ are evaluated at ℓ₁.
//   literal:   as displayed,
//              n=2: T_{p²} + T_p² − 2T_p𝓛_κ + 1
//              n=3: the eight-term expression in T_p, T_p^(2), 𝓛_{κ±j}
//   corrected: n=2 with 𝓛_κ² in place of T_p², n=3 with κ̂₁³ − κ̂₋₁³ added.
struct ExpansionEvaluation {
  cplx symbol = 0.0;
  cplx literal = 0.0;
  cplx corrected = 0.0;
  cplx identified_term = 0.0;  // corrected − literal, computed independently
};

ExpansionEvaluation evaluate_expansions(long long p, const SpectralParameter& ell1, const SpectralParameter& ell2);

std::string expansion_string(int n, bool corrected);

// ---- Eisenstein data -------------------------------------------------------

// E_{n₁,…,n_r}(·; t; φ₁, …, φ_r). constant = true is the constant function
// (ℓ = −ρ at every place); the other fields are then ignored except n.
struct EisensteinProfile {
  int n = 2;
  std::vector<int> partition;
  std::vector<cplx> t;                           // Σ n_i t_i = 0
  std::vector<std::vector<cplx>> phi_infinity;   // ℓ_∞(φ_i), n_i entries; zeros for constants
  std::vector<std::vector<cplx>> phi_finite;     // ℓ_p(φ_i)
  bool constant = false;

  void validate() const;
};

// ℓ_{v,j}(E) = (−1)^δ ((n_i − n)/2 + t_i + η_i) + ℓ_{v,j−η_i}(φ_i), δ = 0 at ∞, 1 at p.
// place 0 ≡ ∞, any prime ≡ finite.
SpectralParameter eisenstein_parameters(const EisensteinProfile& prof, long long place);

// The same assembly over free symbols: t₁..t_{r−1} (t_r eliminated through
// Σ n_i t_i = 0) and the first n_i − 1 entries of each constituent at each
// place. `symbols` holds the profile's numeric values for them.
struct SymbolicProfile {
  SymbolicParameter infinity, finite;
  std::vector<cplx> symbols;
};
SymbolicProfile symbolic_eisenstein(const EisensteinProfile& prof);

// Ordered partitions n = n₁ + … + n_r with r ≥ 2.
std::vector<std::vector<int>> eisenstein_partitions(int n);

struct AnnihilationReport {
  int n = 2;
  long long p = 2;
  int trials = 0;
  std::map<std::string, double> max_eisenstein;        // partition label → max |♮̂| (floating)
  std::map<std::string, double> max_eisenstein_exact;  // same, exact bookkeeping
  double max_constant = 0.0;
  double max_self_dual = 0.0;        // n = 3
  double max_self_dual_exact = 0.0;
  double self_dual_counterexample = 0.0;  // n = 2: max |♮̂| on self-dual pairs (nonvanishing)
  bool self_dual_applicable = false;
  double max_abs = 0.0;       // over all vanishing checks (floating)
  double max_abs_exact = 0.0;
  bool passed = false;        // max_abs < 1e−9 and max_abs_exact < 1e−14
};

AnnihilationReport verify_annihilation(int n, long long p, int trials, std::uint64_t seed);

struct NormSweepReport {
  double bound = 0.0;
  double max_abs = 0.0;  // max |♮̂| over samples
  long long samples = 0;
  long long violations = 0;
};

// |Re ℓ| ≤ 1/2 − 1/(n²+1) at both arguments; Im uniform in [−im_range, im_range].
NormSweepReport norm_bound_sweep(int n, long long p, long long samples, std::uint64_t seed, double im_range = 20.0);

// Random ℓ in 𝔞*_C(n) with |Re ℓ_j| ≤ re_max.
SpectralParameter random_parameter(num::Rng& rng, int n, double re_max, double im_range);

}  // namespace maass
