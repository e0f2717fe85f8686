#pragma once

#include <functional>
#include <vector>

#include "maass/types.hpp"

namespace maass {

struct IwasawaDecomposition {
  IwasawaPoint z;
  Mat k;  // orthogonal factor: g = x·a_y·k
};

// g ∈ SL(n,ℝ). Bottom-up Gram–Schmidt on the rows of g.
IwasawaDecomposition iwasawa_decompose(const Mat& g);

// Same for any g with det g > 0, after scaling to determinant 1; this is the
// projective action used by Hecke operators.
IwasawaPoint iwasawa_point(const Mat& g);

// Matrix action γ·z followed by re-Iwasawa (γ may have det ≠ 1).
IwasawaPoint act(const Mat& gamma, const IwasawaPoint& z);

// Polar exponents a_1 ≥ … ≥ a_n (log singular values of the det-1 scaling).
std::vector<double> polar_exponents(const Mat& g);
double polar_height(const Mat& g);

TorusVector iw_y(const Mat& g);

// ρ_k = (n − 2k + 1)/2, k = 1..n
std::vector<double> rho(int n);

// Exponent of y_j in φ_ℓ: Σ_{k ≤ n−j} (ℓ_k + ρ_k).
std::vector<cplx> phi_exponents(const SpectralParameter& ell);
cplx phi_ell(const SpectralParameter& ell, const Mat& g);
cplx phi_ell_y(const SpectralParameter& ell, const std::vector<double>& y);

cplx laplace_eigenvalue(const SpectralParameter& ell);
cplx casimir_eigenvalue(int j, const SpectralParameter& ell);

double haar_density(const std::vector<double>& y);

bool in_ball(const Mat& g, double delta);
bool siegel_membership(const IwasawaPoint& z, double a, double b);

// Weyl group as coordinate permutations.
std::vector<std::vector<int>> weyl_permutations(int n);
SpectralParameter permute(const SpectralParameter& ell, const std::vector<int>& perm);

// Right-invariant differential operators by finite differences:
// D_{X_1}∘⋯∘D_{X_m} f(g) = ∂^m/∂t_1⋯∂t_m f(g e^{t_1X_1}⋯e^{t_mX_m}) at 0,
// central differences with one Richardson step. f may be evaluated on GL⁺.
using GroupFunction = std::function<cplx(const Mat&)>;
cplx apply_casimir_fd(int j, const GroupFunction& f, const Mat& g, double h = 1e-2);

// Function on ℍⁿ lifted to the group: g ↦ f(iwasawa_point(g)).
GroupFunction lift(const std::function<cplx(const IwasawaPoint&)>& f);

}  // namespace maass
