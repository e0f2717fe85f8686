#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace maass {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using IMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr double kPi = 3.14159265358979323846;

enum class ErrorKind { InvalidInput, HypothesisViolation, NumericalFailure, Unsupported };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

struct InvalidInput : Error {
  explicit InvalidInput(const std::string& w) : Error(ErrorKind::InvalidInput, w) {}
};
struct HypothesisViolation : Error {
  explicit HypothesisViolation(const std::string& w) : Error(ErrorKind::HypothesisViolation, w) {}
};
struct NumericalFailure : Error {
  explicit NumericalFailure(const std::string& w) : Error(ErrorKind::NumericalFailure, w) {}
};
struct Unsupported : Error {
  explicit Unsupported(const std::string& w) : Error(ErrorKind::Unsupported, w) {}
};

// ℓ ∈ 𝔞*_C(n): n complex numbers summing to zero.
struct SpectralParameter {
  std::vector<cplx> ell;

  SpectralParameter() = default;
  explicit SpectralParameter(std::vector<cplx> e, double tol = 1e-12);

  int n() const { return static_cast<int>(ell.size()); }
  const cplx& operator[](int i) const { return ell[i]; }

  // −ρ, the parameter of the constant function
  static SpectralParameter minus_rho(int n);
};

// log-coordinates of the diagonal torus, summing to zero
struct TorusVector {
  std::vector<double> a;
  TorusVector() = default;
  explicit TorusVector(std::vector<double> v, double tol = 1e-12);
};

// z = x·a_y with x upper unitriangular and
// a_y = c·diag(y_1⋯y_{n-1}, …, y_1, 1), c fixing det = 1.
struct IwasawaPoint {
  int n = 2;
  Mat x;                  // n×n upper unitriangular
  std::vector<double> y;  // y_1..y_{n-1}

  IwasawaPoint() = default;
  IwasawaPoint(int n_, Mat x_, std::vector<double> y_);

  static IwasawaPoint upper_half_plane(double x, double y);
  static IwasawaPoint gl3(double x12, double x13, double x23, double y1, double y2);

  double xij(int i, int j) const { return x(i, j); }  // 0-based
  Mat torus() const;   // a_y
  Mat matrix() const;  // x·a_y, determinant 1
};

// Validates n×n matrix with |det − 1| < tol.
Mat make_group_element(const Mat& g, double tol = 1e-10);

void require_rank(int n, const char* where);

}  // namespace maass
