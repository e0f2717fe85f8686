#include "maass/numeric/wide_real.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace maass::num {

namespace {
void normalize(WideReal& w) {
  if (w.m == 0.0 || !std::isfinite(w.m)) {
    if (w.m == 0.0) w.e = 0;
    return;
  }
  int k = 0;
  w.m = std::frexp(w.m, &k);
  w.e += k;
}
}  // namespace

WideReal::WideReal(double v) : m(v), e(0) { normalize(*this); }

WideReal WideReal::from_parts(double mant, std::int64_t exp2) {
  WideReal w;
  w.m = mant;
  w.e = exp2;
  normalize(w);
  return w;
}

WideReal WideReal::exp(double ln_value) {
  if (ln_value == -std::numeric_limits<double>::infinity()) return WideReal(0.0);
  if (!std::isfinite(ln_value)) throw std::domain_error("WideReal::exp: non-finite");
  // split in long double so the residual keeps its relative accuracy
  const long double l2 = std::log(2.0L);
  const long double k = std::floor(static_cast<long double>(ln_value) / l2);
  const long double r = static_cast<long double>(ln_value) - k * l2;
  return from_parts(static_cast<double>(std::exp(r)), static_cast<std::int64_t>(k));
}

double WideReal::ln() const {
  if (m == 0.0) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(std::log(static_cast<long double>(std::abs(m))) +
                             static_cast<long double>(e) * std::log(2.0L));
}

double WideReal::log10() const { return ln() / std::log(10.0); }

double WideReal::to_double() const {
  if (e > 4000) return std::copysign(std::numeric_limits<double>::infinity(), m);
  if (e < -4000) return std::copysign(0.0, m);
  return std::ldexp(m, static_cast<int>(e));
}

bool WideReal::finite_positive() const { return m > 0.0 && std::isfinite(m); }

std::string WideReal::to_string(int sig) const {
  if (m == 0.0) return "0";
  if (!std::isfinite(m)) return m > 0 ? "inf" : (m < 0 ? "-inf" : "nan");
  const long double l10 =
      std::log10(static_cast<long double>(std::abs(m))) + static_cast<long double>(e) * std::log10(2.0L);
  long double d = std::floor(l10);
  long double mant = std::pow(10.0L, l10 - d);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lf", sig - 1, mant);
  if (buf[0] == '1' && buf[1] == '0') {  // rounding carried to 10.0…
    mant /= 10.0L;
    d += 1.0L;
    std::snprintf(buf, sizeof buf, "%.*Lf", sig - 1, mant);
  }
  char out[96];
  std::snprintf(out, sizeof out, "%s%se%+lld", m < 0 ? "-" : "", buf, static_cast<long long>(d));
  return out;
}

WideReal WideReal::operator*(const WideReal& o) const { return from_parts(m * o.m, e + o.e); }

WideReal WideReal::operator/(const WideReal& o) const {
  if (o.m == 0.0) throw std::domain_error("WideReal: division by zero");
  return from_parts(m / o.m, e - o.e);
}

WideReal WideReal::operator+(const WideReal& o) const {
  if (m == 0.0) return o;
  if (o.m == 0.0) return *this;
  const std::int64_t emax = std::max(e, o.e);
  const std::int64_t da = e - emax, db = o.e - emax;
  const double a = da < -1100 ? 0.0 : std::ldexp(m, static_cast<int>(da));
  const double b = db < -1100 ? 0.0 : std::ldexp(o.m, static_cast<int>(db));
  return from_parts(a + b, emax);
}

WideReal WideReal::operator-(const WideReal& o) const { return *this + from_parts(-o.m, o.e); }

bool WideReal::operator<(const WideReal& o) const { return (*this - o).m < 0.0; }

}  // namespace maass::num
