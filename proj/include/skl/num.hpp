#pragma once

// Scalar types shared by every module.
//   Int  exact integers (GMP)
//   Rat  exact rationals (GMP)
//   Real variable precision binary float (MPFR), precision set per thread

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

namespace skl {

namespace bmp = boost::multiprecision;

using Int = bmp::mpz_int;
using Rat = bmp::mpq_rational;
using Real = bmp::number<bmp::mpfr_float_backend<0>, bmp::et_off>;

constexpr unsigned kDefaultBits = 192;

inline unsigned bits_to_digits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

inline unsigned current_bits() {
  return static_cast<unsigned>(std::ceil((Real::default_precision()) / 0.30102999566398120));
}

inline void set_precision_bits(unsigned bits) {
  Real::default_precision(bits_to_digits(bits));
}

// Every translation unit that includes this header starts at the library
// default instead of the backend's 20 digits.
inline const bool precision_initialised = (set_precision_bits(kDefaultBits), true);

// RAII precision bump, restores the previous default on exit.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits) : saved_(Real::default_precision()) {
    Real::default_precision(bits_to_digits(bits));
  }
  ~PrecisionGuard() { Real::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

inline Real pi() { return boost::math::constants::pi<Real>(); }

inline Real to_real(const Int& z) { return Real(z); }
inline Real to_real(const Rat& q) { return Real(numerator(q)) / Real(denominator(q)); }

// Fixed rendering so reports are byte stable.
inline std::string fmt(const Real& x, int sig = 20) {
  std::ostringstream os;
  os << std::setprecision(sig) << std::scientific << x;
  return os.str();
}
inline std::string fmt(double x, int sig = 17) {
  std::ostringstream os;
  os << std::setprecision(sig) << std::scientific << x;
  return os.str();
}

inline std::string rat_str(const Rat& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

// Minimal complex arithmetic over any real field. std::complex is only
// specified for the builtin floating types.
template <class R>
struct Cplx {
  R re, im;
  Cplx() : re(0), im(0) {}
  Cplx(const R& r) : re(r), im(0) {}  // NOLINT
  Cplx(const R& r, const R& i) : re(r), im(i) {}

  Cplx operator+(const Cplx& o) const { return {re + o.re, im + o.im}; }
  Cplx operator-(const Cplx& o) const { return {re - o.re, im - o.im}; }
  Cplx operator-() const { return {-re, -im}; }
  Cplx operator*(const Cplx& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Cplx operator*(const R& s) const { return {re * s, im * s}; }
  Cplx operator/(const R& s) const { return {re / s, im / s}; }
  Cplx operator/(const Cplx& o) const {
    R d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  Cplx& operator+=(const Cplx& o) { re += o.re; im += o.im; return *this; }
  Cplx& operator-=(const Cplx& o) { re -= o.re; im -= o.im; return *this; }
  Cplx& operator*=(const Cplx& o) { return *this = *this * o; }
  Cplx conj() const { return {re, -im}; }
  R norm2() const { return re * re + im * im; }
};

template <class R>
R abs(const Cplx<R>& z) {
  using std::sqrt;
  return sqrt(z.norm2());
}

template <class R>
Cplx<R> cexp(const Cplx<R>& z) {
  using std::exp; using std::cos; using std::sin;
  R m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

// principal branch
template <class R>
Cplx<R> clog(const Cplx<R>& z) {
  using std::log; using std::atan2;
  return {log(z.norm2()) / 2, atan2(z.im, z.re)};
}

template <class R>
Cplx<R> expi(const R& t) {
  using std::cos; using std::sin;
  return {cos(t), sin(t)};
}

}  // namespace skl
