#pragma once

// Inverse Mellin integrals (1/2 pi i) int_{(sigma)} g(u) y^{-u} du by the
// trapezoid rule on a vertical line, for many y against one precomputed
// table of g. The integrands used here are analytic in a strip around the
// line and decay like exp(-t^2), so the rule converges geometrically in
// 1/h and the half-grid sum gives a cheap, conservative error estimate.

#include "skl/num.hpp"

#include <mpfr.h>

#include <functional>
#include <vector>

namespace skl {

struct ContourValue {
  Cplx<Real> value;
  Real err;  // |full grid - half grid| + truncation estimate
};

class ContourSum {
 public:
  // symmetric: g(conj u) = conj g(u), so only t >= 0 is tabulated and the
  // result is real.
  ContourSum(std::function<Cplx<Real>(const Cplx<Real>&)> g, Real sigma, Real h, Real T, bool symmetric)
      : sigma_(sigma), h_(h), T_(T), sym_(symmetric) {
    long m = static_cast<long>(floor(T / h).convert_to<double>());
    lo_ = sym_ ? 0 : -m;
    hi_ = m;
    for (long j = lo_; j <= hi_; ++j) {
      Cplx<Real> u(sigma, Real(j) * h);
      Cplx<Real> v = g(u);
      if (sym_ && j == 0) v = v * Real(0.5);
      gr_.push_back(v.re);
      gi_.push_back(v.im);
    }
    edge_ = abs(Cplx<Real>(gr_.back(), gi_.back()));
  }

  const Real& sigma() const { return sigma_; }
  const Real& step() const { return h_; }
  const Real& height() const { return T_; }
  size_t nodes() const { return gr_.size(); }

  // max |g| on the line, bounds |I(y)| <= (T/pi) max|g| y^{-sigma}
  Real l1_norm() const {
    Real s = 0;
    for (size_t i = 0; i < gr_.size(); ++i) s += abs(Cplx<Real>(gr_[i], gi_[i]));
    return s * h_ / (sym_ ? pi() : 2 * pi());
  }

  ContourValue eval(const Real& y) const {
    // y^{-u} = y^{-sigma} e^{-i t log y}; twiddle w = e^{-i h log y}
    unsigned prec = static_cast<unsigned>(mpfr_get_prec(gr_[0].backend().data())) + 16;
    mpfr_t ly, cr, ci, wr, wi, t1, t2, sr, si, er, ei;
    for (mpfr_ptr p : {ly, cr, ci, wr, wi, t1, t2, sr, si, er, ei}) mpfr_init2(p, prec);
    mpfr_log(ly, y.backend().data(), MPFR_RNDN);
    mpfr_mul(t1, ly, h_.backend().data(), MPFR_RNDN);
    mpfr_sin_cos(wi, wr, t1, MPFR_RNDN);
    mpfr_neg(wi, wi, MPFR_RNDN);
    // start at t = lo*h
    mpfr_mul_si(t1, t1, lo_, MPFR_RNDN);
    mpfr_sin_cos(ci, cr, t1, MPFR_RNDN);
    mpfr_neg(ci, ci, MPFR_RNDN);
    for (mpfr_ptr p : {sr, si, er, ei}) mpfr_set_zero(p, 1);
    for (size_t i = 0; i < gr_.size(); ++i) {
      mpfr_srcptr a = gr_[i].backend().data(), b = gi_[i].backend().data();
      // (a + ib)(cr + i ci)
      mpfr_mul(t1, a, cr, MPFR_RNDN);
      mpfr_mul(t2, b, ci, MPFR_RNDN);
      mpfr_sub(t1, t1, t2, MPFR_RNDN);
      mpfr_add(sr, sr, t1, MPFR_RNDN);
      bool even = ((static_cast<long>(i) + lo_) % 2) == 0;
      if (even) mpfr_add(er, er, t1, MPFR_RNDN);
      if (!sym_) {
        mpfr_mul(t1, a, ci, MPFR_RNDN);
        mpfr_mul(t2, b, cr, MPFR_RNDN);
        mpfr_add(t1, t1, t2, MPFR_RNDN);
        mpfr_add(si, si, t1, MPFR_RNDN);
        if (even) mpfr_add(ei, ei, t1, MPFR_RNDN);
      }
      // c *= w
      mpfr_mul(t1, cr, wr, MPFR_RNDN);
      mpfr_mul(t2, ci, wi, MPFR_RNDN);
      mpfr_mul(ci, ci, wr, MPFR_RNDN);
      mpfr_fma(ci, cr, wi, ci, MPFR_RNDN);
      mpfr_sub(cr, t1, t2, MPFR_RNDN);
    }
    Real Sr, Si, Er, Ei, L;
    mpfr_set(Sr.backend().data(), sr, MPFR_RNDN);
    mpfr_set(Si.backend().data(), si, MPFR_RNDN);
    mpfr_set(Er.backend().data(), er, MPFR_RNDN);
    mpfr_set(Ei.backend().data(), ei, MPFR_RNDN);
    mpfr_set(L.backend().data(), ly, MPFR_RNDN);
    for (mpfr_ptr p : {ly, cr, ci, wr, wi, t1, t2, sr, si, er, ei}) mpfr_clear(p);
    Real scale = exp(-sigma_ * L) * h_ / (sym_ ? pi() : 2 * pi());
    ContourValue out;
    out.value = Cplx<Real>(Sr * scale, sym_ ? Real(0) : Si * scale);
    // half grid uses every other node at step 2h
    Cplx<Real> half(Er * 2 * scale, sym_ ? Real(0) : Ei * 2 * scale);
    out.err = abs(out.value - half) + edge_ * exp(-sigma_ * L) / (T_ * pi());
    return out;
  }

 private:
  Real sigma_, h_, T_;
  bool sym_;
  long lo_ = 0, hi_ = 0;
  std::vector<Real> gr_, gi_;
  Real edge_;
};

}  // namespace skl
