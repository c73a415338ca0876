#pragma once

// Truncated power series in q with exact integer coefficients.

#include "skl/arith.hpp"
#include "skl/num.hpp"

#include <gmp.h>

#include <algorithm>
#include <vector>

namespace skl::mf {

class QSeries {
 public:
  QSeries() = default;
  explicit QSeries(size_t n) : c_(n, Int(0)) {}
  explicit QSeries(std::vector<Int> c) : c_(std::move(c)) {}

  // number of coefficients held (q^0 .. q^{size-1})
  size_t size() const { return c_.size(); }
  const Int& operator[](size_t i) const { return c_[i]; }
  Int& operator[](size_t i) { return c_[i]; }
  const std::vector<Int>& coeffs() const { return c_; }

  QSeries truncate(size_t n) const {
    return QSeries(std::vector<Int>(c_.begin(), c_.begin() + std::min(n, c_.size())));
  }

  QSeries operator+(const QSeries& o) const {
    size_t n = std::min(size(), o.size());
    QSeries r(n);
    for (size_t i = 0; i < n; ++i) r[i] = c_[i] + o[i];
    return r;
  }
  QSeries operator-(const QSeries& o) const {
    size_t n = std::min(size(), o.size());
    QSeries r(n);
    for (size_t i = 0; i < n; ++i) r[i] = c_[i] - o[i];
    return r;
  }
  QSeries operator*(const Int& s) const {
    QSeries r(*this);
    for (auto& x : r.c_) x *= s;
    return r;
  }
  // exact division, throws if some coefficient is not divisible
  QSeries divexact(const Int& s) const {
    QSeries r(*this);
    for (auto& x : r.c_) {
      if (x % s != 0) throw std::runtime_error("QSeries::divexact: not divisible");
      x /= s;
    }
    return r;
  }
  QSeries operator*(const QSeries& o) const;

  // shift by q^k (keeps size)
  QSeries shift(size_t k) const {
    QSeries r(size());
    for (size_t i = k; i < size(); ++i) r[i] = c_[i - k];
    return r;
  }

  size_t max_bits() const {
    size_t b = 0;
    for (auto& x : c_)
      if (x != 0) b = std::max(b, mpz_sizeinbase(x.backend().data(), 2));
    return b;
  }

  bool operator==(const QSeries& o) const { return c_ == o.c_; }

 private:
  std::vector<Int> c_;
};

namespace detail {

// Pack coefficients into one integer, slot width `limbs` limbs, signs kept.
inline void kron_pack(mpz_t out, const std::vector<Int>& c, size_t n, size_t limbs) {
  std::vector<mp_limb_t> pos(n * limbs, 0), neg(n * limbs, 0);
  bool any_neg = false;
  for (size_t i = 0; i < n; ++i) {
    const mpz_srcptr z = c[i].backend().data();
    int s = mpz_sgn(z);
    if (!s) continue;
    size_t used = mpz_size(z);
    mp_limb_t* dst = (s > 0 ? pos.data() : neg.data()) + i * limbs;
    for (size_t j = 0; j < used; ++j) dst[j] = mpz_getlimbn(z, j);
    any_neg |= s < 0;
  }
  mpz_import(out, pos.size(), -1, sizeof(mp_limb_t), 0, 0, pos.data());
  if (any_neg) {
    mpz_t t;
    mpz_init(t);
    mpz_import(t, neg.size(), -1, sizeof(mp_limb_t), 0, 0, neg.data());
    mpz_sub(out, out, t);
    mpz_clear(t);
  }
}

// Inverse of kron_pack for balanced digits.
inline std::vector<Int> kron_unpack(const mpz_t p, size_t n, size_t limbs) {
  int sign = mpz_sgn(p);
  size_t total = mpz_size(p);
  std::vector<mp_limb_t> l(std::max(total, n * limbs) + limbs, 0);
  size_t cnt = 0;
  if (sign) mpz_export(l.data(), &cnt, -1, sizeof(mp_limb_t), 0, 0, p);
  std::vector<Int> out(n);
  mpz_t d, half, full;
  mpz_init(d);
  mpz_init_set_ui(full, 1);
  mpz_mul_2exp(full, full, limbs * GMP_NUMB_BITS);
  mpz_init(half);
  mpz_tdiv_q_2exp(half, full, 1);
  int carry = 0;
  for (size_t i = 0; i < n; ++i) {
    mpz_import(d, limbs, -1, sizeof(mp_limb_t), 0, 0, l.data() + i * limbs);
    if (carry) mpz_add_ui(d, d, 1);
    carry = mpz_cmp(d, half) >= 0;
    if (carry) mpz_sub(d, d, full);
    if (sign < 0) mpz_neg(d, d);
    mpz_set(out[i].backend().data(), d);
  }
  mpz_clear(d);
  mpz_clear(half);
  mpz_clear(full);
  return out;
}

}  // namespace detail

// Kronecker substitution: one big GMP product per series product.
inline QSeries QSeries::operator*(const QSeries& o) const {
  size_t n = std::min(size(), o.size());
  if (n == 0) return QSeries();
  size_t bits = max_bits() + o.max_bits() + 2;
  size_t lg = 1;
  while ((size_t(1) << lg) < n) ++lg;
  bits += lg + 1;
  size_t limbs = (bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
  mpz_t a, b;
  mpz_init(a);
  mpz_init(b);
  detail::kron_pack(a, c_, n, limbs);
  detail::kron_pack(b, o.c_, n, limbs);
  mpz_mul(a, a, b);
  mpz_t lo;
  mpz_init(lo);
  mpz_tdiv_r_2exp(lo, a, n * limbs * GMP_NUMB_BITS);
  // tdiv keeps the sign of a; a truncated product of balanced digits is
  // still a valid balanced expansion of the low part
  QSeries r(detail::kron_unpack(lo, n, limbs));
  mpz_clear(lo);
  mpz_clear(a);
  mpz_clear(b);
  return r;
}

inline QSeries one(size_t n) {
  QSeries r(n);
  if (n) r[0] = 1;
  return r;
}

inline QSeries pow(const QSeries& s, unsigned e, size_t n) {
  QSeries r = one(n), b = s.truncate(n);
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

// sigma_{k-1}(m) for m < n
inline std::vector<Int> sigma_table(unsigned k1, size_t n) {
  std::vector<Int> s(n, Int(0));
  for (size_t d = 1; d < n; ++d) {
    Int dk = ipow(Int(d), k1);
    for (size_t m = d; m < n; m += d) s[m] += dk;
  }
  return s;
}

// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n
inline QSeries eisenstein(int k, size_t n) {
  if (k < 4 || k % 2) throw std::invalid_argument("eisenstein: weight must be even and >= 4");
  Rat f = Rat(-2 * k) / bernoulli(k);
  if (denominator(f) != 1)
    throw std::invalid_argument("eisenstein: normalization not integral at this weight, use eisenstein_rat");
  Int fi = numerator(f);
  auto s = sigma_table(k - 1, n);
  QSeries r(n);
  if (n) r[0] = 1;
  for (size_t m = 1; m < n; ++m) r[m] = fi * s[m];
  return r;
}

inline std::vector<Rat> eisenstein_rat(int k, size_t n) {
  if (k < 4 || k % 2) throw std::invalid_argument("eisenstein: weight must be even and >= 4");
  Rat f = Rat(-2 * k) / bernoulli(k);
  auto s = sigma_table(k - 1, n);
  std::vector<Rat> r(n);
  if (n) r[0] = 1;
  for (size_t m = 1; m < n; ++m) r[m] = f * Rat(s[m]);
  return r;
}

// Delta = q prod (1-q^m)^24 by the power recurrence on the sparse
// pentagonal series of prod(1-q^m). Quadratic-ish in n; delta() below is
// the fast route for long tables.
inline QSeries delta_product(size_t n) {
  QSeries r(n);
  if (n < 2) return r;
  size_t m = n - 1;  // need P_0..P_{m-1}
  std::vector<std::pair<size_t, int>> e;
  for (long j = 1;; ++j) {
    bool any = false;
    for (long s : {j, -j}) {
      long p = s * (3 * s - 1) / 2;
      if (p < static_cast<long>(m)) {
        e.emplace_back(p, (j % 2) ? -1 : 1);
        any = true;
      }
    }
    if (!any) break;
  }
  std::sort(e.begin(), e.end());
  std::vector<Int> P(m, Int(0));
  P[0] = 1;
  Int acc;
  for (size_t i = 1; i < m; ++i) {
    acc = 0;
    for (auto [k, s] : e) {
      if (k > i) break;
      long w = 25 * static_cast<long>(k) - static_cast<long>(i);
      if (s > 0) acc += w * P[i - k];
      else acc -= w * P[i - k];
    }
    P[i] = acc / static_cast<long>(i);
  }
  for (size_t i = 1; i < n; ++i) r[i] = P[i - 1];
  return r;
}

// Delta = (E4^3 - E6^2)/1728 via Kronecker products
inline QSeries delta(size_t n) {
  if (n < 2) return QSeries(n);
  auto e4 = eisenstein(4, n), e6 = eisenstein(6, n);
  return (e4 * e4 * e4 - e6 * e6).divexact(Int(1728));
}

}  // namespace skl::mf
