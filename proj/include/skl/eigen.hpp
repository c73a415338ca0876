#pragma once

// Normalized Hecke eigenforms of level one.
//
// T_2 acts on the echelon basis by an integer matrix. Its characteristic
// polynomial is computed exactly, real roots are isolated with a Sturm
// chain over Q and refined by Newton in MPFR. Coefficients of each
// eigenform are a(n) = sum_i v_i B_i(n), evaluated with enough guard bits
// to absorb the cancellation between basis rows.

#include "skl/space.hpp"

#include <optional>
#include <string>

namespace skl::mf {

using IPoly = std::vector<Int>;  // low degree first
using QPoly = std::vector<Rat>;

inline void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Faddeev-LeVerrier, monic result.
inline IPoly charpoly(const std::vector<std::vector<Int>>& A) {
  size_t n = A.size();
  std::vector<std::vector<Rat>> M(n, std::vector<Rat>(n, Rat(0))), AM(n, std::vector<Rat>(n));
  std::vector<Rat> c(n + 1, Rat(0));
  c[n] = 1;
  for (size_t k = 1; k <= n; ++k) {
    // M <- A M + c_{n-k+1} I
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        Rat s = 0;
        for (size_t l = 0; l < n; ++l) s += Rat(A[i][l]) * M[l][j];
        AM[i][j] = s;
      }
    for (size_t i = 0; i < n; ++i) AM[i][i] += c[n - k + 1];
    M = AM;
    Rat tr = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t l = 0; l < n; ++l) tr += Rat(A[i][l]) * M[l][i];
    c[n - k] = -tr / Rat(static_cast<long>(k));
  }
  IPoly r(n + 1);
  for (size_t i = 0; i <= n; ++i) {
    if (denominator(c[i]) != 1) throw std::runtime_error("charpoly: non-integral coefficient");
    r[i] = numerator(c[i]);
  }
  return r;
}

template <class T>
T peval(const IPoly& p, const T& x) {
  T r = 0;
  for (size_t i = p.size(); i-- > 0;) r = r * x + T(p[i]);
  return r;
}

inline Rat peval_q(const QPoly& p, const Rat& x) {
  Rat r = 0;
  for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

inline QPoly qrem(QPoly a, const QPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rat f = a.back() / b.back();
    size_t sh = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[sh + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline std::vector<QPoly> sturm_chain(const IPoly& p) {
  QPoly p0(p.begin(), p.end()), p1;
  for (size_t i = 1; i < p.size(); ++i) p1.push_back(Rat(p[i]) * Rat(static_cast<long>(i)));
  std::vector<QPoly> ch{p0, p1};
  while (ch.back().size() > 1) {
    QPoly r = qrem(ch[ch.size() - 2], ch.back());
    if (r.empty()) break;
    for (auto& x : r) x = -x;
    ch.push_back(r);
  }
  return ch;
}

inline int sign_changes(const std::vector<QPoly>& ch, const Rat& x) {
  int cnt = 0, last = 0;
  for (auto& q : ch) {
    Rat v = peval_q(q, x);
    int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (!s) continue;
    if (last && s != last) ++cnt;
    last = s;
  }
  return cnt;
}

// True when p has no repeated roots (the chain ends in a constant).
inline bool squarefree(const IPoly& p) { return sturm_chain(p).back().size() == 1; }

// Real roots, increasing, to `bits` of precision.
inline std::vector<Real> real_roots(const IPoly& p, unsigned bits) {
  if (p.size() < 2) return {};
  if (!squarefree(p)) throw std::runtime_error("real_roots: repeated roots, eigenvalues not separated");
  auto ch = sturm_chain(p);
  Rat bound = 1;
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    Rat q = abs(Rat(p[i]) / Rat(p.back()));
    if (q + 1 > bound) bound = q + 1;
  }
  std::vector<std::pair<Rat, Rat>> iv;
  std::vector<std::pair<Rat, Rat>> todo{{-bound, bound}};
  while (!todo.empty()) {
    auto [lo, hi] = todo.back();
    todo.pop_back();
    int n = sign_changes(ch, lo) - sign_changes(ch, hi);
    if (n == 0) continue;
    if (n == 1) { iv.emplace_back(lo, hi); continue; }
    Rat mid = (lo + hi) / 2;
    if (peval_q(ch[0], mid) == 0) mid += (hi - lo) / 7;
    todo.emplace_back(lo, mid);
    todo.emplace_back(mid, hi);
  }
  std::sort(iv.begin(), iv.end());
  PrecisionGuard g(bits + 32);
  IPoly dp;
  for (size_t i = 1; i < p.size(); ++i) dp.push_back(p[i] * static_cast<long>(i));
  std::vector<Real> roots;
  for (auto [lo, hi] : iv) {
    Real a = to_real(lo), b = to_real(hi);
    Real fa = peval(p, a);
    // bisection until the bracket is narrow enough for Newton to be safe
    for (int it = 0; it < 60; ++it) {
      Real m = (a + b) / 2;
      Real fm = peval(p, m);
      if ((fm < 0) == (fa < 0)) { a = m; fa = fm; } else { b = m; }
    }
    Real x = (a + b) / 2;
    for (int it = 0; it < 200; ++it) {
      Real dx = peval(p, x) / peval(dp, x);
      x -= dx;
      if (x < a || x > b) throw std::runtime_error("real_roots: Newton left the bracket");
      if (dx == 0 || abs(dx) < abs(x) * ldexp(Real(1), -static_cast<int>(bits) - 16)) break;
    }
    roots.push_back(x);
  }
  if (roots.size() + 1 != p.size()) throw std::runtime_error("real_roots: expected all roots real");
  return roots;
}

struct Eigenform {
  int weight = 0;
  std::string label;
  std::vector<Real> a;       // a[0] = 0, a[1] = 1
  std::vector<Real> lambda;  // a(n) / n^{(k-1)/2}
  std::optional<std::vector<Int>> exact;
  IPoly t2_charpoly;

  size_t size() const { return a.size(); }
  const Real& lam(size_t n) const {
    if (n >= lambda.size()) throw std::out_of_range("eigenform table too short");
    return lambda[n];
  }
};

inline std::string label_for(int k, size_t i) { return std::to_string(k) + static_cast<char>('a' + i); }

// Deligne normalization in place.
inline void normalize_lambda(Eigenform& f) {
  f.lambda.assign(f.a.size(), Real(0));
  Real e = Real(f.weight - 1) / 2;
  for (size_t n = 1; n < f.a.size(); ++n) f.lambda[n] = f.a[n] / pow(Real(n), e);
}

// All normalized eigenforms in S_k with coefficients a(0..n-1).
inline std::vector<Eigenform> eigenbasis(int k, size_t n, FormCache& fc, unsigned bits = current_bits()) {
  if (fc.size() < n) throw std::invalid_argument("eigenbasis: cache shorter than request");
  SpaceBasis sb = space_basis(k, true, fc);
  size_t d = sb.rows.size();
  std::vector<Eigenform> out;
  if (d == 0) return out;
  if (n < 2 * d + 2) throw std::invalid_argument("eigenbasis: precision too low for T_2");
  auto M = hecke_matrix(sb, 2);
  IPoly cp = charpoly(M);
  if (d == 1) {
    Eigenform f;
    f.weight = k;
    f.t2_charpoly = cp;
    std::vector<Int> ex(sb.rows[0].coeffs().begin(), sb.rows[0].coeffs().begin() + n);
    for (auto& x : ex) f.a.push_back(Real(x));
    f.exact = std::move(ex);
    normalize_lambda(f);
    out.push_back(std::move(f));
  } else {
    size_t bb = 0;
    for (auto& r : sb.rows) bb = std::max(bb, r.truncate(n).max_bits());
    unsigned wbits = bits + static_cast<unsigned>(bb) + 64;
    auto roots = real_roots(cp, wbits);
    for (auto& x : roots) {
      PrecisionGuard g(wbits);
      // (M - xI) v = 0 with v_0 = 1: solve the last d-1 equations in the
      // unknowns v_1..v_{d-1}, Gaussian elimination with pivoting.
      size_t m = d - 1;
      std::vector<std::vector<Real>> A(m, std::vector<Real>(m + 1));
      for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < m; ++j) A[i][j] = Real(M[i + 1][j + 1]) - (i == j ? x : Real(0));
        A[i][m] = -Real(M[i + 1][0]);
      }
      for (size_t c = 0; c < m; ++c) {
        size_t piv = c;
        for (size_t r = c + 1; r < m; ++r)
          if (abs(A[r][c]) > abs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        for (size_t r = 0; r < m; ++r) {
          if (r == c) continue;
          Real f = A[r][c] / A[c][c];
          for (size_t j = c; j <= m; ++j) A[r][j] -= f * A[c][j];
        }
      }
      std::vector<Real> v(d);
      v[0] = 1;
      for (size_t i = 0; i < m; ++i) v[i + 1] = A[i][m] / A[i][i];
      // residual of the first equation certifies the eigenvector
      Real res = Real(M[0][0]) - x;
      for (size_t j = 1; j < d; ++j) res += Real(M[0][j]) * v[j];
      if (abs(res) > ldexp(abs(x) + 1, -static_cast<int>(bits)))
        throw std::runtime_error("eigenbasis: eigenvector residual too large");
      Eigenform f;
      f.weight = k;
      f.t2_charpoly = cp;
      f.a.resize(n);
      std::vector<Real> acc(n, Real(0));
      for (size_t i = 0; i < d; ++i)
        for (size_t t = 0; t < n; ++t)
          if (sb.rows[i][t] != 0) acc[t] += v[i] * Real(sb.rows[i][t]);
      for (size_t t = 0; t < n; ++t) f.a[t] = Real(acc[t], bits_to_digits(bits));
      out.push_back(std::move(f));
    }
    for (auto& f : out) normalize_lambda(f);
  }
  std::sort(out.begin(), out.end(), [](const Eigenform& x, const Eigenform& y) {
    if (x.lambda[2] != y.lambda[2]) return x.lambda[2] > y.lambda[2];
    return x.lambda.size() > 3 && x.lambda[3] > y.lambda[3];
  });
  for (size_t i = 0; i < out.size(); ++i) out[i].label = label_for(k, i);
  return out;
}

inline std::vector<Eigenform> eigenbasis(int k, size_t n, unsigned bits = current_bits()) {
  FormCache fc(n);
  return eigenbasis(k, n, fc, bits);
}

// lambda(p^e) for e = 0..emax from lambda(p) by the Hecke recurrence.
inline std::vector<Real> prime_power_lambdas(const Real& lp, int emax) {
  std::vector<Real> v(emax + 1);
  v[0] = 1;
  if (emax >= 1) v[1] = lp;
  for (int e = 2; e <= emax; ++e) v[e] = lp * v[e - 1] - v[e - 2];
  return v;
}

// max |lambda(m)lambda(n) - sum_{d|(m,n)} lambda(mn/d^2)| over the pairs.
inline Real hecke_defect(const Eigenform& f, const std::vector<std::pair<int64_t, int64_t>>& pairs) {
  Real worst = 0;
  for (auto [m, n] : pairs) {
    Real s = 0;
    for (int64_t d : divisors(gcd(m, n))) s += f.lam(m * n / (d * d));
    worst = std::max(worst, Real(abs(f.lam(m) * f.lam(n) - s)));
  }
  return worst;
}

}  // namespace skl::mf
