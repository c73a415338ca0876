#pragma once

// Jacobi forms of index one and their Saito-Kurokawa (Maass) lifts.
//
// An index one Jacobi form is stored through c(D), D = 4n - r^2, since its
// (n, r) coefficient depends only on D. The two generators of the cusp
// ring come from the Jacobi Eisenstein series E_{4,1}, E_{6,1}, whose
// coefficients are Cohen's numbers H(k-1, D) / zeta(3-2k).

#include "skl/eigen.hpp"
#include "skl/space.hpp"

#include <optional>

namespace skl::sk {

using mf::QSeries;

// ---------------------------------------------------------------- Cohen

// sum_{a=1}^F chi(a) a^m for m = 0..r, chi = (D0 / .)
inline std::vector<Int> character_power_sums(int64_t D0, int r) {
  int64_t F = D0 < 0 ? -D0 : D0;
  std::vector<Int> S(r + 1, Int(0));
  for (int64_t a = 1; a <= F; ++a) {
    int chi = kronecker(D0, a);
    if (!chi) continue;
    Int p = 1;
    for (int m = 0; m <= r; ++m) {
      if (chi > 0) S[m] += p;
      else S[m] -= p;
      p *= a;
    }
  }
  return S;
}

// L(1 - r, chi_D0) = -B_{r,chi}/r, B_{r,chi} = F^{r-1} sum_a chi(a) B_r(a/F).
inline Rat l_value_negative(int64_t D0, int r, const std::vector<Rat>& B) {
  int64_t F = D0 < 0 ? -D0 : D0;
  auto S = character_power_sums(D0, r);
  Rat s = 0, binom = 1;
  for (int j = 0; j <= r; ++j) {
    // C(r, j) B_j F^{j-1} S_{r-j}
    Rat Fp = j >= 1 ? Rat(ipow(Int(F), j - 1)) : Rat(1, F);
    s += binom * B[j] * Fp * Rat(S[r - j]);
    binom = binom * Rat(r - j, j + 1);
  }
  return -s / r;
}

// Cohen's H(r, N), r odd >= 1: zero unless N = 0 or N = 0, 3 mod 4;
// H(r, 0) = zeta(1 - 2r); otherwise, with -N = D0 f^2,
// L(1 - r, chi_D0) sum_{d | f} mu(d) chi_D0(d) d^{r-1} sigma_{2r-1}(f/d).
inline Rat cohen_H(int r, int64_t N) {
  if (r < 1 || r % 2 == 0) throw std::invalid_argument("cohen_H: r must be odd and positive");
  if (N < 0) return 0;
  auto B = bernoulli_table(2 * r);
  if (N == 0) return -B[2 * r] / (2 * r);
  if (N % 4 == 1 || N % 4 == 2) return 0;
  int64_t f = 1;
  for (int64_t t = isqrt(N); t >= 1; --t)
    if (N % (t * t) == 0 && is_fundamental_discriminant(-N / (t * t))) {
      f = t;
      break;
    }
  int64_t D0 = -N / (f * f);
  if (!is_fundamental_discriminant(D0)) throw std::logic_error("cohen_H: no fundamental factorization");
  Rat L = l_value_negative(D0, r, B);
  Int s = 0;
  for (int64_t d : divisors(f)) {
    int mu = mobius(d), chi = kronecker(D0, d);
    if (!mu || !chi) continue;
    Int sig = 0;
    for (int64_t e : divisors(f / d)) sig += ipow(Int(e), 2 * r - 1);
    Int t = ipow(Int(d), r - 1) * sig;
    if (mu * chi > 0) s += t;
    else s -= t;
  }
  return L * Rat(s);
}

// ---------------------------------------------------------------- forms

struct JacobiForm {
  int weight = 0;
  std::vector<Int> c;  // c[D], D = 0 .. size-1

  size_t size() const { return c.size(); }
  Int at(int64_t D) const {
    if (D < 0) return 0;
    if (static_cast<size_t>(D) >= c.size()) throw std::out_of_range("JacobiForm: discriminant beyond table");
    return c[D];
  }
  // coefficient of q^n zeta^r
  Int coeff(int64_t n, int64_t r) const { return at(4 * n - r * r); }
};

// E_{k,1}, coefficients e(D) = H(k-1, D) / zeta(3-2k), integral for k = 4, 6.
inline JacobiForm jacobi_eisenstein(int k, size_t Dmax) {
  Rat z = cohen_H(k - 1, 0);
  JacobiForm e;
  e.weight = k;
  e.c.resize(Dmax + 1);
  for (size_t D = 0; D <= Dmax; ++D) {
    Rat v = cohen_H(k - 1, static_cast<int64_t>(D)) / z;
    if (denominator(v) != 1) throw std::runtime_error("jacobi_eisenstein: non-integral coefficient");
    e.c[D] = numerator(v);
  }
  return e;
}

// g(tau) phi(tau, z): c'(D) = sum_j a_g(j) c(D - 4j)
inline JacobiForm times_modular(const QSeries& g, int gweight, const JacobiForm& phi) {
  JacobiForm r;
  r.weight = phi.weight + gweight;
  size_t n = phi.size();
  if (g.size() * 4 < n) throw std::out_of_range("times_modular: q-series shorter than D range");
  r.c.assign(n, Int(0));
  for (size_t j = 0; 4 * j < n; ++j) {
    if (g[j] == 0) continue;
    for (size_t D = 4 * j; D < n; ++D)
      if (phi.c[D - 4 * j] != 0) r.c[D] += g[j] * phi.c[D - 4 * j];
  }
  return r;
}

inline JacobiForm combine(const JacobiForm& a, const Int& x, const JacobiForm& b, const Int& y, const Int& den) {
  JacobiForm r;
  r.weight = a.weight;
  r.c.resize(a.size());
  for (size_t D = 0; D < a.size(); ++D) {
    Int v = x * a.c[D] + y * b.c[D];
    if (v % den != 0) throw std::runtime_error("jacobi combination not integral");
    r.c[D] = v / den;
  }
  return r;
}

// phi(tau, 0) = sum_n (sum_r c(4n - r^2)) q^n
inline QSeries at_z0(const JacobiForm& phi, size_t N) {
  QSeries s(N);
  for (size_t n = 0; n < N; ++n) {
    Int t = 0;
    for (int64_t r = -isqrt(4 * n); r <= isqrt(4 * n); ++r) t += phi.at(4 * int64_t(n) - r * r);
    s[n] = t;
  }
  return s;
}

struct Generators {
  JacobiForm phi10, phi12;
};

// phi_{10,1} = (E6 E_{4,1} - E4 E_{6,1}) / 144 and
// phi_{12,1} = (E4^2 E_{4,1} - E6 E_{6,1}) / 144, checked against
// phi_{10,1}(tau, 0) = 0, phi_{12,1}(tau, 0) = 12 Delta and c_{10}(3) = 1.
inline Generators generators(size_t Dmax) {
  if (Dmax < 8) throw std::invalid_argument("generators: need Dmax >= 8");
  size_t nq = Dmax / 4 + 2;
  auto e41 = jacobi_eisenstein(4, Dmax), e61 = jacobi_eisenstein(6, Dmax);
  auto E4 = mf::eisenstein(4, nq), E6 = mf::eisenstein(6, nq);
  Generators g;
  g.phi10 = combine(times_modular(E6, 6, e41), 1, times_modular(E4, 4, e61), -1, 144);
  g.phi12 = combine(times_modular(E4 * E4, 8, e41), 1, times_modular(E6, 6, e61), -1, 144);
  if (g.phi10.c[3] != 1 || g.phi10.c[0] != 0 || g.phi12.c[0] != 0)
    throw std::runtime_error("generators: unexpected normalization");
  size_t nz = Dmax / 4 + 1;
  QSeries z10 = at_z0(g.phi10, nz), z12 = at_z0(g.phi12, nz), D = mf::delta(nz);
  for (size_t n = 0; n < nz; ++n)
    if (z10[n] != 0 || z12[n] != 12 * D[n]) throw std::runtime_error("generators: restriction to z = 0 check failed");
  return g;
}

inline JacobiForm phi_10_1(size_t Dmax) { return generators(Dmax).phi10; }
inline JacobiForm phi_12_1(size_t Dmax) { return generators(Dmax).phi12; }

// ---------------------------------------------------------------- basis

struct JacobiBasis {
  int weight = 0;
  std::vector<JacobiForm> forms;  // M_{l-10} phi10 part first, then M_{l-12} phi12
  size_t n10 = 0;                 // size of the phi10 part
  std::vector<int64_t> pivots;    // D values on which the basis is invertible
  std::vector<std::vector<Rat>> pivot_inverse;

  size_t dim() const { return forms.size(); }
  size_t Dmax() const { return forms.empty() ? 0 : forms[0].size() - 1; }
};

namespace detail {
// Inverse of a small square rational matrix.
inline std::vector<std::vector<Rat>> inverse(std::vector<std::vector<Rat>> A) {
  size_t n = A.size();
  std::vector<std::vector<Rat>> I(n, std::vector<Rat>(n, Rat(0)));
  for (size_t i = 0; i < n; ++i) I[i][i] = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && A[p][c] == 0) ++p;
    if (p == n) throw std::runtime_error("singular rational matrix");
    std::swap(A[c], A[p]);
    std::swap(I[c], I[p]);
    Rat inv = 1 / A[c][c];
    for (size_t j = 0; j < n; ++j) { A[c][j] *= inv; I[c][j] *= inv; }
    for (size_t r = 0; r < n; ++r)
      if (r != c && A[r][c] != 0) {
        Rat f = A[r][c];
        for (size_t j = 0; j < n; ++j) { A[r][j] -= f * A[c][j]; I[r][j] -= f * I[c][j]; }
      }
  }
  return I;
}

// Rank over Q of integer rows.
inline size_t rank(std::vector<std::vector<Rat>> A) {
  size_t r = 0, cols = A.empty() ? 0 : A[0].size();
  for (size_t c = 0; c < cols && r < A.size(); ++c) {
    size_t p = r;
    while (p < A.size() && A[p][c] == 0) ++p;
    if (p == A.size()) continue;
    std::swap(A[r], A[p]);
    for (size_t i = r + 1; i < A.size(); ++i)
      if (A[i][c] != 0) {
        Rat f = A[i][c] / A[r][c];
        for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
      }
    ++r;
  }
  return r;
}
}  // namespace detail

// J^cusp_{l,1} = M_{l-10} phi10 + M_{l-12} phi12, to discriminant Dmax.
inline JacobiBasis jacobi_cusp_basis(int ell, size_t Dmax, const Generators& gen) {
  if (ell < 10 || ell % 2) throw std::invalid_argument("jacobi_cusp_basis: l must be even and >= 10");
  if (gen.phi10.size() < Dmax + 1) throw std::out_of_range("jacobi_cusp_basis: generators too short");
  JacobiBasis B;
  B.weight = ell;
  size_t nq = Dmax / 4 + 2;
  mf::FormCache fc(nq);
  auto trunc = [&](const JacobiForm& p) {
    JacobiForm t = p;
    t.c.resize(Dmax + 1);
    return t;
  };
  JacobiForm p10 = trunc(gen.phi10), p12 = trunc(gen.phi12);
  for (auto& row : mf::space_basis(ell - 10, false, fc).rows) B.forms.push_back(times_modular(row, ell - 10, p10));
  B.n10 = B.forms.size();
  if (ell >= 12)
    for (auto& row : mf::space_basis(ell - 12, false, fc).rows) B.forms.push_back(times_modular(row, ell - 12, p12));
  // pivots by elimination over increasing D
  size_t d = B.dim();
  std::vector<std::vector<Rat>> rows(d, std::vector<Rat>(Dmax + 1));
  for (size_t i = 0; i < d; ++i)
    for (size_t D = 0; D <= Dmax; ++D) rows[i][D] = Rat(B.forms[i].c[D]);
  std::vector<bool> used(d, false);
  for (size_t D = 0; D <= Dmax && B.pivots.size() < d; ++D) {
    size_t p = d;
    for (size_t i = 0; i < d; ++i)
      if (!used[i] && rows[i][D] != 0) { p = i; break; }
    if (p == d) continue;
    used[p] = true;
    B.pivots.push_back(static_cast<int64_t>(D));
    for (size_t i = 0; i < d; ++i)
      if (!used[i] && rows[i][D] != 0) {
        Rat f = rows[i][D] / rows[p][D];
        for (size_t j = D; j <= Dmax; ++j) rows[i][j] -= f * rows[p][j];
      }
  }
  if (B.pivots.size() != d) throw std::runtime_error("jacobi_cusp_basis: basis not independent to this Dmax");
  std::vector<std::vector<Rat>> P(d, std::vector<Rat>(d));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) P[i][j] = Rat(B.forms[j].c[B.pivots[i]]);
  if (d) B.pivot_inverse = detail::inverse(P);
  return B;
}

inline JacobiBasis jacobi_cusp_basis(int ell, size_t Dmax) { return jacobi_cusp_basis(ell, Dmax, generators(Dmax)); }

namespace detail {
template <class T>
T from_rat(const Rat& q) {
  if constexpr (std::is_same_v<T, Real>) return skl::to_real(q);
  else return T(q);
}
}  // namespace detail

// Coordinates of v (given on D = 0..) in the basis, checked on every D up
// to Dcheck; throws if v is not in the span there.
template <class T>
std::vector<T> coordinates(const JacobiBasis& B, const std::vector<T>& v, size_t Dcheck, const T& tol = T(0)) {
  size_t d = B.dim();
  std::vector<T> x(d, T(0));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) x[i] += detail::from_rat<T>(B.pivot_inverse[i][j]) * v.at(B.pivots[j]);
  using std::abs;
  for (size_t D = 0; D <= Dcheck; ++D) {
    T s = 0;
    for (size_t i = 0; i < d; ++i) s += x[i] * T(B.forms[i].c.at(D));
    if (abs(s - v.at(D)) > tol) throw std::runtime_error("coordinates: vector not in the Jacobi cusp space");
  }
  return x;
}

// ---------------------------------------------------------------- Hecke

// Kohnen T(p^2) on c(D), weight l - 1/2:
//   c(p^2 D) + p^{l-2} (-D / p) c(D) + p^{2l-3} c(D / p^2),
// evaluated on D = 0, 3 mod 4; other D stay zero.
template <class T>
std::vector<T> kohnen_Tp2(const std::vector<T>& c, int ell, int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("kohnen_Tp2: p must be prime");
  size_t n = (c.size() - 1) / (p * p) + 1;
  T a = T(ipow(Int(p), ell - 2)), b = T(ipow(Int(p), 2 * ell - 3));
  std::vector<T> r(n, T(0));
  for (size_t D = 0; D < n; ++D) {
    if (D % 4 == 1 || D % 4 == 2) continue;
    T v = c[p * p * D];
    int chi = kronecker(-static_cast<int64_t>(D), p);
    if (chi) v += (chi > 0 ? a : -a) * c[D];
    if (D % (p * p) == 0) v += b * c[D / (p * p)];
    r[D] = v;
  }
  return r;
}

inline std::vector<Rat> rat_vector(const std::vector<Int>& v) { return std::vector<Rat>(v.begin(), v.end()); }
inline std::vector<Real> real_vector(const std::vector<Int>& v) {
  std::vector<Real> r;
  r.reserve(v.size());
  for (auto& x : v) r.emplace_back(x);
  return r;
}

// Matrix of T(p^2): column j holds the coordinates of T(p^2) B_j.
inline std::vector<std::vector<Rat>> kohnen_matrix(const JacobiBasis& B, int64_t p) {
  size_t d = B.dim();
  std::vector<std::vector<Rat>> M(d, std::vector<Rat>(d));
  int64_t need = B.pivots.empty() ? 0 : B.pivots.back();
  for (size_t j = 0; j < d; ++j) {
    auto t = kohnen_Tp2(rat_vector(B.forms[j].c), B.weight, p);
    if (static_cast<int64_t>(t.size()) <= need) throw std::out_of_range("kohnen_matrix: Dmax too small for p^2");
    auto x = coordinates(B, t, t.size() - 1);
    for (size_t i = 0; i < d; ++i) M[i][j] = x[i];
  }
  return M;
}

// ---------------------------------------------------------------- lifts

struct SKLift {
  int weight = 0;
  std::string label;                       // label of the matched f
  mf::Eigenform f;                         // f in B_{2l-2}, short table
  std::vector<Real> c;                     // c[D], first nonzero = 1
  std::optional<std::vector<Rat>> exact;   // when the space is one dimensional
  std::vector<Real> coords;                // in the JacobiBasis it came from
  size_t n10 = 0;
  Real match_defect = 0;                   // worst relative T(p^2) mismatch
};

namespace detail {
// Null vector of A (d x d Real, rank d-1) by full pivoting.
inline std::vector<Real> null_vector(std::vector<std::vector<Real>> A) {
  size_t d = A.size();
  std::vector<size_t> col(d);
  for (size_t i = 0; i < d; ++i) col[i] = i;
  size_t r = 0;
  for (; r + 1 < d; ++r) {
    size_t pi = r, pj = r;
    for (size_t i = r; i < d; ++i)
      for (size_t j = r; j < d; ++j)
        if (abs(A[i][col[j]]) > abs(A[pi][col[pj]])) { pi = i; pj = j; }
    std::swap(A[r], A[pi]);
    std::swap(col[r], col[pj]);
    for (size_t i = r + 1; i < d; ++i) {
      Real f = A[i][col[r]] / A[r][col[r]];
      for (size_t j = r; j < d; ++j) A[i][col[j]] -= f * A[r][col[j]];
    }
  }
  std::vector<Real> x(d, Real(0));
  x[col[d - 1]] = 1;
  for (size_t i = d - 1; i-- > 0;) {
    Real s = 0;
    for (size_t j = i + 1; j < d; ++j) s += A[i][col[j]] * x[col[j]];
    x[col[i]] = -s / A[i][col[i]];
  }
  return x;
}
}  // namespace detail

struct LiftOptions {
  size_t Dmax = 0;          // 0: chosen from the dimension
  size_t f_terms = 8;       // coefficients kept on the matched f
  double tol_bits = 0;      // 0: current precision minus 32 bits
};

// Jacobi eigenforms matched to B_{2l-2} through T(p^2) eigenvalue = a_f(p),
// p = 2, 3, 5. Every eigenvalue must match; ambiguous a_f(2) is an error.
inline std::vector<SKLift> match_lifts(int ell, const LiftOptions& opt = {}) {
  if (ell < 10 || ell % 2) throw std::invalid_argument("match_lifts: l must be even and >= 10");
  int d = mf::dim_M(ell - 10) + mf::dim_M(ell - 12);
  size_t Dmax = opt.Dmax ? opt.Dmax : static_cast<size_t>(25 * (8 * d + 16));
  JacobiBasis B = jacobi_cusp_basis(ell, Dmax);
  auto fs = mf::eigenbasis(2 * ell - 2, std::max<size_t>(opt.f_terms, 2 * d + 4));
  if (fs.size() != B.dim()) throw std::logic_error("match_lifts: dim J^cusp differs from dim S_{2l-2}");
  unsigned bits = current_bits();
  Real tol = ldexp(Real(1), -static_cast<int>(opt.tol_bits > 0 ? opt.tol_bits : bits - 32));
  for (size_t i = 0; i < fs.size(); ++i)
    for (size_t j = i + 1; j < fs.size(); ++j)
      if (abs(fs[i].a[2] - fs[j].a[2]) <= tol * abs(fs[i].a[2]))
        throw std::runtime_error("match_lifts: ambiguous a_f(2) at l = " + std::to_string(ell));
  std::map<int64_t, std::vector<std::vector<Real>>> M;
  for (int64_t p : {2, 3, 5}) {
    auto Mq = kohnen_matrix(B, p);
    std::vector<std::vector<Real>> Mr(B.dim(), std::vector<Real>(B.dim()));
    for (size_t i = 0; i < B.dim(); ++i)
      for (size_t j = 0; j < B.dim(); ++j) Mr[i][j] = skl::to_real(Mq[i][j]);
    M[p] = Mr;
  }
  std::vector<SKLift> out;
  for (auto& f : fs) {
    SKLift L;
    L.weight = ell;
    L.label = f.label;
    L.n10 = B.n10;
    auto A = M[2];
    for (size_t i = 0; i < B.dim(); ++i) A[i][i] -= f.a[2];
    std::vector<Real> v = B.dim() == 1 ? std::vector<Real>{Real(1)} : detail::null_vector(A);
    Real worst = 0, vn = 0;
    for (auto& x : v) vn = std::max(vn, Real(abs(x)));
    for (int64_t p : {2, 3, 5}) {
      for (size_t i = 0; i < B.dim(); ++i) {
        Real s = -f.a[p] * v[i];
        for (size_t j = 0; j < B.dim(); ++j) s += M[p][i][j] * v[j];
        worst = std::max(worst, Real(abs(s) / (abs(f.a[p]) * vn)));
      }
    }
    if (worst > tol)
      throw std::runtime_error("match_lifts: T(p^2) eigenvalue differs from a_f(p) for " + f.label +
                               " (relative " + fmt(worst, 6) + ")");
    L.match_defect = worst;
    L.c.assign(Dmax + 1, Real(0));
    for (size_t i = 0; i < B.dim(); ++i)
      for (size_t D = 0; D <= Dmax; ++D)
        if (B.forms[i].c[D] != 0) L.c[D] += v[i] * Real(B.forms[i].c[D]);
    // first coefficient of clearly nonzero size becomes 1
    Real scale = 0;
    for (size_t D = 0; D <= Dmax; ++D) scale = std::max(scale, Real(abs(L.c[D])));
    size_t D0 = 0;
    while (abs(L.c[D0]) <= tol * scale) ++D0;
    Real s = L.c[D0];
    for (auto& x : L.c) x /= s;
    for (auto& x : v) x /= s;
    L.coords = v;
    if (B.dim() == 1) {
      std::vector<Rat> ex(Dmax + 1);
      Rat sc = Rat(B.forms[0].c[D0]);
      for (size_t D = 0; D <= Dmax; ++D) ex[D] = Rat(B.forms[0].c[D]) / sc;
      L.exact = ex;
    }
    L.f = f;
    out.push_back(std::move(L));
  }
  return out;
}

// ---------------------------------------------------------------- Maass

// A(n, r, m) = sum_{d | (n, r, m)} d^{l-1} c((4nm - r^2) / d^2)
template <class T>
T maass_coefficient(const std::vector<T>& c, int ell, int64_t n, int64_t r, int64_t m) {
  if (n < 0 || m < 0) throw std::domain_error("maass_coefficient: n, m must be >= 0");
  int64_t D = 4 * n * m - r * r;
  if (D < 0) throw std::domain_error("maass_coefficient: 4nm - r^2 < 0");
  if (static_cast<size_t>(D) >= c.size()) throw std::out_of_range("maass_coefficient: discriminant beyond table");
  int64_t g = gcd(gcd(n, r < 0 ? -r : r), m);
  if (g == 0) return c[0];
  T s = T(0);
  for (int64_t d : divisors(g)) s += T(ipow(Int(d), ell - 1)) * c[D / (d * d)];
  return s;
}

inline Real maass_coefficient(const SKLift& F, int64_t n, int64_t r, int64_t m) {
  return maass_coefficient(F.c, F.weight, n, r, m);
}

// (phi | V_q)(tau, z) = q^{l-1} sum_{ad = q} sum_{b mod d} d^{-l} phi((a tau + b)/d, a z),
// expanded term by term: the b-sum of e(nb/d) must vanish unless d | n,
// which is checked. Returns c'(n, r) for 0 <= n <= N, |r| <= R (R = 2 sqrt(N q)),
// stored at [n][r + R].
struct VqTable {
  int64_t N = 0, R = 0, q = 0;
  std::vector<std::vector<Real>> c;
  const Real& at(int64_t n, int64_t r) const { return c.at(n).at(r + R); }
};

inline VqTable vq_apply(const std::vector<Real>& cphi, int ell, int64_t q, int64_t N) {
  if (q < 1 || N < 0) throw std::invalid_argument("vq_apply: need q >= 1, N >= 0");
  VqTable t;
  t.N = N;
  t.q = q;
  t.R = isqrt(4 * N * q);
  t.c.assign(N + 1, std::vector<Real>(2 * t.R + 1, Real(0)));
  Real eps = ldexp(Real(1), -static_cast<int>(current_bits()) + 16);
  Real two_pi = 2 * pi();
  for (int64_t a : divisors(q)) {
    int64_t d = q / a;
    // sum_b e(n b / d) for each residue of n
    std::vector<Real> re(d), im(d);
    for (int64_t res = 0; res < d; ++res)
      for (int64_t b = 0; b < d; ++b) {
        Real th = two_pi * Real(res * b) / Real(d);
        re[res] += cos(th);
        im[res] += sin(th);
      }
    Real w = pow(Real(q), ell - 1) / pow(Real(d), ell);
    int64_t nmax = N * d / a;  // sources with a n / d <= N
    for (int64_t n = 0; n <= nmax; ++n) {
      const Real &sr = re[n % d], &si = im[n % d];
      if (n % d) {
        if (abs(sr) > eps * d || abs(si) > eps * d) throw std::runtime_error("vq_apply: fractional exponent survived");
        continue;
      }
      if (abs(si) > eps * d) throw std::runtime_error("vq_apply: imaginary part survived");
      int64_t nt = a * n / d;
      int64_t rs = isqrt(4 * n);
      for (int64_t r = -rs; r <= rs; ++r) {
        int64_t rt = a * r;
        if (rt < -t.R || rt > t.R) continue;
        size_t D = static_cast<size_t>(4 * n - r * r);
        if (D >= cphi.size()) throw std::out_of_range("vq_apply: source table too short");
        t.c[nt][rt + t.R] += w * sr * cphi[D];
      }
    }
  }
  return t;
}

// ---------------------------------------------------------------- restriction

// b(n, m) = sum_{r^2 <= 4nm} A(n, r, m), n, m = 1..N, stored [n-1][m-1].
template <class T>
std::vector<std::vector<T>> restriction_table(const std::vector<T>& c, int ell, int64_t N) {
  std::vector<std::vector<T>> b(N, std::vector<T>(N, T(0)));
  for (int64_t n = 1; n <= N; ++n)
    for (int64_t m = 1; m <= N; ++m) {
      int64_t rs = isqrt(4 * n * m);
      T s = T(0);
      for (int64_t r = -rs; r <= rs; ++r) s += maass_coefficient(c, ell, n, r, m);
      b[n - 1][m - 1] = s;
    }
  return b;
}

struct RestrictionData {
  int weight = 0;
  std::vector<std::vector<Real>> b;
  bool vanishes = false;     // every b(n, m) zero
  bool certificate = false;  // the M_{l-12} component is zero
};

// Both routes must agree: b identically zero exactly when the lift comes
// from M_{l-10} phi10 alone.
inline RestrictionData restrict_z0(const SKLift& F, int64_t N) {
  RestrictionData r;
  r.weight = F.weight;
  r.b = restriction_table(F.c, F.weight, N);
  Real tol = ldexp(Real(1), -static_cast<int>(current_bits()) + 48);
  // zero means small against the sum of |A(n, r, m)| it came from
  auto absc = F.c;
  for (auto& x : absc) x = abs(x);
  auto mag = restriction_table(absc, F.weight, N);
  r.vanishes = true;
  for (int64_t n = 0; n < N; ++n)
    for (int64_t m = 0; m < N; ++m)
      if (abs(r.b[n][m]) > tol * mag[n][m]) r.vanishes = false;
  Real cnorm = 0;
  for (auto& x : F.coords) cnorm = std::max(cnorm, Real(abs(x)));
  r.certificate = true;
  for (size_t i = F.n10; i < F.coords.size(); ++i)
    if (abs(F.coords[i]) > tol * cnorm) r.certificate = false;
  if (r.vanishes != r.certificate) throw std::runtime_error("restrict_z0: vanishing routes disagree");
  return r;
}

// Exact version for a basis element.
struct ExactRestriction {
  std::vector<std::vector<Int>> b;
  bool vanishes = false, certificate = false;
};

inline ExactRestriction restrict_z0(const JacobiBasis& B, size_t i, int64_t N) {
  ExactRestriction r;
  r.b = restriction_table(B.forms.at(i).c, B.weight, N);
  r.vanishes = true;
  for (auto& row : r.b)
    for (auto& x : row)
      if (x != 0) r.vanishes = false;
  r.certificate = i < B.n10;
  if (r.vanishes != r.certificate) throw std::runtime_error("restrict_z0: vanishing routes disagree");
  return r;
}

// (dimension of the kernel of restriction on J^cusp_{l,1}, dim M_{l-10})
inline std::pair<int, int> nv1_census(int ell) {
  if (ell < 10 || ell % 2) throw std::invalid_argument("nv1_census: l must be even and >= 10");
  int d = mf::dim_M(ell - 10) + mf::dim_M(ell - 12);
  int64_t N = std::max(3, mf::dim_S(ell) + 2);
  size_t Dmax = std::max<size_t>(4 * N * N, 8 * d + 16);
  JacobiBasis B = jacobi_cusp_basis(ell, Dmax);
  std::vector<std::vector<Rat>> rows;
  for (auto& phi : B.forms) {
    auto b = restriction_table(phi.c, ell, N);
    std::vector<Rat> row;
    for (int64_t n = 0; n < N; ++n)
      for (int64_t m = n; m < N; ++m) row.emplace_back(b[n][m]);
    rows.push_back(row);
  }
  int rk = static_cast<int>(detail::rank(rows));
  return {static_cast<int>(B.dim()) - rk, mf::dim_M(ell - 10)};
}

}  // namespace skl::sk
