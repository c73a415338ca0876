#pragma once

// Level one spaces M_k and S_k: dimensions, echelon bases, Hecke operators.

#include "skl/qseries.hpp"

#include <map>

namespace skl::mf {

inline int dim_M(int k) {
  if (k < 0 || k % 2) return 0;
  if (k % 12 == 2) return k / 12;
  return k / 12 + 1;
}

inline int dim_S(int k) {
  if (k < 12 || k % 2) return 0;
  return dim_M(k) - 1;
}

struct SpaceBasis {
  int weight = 0;
  bool cuspidal = false;
  int dim_M = 0, dim_S = 0;
  // rows in reduced echelon form; row i has pivot at q^{pivot[i]}
  std::vector<QSeries> rows;
  std::vector<size_t> pivot;
};

// E4^a E6^b with 4a + 6b = w, fewest factors of E6.
inline std::pair<int, int> e4e6_exponents(int w) {
  if (w == 0) return {0, 0};
  for (int b = 0; 6 * b <= w; ++b)
    if ((w - 6 * b) % 4 == 0) return {(w - 6 * b) / 4, b};
  throw std::invalid_argument("no E4/E6 monomial of this weight");
}

// Small memo of powers so building several spaces to the same precision
// reuses the expensive products.
class FormCache {
 public:
  explicit FormCache(size_t n) : n_(n) {}
  size_t size() const { return n_; }
  const QSeries& e4_pow(int a) { return get(pe4_, a, [&] { return eisenstein(4, n_); }); }
  const QSeries& e6_pow(int b) { return get(pe6_, b, [&] { return eisenstein(6, n_); }); }
  const QSeries& delta_pow(int j) { return get(pdl_, j, [&] { return delta(n_); }); }

 private:
  template <class F>
  const QSeries& get(std::map<int, QSeries>& m, int e, F base) {
    auto it = m.find(e);
    if (it != m.end()) return it->second;
    QSeries v;
    if (e == 0) v = one(n_);
    else if (e == 1) v = base();
    else v = get(m, e / 2, base) * get(m, e - e / 2, base);
    return m.emplace(e, std::move(v)).first->second;
  }
  size_t n_;
  std::map<int, QSeries> pe4_, pe6_, pdl_;
};

// Victor-Miller style basis: Delta^j E4^a E6^b, j = 0..d-1, unitriangular in
// q^j, then fully reduced with integer row operations.
inline SpaceBasis space_basis(int k, bool cuspidal, FormCache& fc) {
  SpaceBasis sb;
  sb.weight = k;
  sb.cuspidal = cuspidal;
  sb.dim_M = dim_M(k);
  sb.dim_S = dim_S(k);
  size_t n = fc.size();
  int d = sb.dim_M;
  if (d == 0) return sb;
  if (static_cast<size_t>(d) > n) throw std::invalid_argument("space_basis: precision below dimension");
  std::vector<QSeries> rows;
  for (int j = 0; j < d; ++j) {
    auto [a, b] = e4e6_exponents(k - 12 * j);
    rows.push_back(fc.delta_pow(j) * fc.e4_pow(a) * fc.e6_pow(b));
  }
  for (int i = d - 1; i >= 0; --i)
    for (int r = 0; r < i; ++r) {
      Int f = rows[r][i];
      if (f != 0) rows[r] = rows[r] - rows[i] * f;
    }
  int start = cuspidal ? 1 : 0;
  if (cuspidal && k == 0) start = 1;
  for (int j = start; j < d; ++j) {
    sb.rows.push_back(rows[j]);
    sb.pivot.push_back(j);
  }
  return sb;
}

inline SpaceBasis space_basis(int k, bool cuspidal, size_t n) {
  FormCache fc(n);
  return space_basis(k, cuspidal, fc);
}

// (T_n f)(m) = sum_{d | (m,n)} d^{k-1} a(mn/d^2); output holds every m with
// mn below the input size.
inline QSeries hecke_Tn(const QSeries& s, int k, int64_t n) {
  if (n < 1) throw std::invalid_argument("hecke_Tn: n must be positive");
  size_t out = (s.size() + n - 1) / n;
  if (out == 0) throw std::out_of_range("hecke_Tn: insufficient precision");
  QSeries r(out);
  auto dn = divisors(n);
  std::vector<Int> dpow;
  for (auto d : dn) dpow.push_back(ipow(Int(d), k - 1));
  for (size_t m = 0; m < out; ++m) {
    Int acc = 0;
    for (size_t i = 0; i < dn.size(); ++i) {
      int64_t d = dn[i];
      if (m % d) continue;
      size_t idx = m * n / (d * d);
      if (m == 0) idx = 0;
      if (idx >= s.size()) throw std::out_of_range("hecke_Tn: insufficient precision");
      acc += dpow[i] * s[idx];
    }
    r[m] = acc;
  }
  return r;
}

// Matrix of T_n on the basis: T_n(row_j) = sum_i M[i][j] row_i. Read off at
// the pivot columns.
inline std::vector<std::vector<Int>> hecke_matrix(const SpaceBasis& sb, int64_t n) {
  size_t d = sb.rows.size();
  std::vector<std::vector<Int>> M(d, std::vector<Int>(d));
  for (size_t j = 0; j < d; ++j) {
    QSeries t = hecke_Tn(sb.rows[j], sb.weight, n);
    for (size_t i = 0; i < d; ++i) {
      if (sb.pivot[i] >= t.size()) throw std::out_of_range("hecke_matrix: insufficient precision");
      M[i][j] = t[sb.pivot[i]];
    }
    // the image must lie in the span
    QSeries chk(t.size());
    for (size_t i = 0; i < d; ++i) chk = chk + sb.rows[i].truncate(t.size()) * M[i][j];
    if (!(chk == t)) throw std::runtime_error("hecke_matrix: image not in span, precision too low");
  }
  return M;
}

}  // namespace skl::mf
