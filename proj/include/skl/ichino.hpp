#pragma once

// Scale-free checks linking Saito-Kurokawa lifts to central values:
// the diagonal expansion of F(tau, tau') over g(tau) g(tau'), compared with
// L(1/2, sym^2 g x f), and the Kohnen-Zagier proportionality of c(|D|)^2
// with |D|^{l-3/2} L(1/2, f x chi_D).

#include "skl/norm.hpp"
#include "skl/sk_lift.hpp"

namespace skl::sk {

struct DiagonalExpansion {
  int weight = 0;
  int64_t N = 0;
  std::vector<std::string> labels;      // g in B_l
  std::vector<std::vector<Real>> e;     // e[i][j]: coefficient of g_i(tau) g_j(tau')
  Real offdiag = 0;                     // max |e_ij|, i != j
  Real offdiag_relative = 0;            // offdiag / max |e_ii| (0 if both vanish)
  Real residual = 0;                    // max |b - fit| / max |b|
  Real condition = 0;                   // max / min pivot of the normal equations

  std::vector<Real> diagonal() const {
    std::vector<Real> d;
    for (size_t i = 0; i < e.size(); ++i) d.push_back(e[i][i]);
    return d;
  }
};

// Least squares for b(n, m) = sum_{i,j} e_ij a_i(n) a_j(m), n, m <= N, with
// every cross term g_i != g_j an unknown. Normal equations at working
// precision; a condition estimate beyond half the precision is an error.
inline DiagonalExpansion ichino_diagonal_expansion(const SKLift& F, const std::vector<mf::Eigenform>& gs, int64_t N) {
  size_t d = gs.size();
  if (d == 0) throw std::invalid_argument("ichino_diagonal_expansion: S_l is zero");
  if (N < static_cast<int64_t>(2 * d)) throw std::invalid_argument("ichino_diagonal_expansion: need N >= 2 dim S_l");
  for (auto& g : gs)
    if (g.weight != F.weight || static_cast<int64_t>(g.a.size()) <= N)
      throw std::invalid_argument("ichino_diagonal_expansion: eigenforms of the wrong weight or too short");
  DiagonalExpansion r;
  r.weight = F.weight;
  r.N = N;
  for (auto& g : gs) r.labels.push_back(g.label);
  auto b = restriction_table(F.c, F.weight, N);
  size_t u = d * d;
  std::vector<std::vector<Real>> G(u, std::vector<Real>(u + 1, Real(0)));
  Real bmax = 0;
  for (int64_t n = 1; n <= N; ++n)
    for (int64_t m = 1; m <= N; ++m) {
      std::vector<Real> row(u);
      for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) row[i * d + j] = gs[i].a[n] * gs[j].a[m];
      const Real& y = b[n - 1][m - 1];
      bmax = std::max(bmax, Real(abs(y)));
      for (size_t p = 0; p < u; ++p) {
        for (size_t q = 0; q < u; ++q) G[p][q] += row[p] * row[q];
        G[p][u] += row[p] * y;
      }
    }
  // Gaussian elimination, partial pivoting
  Real pmax = 0, pmin = -1;
  for (size_t c = 0; c < u; ++c) {
    size_t p = c;
    for (size_t i = c + 1; i < u; ++i)
      if (abs(G[i][c]) > abs(G[p][c])) p = i;
    std::swap(G[c], G[p]);
    Real pv = abs(G[c][c]);
    pmax = std::max(pmax, pv);
    pmin = pmin < 0 ? pv : std::min(pmin, pv);
    if (pv == 0) throw std::runtime_error("ichino_diagonal_expansion: singular normal equations");
    for (size_t i = c + 1; i < u; ++i) {
      Real f = G[i][c] / G[c][c];
      for (size_t j = c; j <= u; ++j) G[i][j] -= f * G[c][j];
    }
  }
  r.condition = pmax / pmin;
  if (r.condition > ldexp(Real(1), static_cast<int>(current_bits()) / 2))
    throw std::runtime_error("ichino_diagonal_expansion: ill-conditioned (estimate " + fmt(r.condition, 6) + ")");
  std::vector<Real> x(u);
  for (size_t i = u; i-- > 0;) {
    Real s = G[i][u];
    for (size_t j = i + 1; j < u; ++j) s -= G[i][j] * x[j];
    x[i] = s / G[i][i];
  }
  r.e.assign(d, std::vector<Real>(d));
  Real dmax = 0;
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      r.e[i][j] = x[i * d + j];
      if (i == j) dmax = std::max(dmax, Real(abs(x[i * d + j])));
      else r.offdiag = std::max(r.offdiag, Real(abs(x[i * d + j])));
    }
  r.offdiag_relative = dmax > 0 ? r.offdiag / dmax : Real(0);
  Real res = 0;
  for (int64_t n = 1; n <= N; ++n)
    for (int64_t m = 1; m <= N; ++m) {
      Real s = 0;
      for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) s += r.e[i][j] * gs[i].a[n] * gs[j].a[m];
      res = std::max(res, Real(abs(s - b[n - 1][m - 1])));
    }
  r.residual = bmax > 0 ? res / bmax : res;
  return r;
}

// ---------------------------------------------------------------- Ichino

struct IchinoRatio {
  std::string f_label, g1, g2;
  Real expansion_ratio;   // (e_1 <g1,g1>)^2 / (e_2 <g2,g2>)^2
  Real l_ratio;           // L(1/2, sym^2 g1 x f) / L(1/2, sym^2 g2 x f)
  Real l_budget;          // absolute, on l_ratio
  DiagonalExpansion expansion;
  std::vector<lf::RSValue> central;
  Real relative_gap() const { return abs(expansion_ratio / l_ratio - 1); }
};

// For every lift at weight l and every g in B_l after the first, compares
// the two sides against g1. <g,g> enters through L(1, sym^2 g); the other
// factors of <g,g> and the constant of Ichino's formula depend on l and f only.
inline std::vector<IchinoRatio> ichino_ratio_check(int ell, int64_t N = 0, const lf::NormOptions& opt = {}) {
  auto lifts = match_lifts(ell);
  size_t n = lf::norm_table_size(ell, opt);
  mf::FormCache fc(n);
  auto fs = mf::eigenbasis(2 * ell - 2, n, fc, opt.bits);
  auto gs = mf::eigenbasis(ell, n, fc, opt.bits);
  if (gs.size() < 2) throw std::invalid_argument("ichino_ratio_check: need dim S_l >= 2");
  if (N == 0) N = static_cast<int64_t>(2 * gs.size() + 2);
  lf::RSEvaluator ev(ell - 1, opt.rs);
  std::vector<Real> sym2;
  for (auto& g : gs) sym2.push_back(lf::sym2_at_1_extrapolated(g, opt.sym2_V0, opt.sym2_levels).value);
  std::vector<IchinoRatio> out;
  for (auto& F : lifts) {
    const mf::Eigenform* f = nullptr;
    for (auto& x : fs)
      if (x.label == F.label) f = &x;
    if (!f) throw std::logic_error("ichino_ratio_check: lift label not in the eigenbasis");
    auto ex = ichino_diagonal_expansion(F, gs, N);
    std::vector<lf::RSValue> L;
    for (auto& g : gs) L.push_back(lf::rankin_central_value(*f, g, ev, 0, opt.tail_span));
    for (size_t i = 1; i < gs.size(); ++i) {
      IchinoRatio r;
      r.f_label = F.label;
      r.g1 = gs[0].label;
      r.g2 = gs[i].label;
      Real a = ex.e[0][0] * sym2[0], b = ex.e[i][i] * sym2[i];
      r.expansion_ratio = a * a / (b * b);
      r.l_ratio = L[0].value / L[i].value;
      r.l_budget = abs(r.l_ratio) * (L[0].budget / abs(L[0].value) + L[i].budget / abs(L[i].value));
      r.expansion = ex;
      r.central = L;
      out.push_back(std::move(r));
    }
  }
  return out;
}

// ---------------------------------------------------------------- KZ

struct KZRatio {
  Real coefficient_ratio;  // c(|D1|)^2 / c(|D2|)^2
  Real l_ratio;            // (|D1|/|D2|)^{l-3/2} L(1/2, f x chi_D1) / L(1/2, f x chi_D2)
  Real budget;             // absolute, on l_ratio
  Real relative_gap() const { return abs(coefficient_ratio / l_ratio - 1); }
};

inline KZRatio kz_ratio_test(const std::vector<Real>& c, int ell, const mf::Eigenform& f, int64_t D1, int64_t D2) {
  if (f.weight != 2 * ell - 2) throw std::invalid_argument("kz_ratio_test: f must have weight 2l - 2");
  auto at = [&](int64_t D) -> const Real& {
    if (-D >= static_cast<int64_t>(c.size())) throw std::out_of_range("kz_ratio_test: coefficient table too short");
    return c[-D];
  };
  if (at(D2) == 0 || at(D1) == 0) throw std::domain_error("kz_ratio_test: zero coefficient");
  KZRatio r;
  r.coefficient_ratio = at(D1) * at(D1) / (at(D2) * at(D2));
  auto L1 = lf::twisted_central_value(f, D1);
  auto L2 = D1 == D2 ? L1 : lf::twisted_central_value(f, D2);
  Real scale = pow(Real(-D1) / Real(-D2), Real(2 * ell - 3) / 2);
  r.l_ratio = scale * L1.value / L2.value;
  r.budget = abs(r.l_ratio) * (L1.budget / abs(L1.value) + L2.budget / abs(L2.value));
  return r;
}

inline KZRatio kz_ratio_test(const SKLift& F, const mf::Eigenform& f, int64_t D1, int64_t D2) {
  if (f.label != F.label) throw std::invalid_argument("kz_ratio_test: f does not match the lift");
  return kz_ratio_test(F.c, F.weight, f, D1, D2);
}

// NV2: b(1,1) = c(4) + 2 c(3) is the q q' coefficient of the restriction.
inline Rat nv2_coefficient(const SKLift& F) {
  if (!F.exact) throw std::invalid_argument("nv2_coefficient: needs an exact lift");
  return (*F.exact)[4] + 2 * (*F.exact)[3];
}

}  // namespace skl::sk
