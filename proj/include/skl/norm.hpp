#pragma once

// Restricted norm N(F_f) of a Saito-Kurokawa lift and its Petersson-weighted
// variant N*(F_f), assembled from central values.

#include "skl/lfunctions.hpp"

#include <sstream>

namespace skl::lf {

struct NormOptions {
  RSConfig rs;
  Real sym2_V0 = 125;
  int sym2_levels = 4;
  size_t tail_span = 4;
  unsigned bits = kDefaultBits;
};

// Volumes and constants as exact rationals times powers of pi.
struct PiMonomial {
  Rat coeff;
  int pi_power = 0;
  Real value() const { return to_real(coeff) * pow(pi(), pi_power); }
  PiMonomial operator*(const PiMonomial& o) const { return {coeff * o.coeff, pi_power + o.pi_power}; }
  PiMonomial operator/(const PiMonomial& o) const { return {coeff / o.coeff, pi_power - o.pi_power}; }
};

inline PiMonomial zeta2() { return {Rat(1, 6), 2}; }
inline PiMonomial zeta4() { return {Rat(1, 90), 4}; }
// vol(SL_2(Z)\H) = 2 zeta(2)/pi, vol(Sp_4(Z)\H_2) = 2 zeta(2) zeta(4)/pi^3
inline PiMonomial v1() { return PiMonomial{Rat(2), -1} * zeta2(); }
inline PiMonomial v2() { return PiMonomial{Rat(2), -3} * zeta2() * zeta4(); }

struct ConjectureConstants {
  PiMonomial c2;     // c'' = (6/pi^3) v2/v1^2
  PiMonomial first;  // 24 c'' zeta(2)
  PiMonomial second; // 24 c'' zeta(2)^3 / zeta(4)
};

inline ConjectureConstants conjecture_constants() {
  PiMonomial c2 = PiMonomial{Rat(6), -3} * v2() / (v1() * v1());
  PiMonomial a = PiMonomial{Rat(24), 0} * c2 * zeta2();
  PiMonomial b = PiMonomial{Rat(24), 0} * c2 * zeta2() * zeta2() * zeta2() / zeta4();
  if (a.pi_power != 0 || b.pi_power != 0) throw std::logic_error("conjecture_constants: powers of pi do not cancel");
  return {c2, a, b};
}

struct NormReport {
  int ell = 0;
  std::string label;                                   // f in B_{2l-2}
  std::vector<std::pair<std::string, RSValue>> rankin; // per g in B_l
  std::vector<std::pair<std::string, LValue>> sym2_g;
  LValue L32, sym2_f;
  Real c_f, c_f_prime;
  Real N, N_petersson_form, N_star;
  Real budget;
};

inline size_t norm_table_size(int ell, const NormOptions& opt) {
  int k = ell - 1;
  size_t X = static_cast<size_t>(std::ceil(opt.rs.cutoff_c * k * k));
  size_t a = opt.tail_span * X;
  size_t b = static_cast<size_t>(std::ceil(detail::kSym2Span * opt.sym2_V0.convert_to<double>() *
                                           std::ldexp(1.0, opt.sym2_levels - 1)));
  return std::max(a, b) + 1;
}

// One report per f in B_{2l-2}; forms are built to the needed length here.
inline std::vector<NormReport> norm_NFf(int ell, const NormOptions& opt = {}) {
  if (ell < 10 || ell % 2) throw std::invalid_argument("norm_NFf: l must be even and >= 10");
  PrecisionGuard pg(opt.bits);
  int k = ell - 1;
  size_t n = norm_table_size(ell, opt);
  mf::FormCache fc(n);
  auto Fs = mf::eigenbasis(2 * k, n, fc, opt.bits);
  auto Gs = mf::eigenbasis(k + 1, n, fc, opt.bits);
  std::unique_ptr<RSEvaluator> ev;
  if (!Gs.empty()) ev = std::make_unique<RSEvaluator>(k, opt.rs);
  std::vector<std::pair<std::string, LValue>> sym2g;
  for (auto& g : Gs) sym2g.emplace_back(g.label, sym2_at_1_extrapolated(g, opt.sym2_V0, opt.sym2_levels));
  Real ratio = (v2() / (v1() * v1())).value();  // pi/30
  std::vector<NormReport> out;
  for (auto& f : Fs) {
    NormReport r;
    r.ell = ell;
    r.label = f.label;
    r.L32 = l_f_at_32(f);
    r.sym2_f = sym2_at_1_extrapolated(f, opt.sym2_V0, opt.sym2_levels);
    r.sym2_g = sym2g;
    r.c_f = ratio * 12 / pi() / (r.L32.value * r.sym2_f.value);
    r.c_f_prime = ratio * 12 / pi() / r.sym2_f.value;
    Real sumL = 0, sumB = 0, star = 0, pet = 0;
    for (size_t i = 0; i < Gs.size(); ++i) {
      RSValue v = rankin_central_value(f, Gs[i], *ev, 0, opt.tail_span);
      Real omega = Real(k) / (2 * pi() * pi()) * sym2g[i].second.value;
      sumL += v.value;
      sumB += v.budget;
      star += v.value / omega;
      pet += sym2g[i].second.value * v.value / omega;
      r.rankin.emplace_back(Gs[i].label, v);
    }
    Real pre = ratio * 24 * pi() / (r.L32.value * r.sym2_f.value) / k;
    r.N = pre * sumL;
    r.N_petersson_form = r.c_f * pet;
    r.N_star = r.c_f_prime * star;
    r.budget = pre * sumB + abs(r.N) * (r.L32.budget / r.L32.value + r.sym2_f.budget / r.sym2_f.value);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string norm_csv_header() { return "ell,label,L_rankin,L_32,L_sym2,N,N_star,err_budget"; }

inline std::string norm_csv_row(const NormReport& r) {
  std::ostringstream os;
  os << r.ell << ',' << r.label << ',';
  for (size_t i = 0; i < r.rankin.size(); ++i) os << (i ? ";" : "") << fmt(r.rankin[i].second.value);
  os << ',' << fmt(r.L32.value) << ',' << fmt(r.sym2_f.value) << ',' << fmt(r.N) << ',' << fmt(r.N_star) << ','
     << fmt(r.budget);
  return os.str();
}

}  // namespace skl::lf
