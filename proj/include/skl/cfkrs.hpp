#pragma once

// Local factors of the diagonal main terms in the moment recipe, each as a
// brute-force truncated sum beside its closed form.

#include "skl/num.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace skl::lf {

// lambda(p^j) = sin((j+1) theta) / sin(theta), with the theta -> 0 limit j+1.
inline double satake_lambda(double theta, int j) {
  double s = std::sin(theta);
  if (std::fabs(s) < 1e-12) return (std::cos(theta) > 0 ? 1 : ((j % 2) ? -1 : 1)) * double(j + 1);
  return std::sin((j + 1) * theta) / s;
}

struct LocalPair {
  double brute = 0;
  double closed = 0;
  double tail = 0;  // bound for the truncated part of the brute-force sum
};

// B_{f,p}(alpha) with Satake parameters e^{+-i theta}, x = p^{-1/2-alpha}:
// sum over a1, b1, a2 >= 0, d in {0,1}, 0 <= c <= min(2a1, 2a2) of
// (-1)^d lambda(p^{d+a1+2b1}) x^{3a1+2b1+4a2+3d-2c}.
inline LocalPair cfkrs_local_factor(long p, double theta, double alpha) {
  double x = std::pow(double(p), -0.5 - alpha);
  if (!(x > 0 && x < 1)) throw std::domain_error("cfkrs_local_factor: need 0 < x < 1");
  // keep exponents up to E; the rest is below x^E times a polynomial count
  int E = static_cast<int>(std::ceil((40 * std::log(10.0)) / -std::log(x)));
  std::vector<double> coef(E + 1, 0.0);
  for (int a1 = 0; 3 * a1 <= E; ++a1)
    for (int a2 = 0; a2 <= E; ++a2) {
      int cmax = 2 * std::min(a1, a2);
      int lo = 3 * a1 + 4 * a2 - 2 * cmax;
      if (lo > E) break;
      for (int d = 0; d <= 1; ++d)
        for (int b1 = 0; lo + 2 * b1 + 3 * d <= E; ++b1) {
          double lam = satake_lambda(theta, d + a1 + 2 * b1) * (d ? -1 : 1);
          for (int c = 0; c <= cmax; ++c) {
            int e = 3 * a1 + 2 * b1 + 4 * a2 + 3 * d - 2 * c;
            if (e <= E) coef[e] += lam;
          }
        }
    }
  LocalPair r;
  double xe = 1;
  for (int e = 0; e <= E; ++e, xe *= x) r.brute += coef[e] * xe;
  double c2 = std::cos(2 * theta), c1 = std::cos(theta), x2 = x * x, x3 = x2 * x;
  r.closed = (1 - std::pow(x, 8)) / ((1 - x2) * (1 - 2 * c2 * x2 + x2 * x2) * (1 - 2 * c1 * x3 + x3 * x3));
  // at most (e+1)^4 index tuples per exponent, |lambda| <= e+1
  double t = 0, xm = std::pow(x, E + 1);
  for (int e = E + 1; e < E + 4000; ++e, xm *= x) t += std::pow(e + 1.0, 5) * xm;
  r.tail = t;
  return r;
}

// Seeded Satake angles in (0, pi), reproducible across platforms.
inline std::vector<double> satake_draws(uint64_t seed, int count) {
  std::mt19937_64 gen(seed);
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    double u = double(gen() >> 11) * 0x1.0p-53;
    out.push_back(u * M_PI);
  }
  return out;
}

struct M0Local {
  Real brute, closed;
  Real c12_brute, c12_closed;  // the c in {1,2} part on its own
};

// sum over d, a1, b >= 0 with d + a1 + b <= 1, a2 >= 0, 0 <= c <= min(2a1, 2a2)
// of p^c (-1)^{a1} / p^{3d + 3a1 + 2a2 + 3b}, against (1-p^-2)^-1 (1-p^-4).
inline M0Local m0_local_factor(long p, int a2max = 200) {
  if (p < 2) throw std::invalid_argument("m0_local_factor: p must be prime");
  Real P(p);
  M0Local r;
  r.brute = r.c12_brute = 0;
  for (int d = 0; d <= 1; ++d)
    for (int a1 = 0; d + a1 <= 1; ++a1)
      for (int b = 0; d + a1 + b <= 1; ++b)
        for (int a2 = 0; a2 <= a2max; ++a2)
          for (int c = 0; c <= std::min(2 * a1, 2 * a2); ++c) {
            Real t = pow(P, c - (3 * d + 3 * a1 + 2 * a2 + 3 * b)) * (a1 ? -1 : 1);
            r.brute += t;
            if (c >= 1) r.c12_brute += t;
          }
  Real q = 1 / (1 - pow(P, -2));
  r.closed = q * (1 - pow(P, -4));
  r.c12_closed = -pow(P, -5) * q * (P + P * P);
  return r;
}

}  // namespace skl::lf
