#pragma once

// Two-sided check of the Petersson trace formula in level one:
//   sum_phi lambda(m) lambda(n) / omega_phi
//     = delta_{m,n} + 2 pi i^{-k} sum_c S(m,n;c)/c J_{k-1}(4 pi sqrt(mn)/c),
// omega_phi = (k-1)/(2 pi^2) L(1, sym^2 phi).

#include "skl/asymptotics.hpp"
#include "skl/expsums.hpp"
#include "skl/lfunctions.hpp"

namespace skl {

struct PeterssonReport {
  int weight = 0;
  int64_t m = 0, n = 0, cmax = 0;
  double lhs = 0, lhs_budget = 0;
  double rhs = 0, tail = 0;
  double diff() const { return std::fabs(lhs - rhs); }
  bool agrees(double tol = 1e-8) const { return diff() <= tol + tail + lhs_budget; }
};

class PeterssonCheck {
 public:
  // Eigenforms are tabulated far enough for L(1, sym^2) by extrapolation
  // over V0, 2V0, 4V0, 8V0.
  explicit PeterssonCheck(int k, double V0 = 125) : k_(k) {
    if (k < 12 || k % 2) throw std::invalid_argument("petersson: weight must be even and >= 12");
    size_t N = static_cast<size_t>(std::ceil(40 * V0 * 8)) + 2;
    forms_ = mf::eigenbasis(k, N);
    Real pi = boost::math::constants::pi<Real>();
    for (auto& f : forms_) {
      auto L = lf::sym2_at_1_extrapolated(f, Real(V0));
      Real w = Real(k - 1) / (2 * pi * pi) * L.value;
      omega_.push_back(w);
      // relative error of 1/omega equals that of L
      rel_.push_back((L.budget / L.value).convert_to<double>());
    }
  }

  int weight() const { return k_; }
  size_t dimension() const { return forms_.size(); }
  const std::vector<Real>& omegas() const { return omega_; }
  const std::vector<mf::Eigenform>& forms() const { return forms_; }

  void lhs(int64_t m, int64_t n, double& value, double& budget) const {
    Real s = 0;
    double b = 0;
    for (size_t i = 0; i < forms_.size(); ++i) {
      Real t = forms_[i].lam(m) * forms_[i].lam(n) / omega_[i];
      s += t;
      b += std::fabs(t.convert_to<double>()) * rel_[i];
    }
    value = s.convert_to<double>();
    budget = b;
  }

  // Bound for the c > cmax part: |S(m,n;c)| <= (m,n,c)^{1/2} c^{1/2} d(c)
  // <= 2 sqrt(mn) c, and |J_v(x)| <= (x/2)^v / v!.
  double tail_bound(int64_t m, int64_t n, int64_t cmax) const {
    double r = std::sqrt(double(m) * double(n)), v = k_ - 1;
    double lg = std::log(4 * as::kPi * r) + v * std::log(2 * as::kPi * r) - std::lgamma(v + 1) -
                (v - 1) * std::log(double(cmax)) - std::log(v - 1);
    return std::exp(lg);
  }

  // All pairs 1 <= m <= n <= nmax in one pass over c.
  std::vector<PeterssonReport> run(int64_t nmax, int64_t cmax) const {
    if (nmax < 1 || cmax < 1) throw std::invalid_argument("petersson: nmax and cmax must be positive");
    if (forms_.empty() || static_cast<int64_t>(forms_[0].lambda.size()) <= nmax)
      throw std::out_of_range("petersson: eigenform table too short");
    std::vector<std::pair<int64_t, int64_t>> pairs;
    for (int64_t m = 1; m <= nmax; ++m)
      for (int64_t n = m; n <= nmax; ++n) pairs.push_back({m, n});
    std::vector<double> sum(pairs.size(), 0.0), skipped(pairs.size(), 0.0);
    // A term whose Weil bound 2 sqrt(mn) |J| is below kSkip is not
    // evaluated; the bound goes into the reported tail instead.
    constexpr double kSkip = 1e-20;
    for (int64_t c = 1; c <= cmax; ++c) {
      std::vector<double> J(pairs.size());
      bool any = false;
      for (size_t i = 0; i < pairs.size(); ++i) {
        auto [m, n] = pairs[i];
        double r = std::sqrt(double(m * n));
        J[i] = as::bessel_J(k_ - 1, 4 * as::kPi * r / double(c));
        double bound = 2 * r * std::fabs(J[i]);
        if (bound < kSkip) {
          skipped[i] += bound;
          J[i] = 0;
        } else {
          any = true;
        }
      }
      if (!any) continue;
      es::Modulus<double> md(c);
      for (size_t i = 0; i < pairs.size(); ++i)
        if (J[i] != 0) sum[i] += md.kloosterman(pairs[i].first, pairs[i].second).re / double(c) * J[i];
    }
    double sign = (k_ / 2) % 2 ? -1 : 1;  // i^{-k}
    std::vector<PeterssonReport> out;
    for (size_t i = 0; i < pairs.size(); ++i) {
      PeterssonReport r;
      r.weight = k_;
      r.m = pairs[i].first;
      r.n = pairs[i].second;
      r.cmax = cmax;
      lhs(r.m, r.n, r.lhs, r.lhs_budget);
      r.rhs = (r.m == r.n ? 1.0 : 0.0) + 2 * as::kPi * sign * sum[i];
      r.tail = tail_bound(r.m, r.n, cmax) + 2 * as::kPi * skipped[i];
      out.push_back(r);
    }
    return out;
  }

  PeterssonReport check(int64_t m, int64_t n, int64_t cmax) const {
    auto v = run(std::max(m, n), cmax);
    for (auto& r : v)
      if (r.m == std::min(m, n) && r.n == std::max(m, n)) return r;
    throw std::logic_error("petersson: pair missing");
  }

 private:
  int k_;
  std::vector<mf::Eigenform> forms_;
  std::vector<Real> omega_;
  std::vector<double> rel_;
};

}  // namespace skl
