#pragma once

// Elementary arithmetic: sieves, multiplicative functions, symbols,
// exact Bernoulli numbers.

#include "skl/num.hpp"

#include <cstdint>
#include <algorithm>
#include <numeric>
#include <tuple>
#include <vector>

namespace skl {

inline int64_t isqrt(int64_t n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  auto r = static_cast<int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline bool is_square(int64_t n) {
  if (n < 0) return false;
  int64_t r = isqrt(n);
  return r * r == n;
}

inline int64_t gcd(int64_t a, int64_t b) { return std::gcd(a, b); }

inline int64_t mod(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// inverse of a mod m, requires gcd(a,m)=1
inline int64_t inv_mod(int64_t a, int64_t m) {
  int64_t g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1) {
    int64_t q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw std::domain_error("inv_mod: not a unit");
  return mod(x, m);
}

// Smallest prime factor table, spf[0]=spf[1]=0.
class Sieve {
 public:
  explicit Sieve(int64_t n) : n_(n), spf_(n + 1, 0) {
    for (int64_t i = 2; i <= n; ++i) {
      if (spf_[i] == 0) {
        primes_.push_back(i);
        for (int64_t j = i; j <= n; j += i)
          if (spf_[j] == 0) spf_[j] = static_cast<int32_t>(i);
      }
    }
  }
  int64_t limit() const { return n_; }
  const std::vector<int64_t>& primes() const { return primes_; }
  bool is_prime(int64_t m) const { return m >= 2 && spf_[m] == m; }
  int64_t spf(int64_t m) const { return spf_[m]; }

  // (p, e) pairs in increasing p
  std::vector<std::pair<int64_t, int>> factor(int64_t m) const {
    std::vector<std::pair<int64_t, int>> out;
    while (m > 1) {
      int64_t p = spf_[m];
      int e = 0;
      while (m % p == 0) { m /= p; ++e; }
      out.emplace_back(p, e);
    }
    return out;
  }

  int mobius(int64_t m) const {
    int s = 1;
    for (auto [p, e] : factor(m)) {
      if (e > 1) return 0;
      s = -s;
    }
    return s;
  }

  int64_t phi(int64_t m) const {
    int64_t r = m;
    for (auto [p, e] : factor(m)) r = r / p * (p - 1);
    return r;
  }

  int64_t tau(int64_t m) const {
    int64_t r = 1;
    for (auto [p, e] : factor(m)) r *= e + 1;
    return r;
  }

  std::vector<int64_t> divisors(int64_t m) const {
    std::vector<int64_t> d{1};
    for (auto [p, e] : factor(m)) {
      size_t s = d.size();
      int64_t pk = 1;
      for (int i = 1; i <= e; ++i) {
        pk *= p;
        for (size_t j = 0; j < s; ++j) d.push_back(d[j] * pk);
      }
    }
    std::sort(d.begin(), d.end());
    return d;
  }

 private:
  int64_t n_;
  std::vector<int32_t> spf_;
  std::vector<int64_t> primes_;
};

inline bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<int64_t> divisors(int64_t n) {
  std::vector<int64_t> lo, hi;
  for (int64_t d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      lo.push_back(d);
      if (d * d != n) hi.push_back(n / d);
    }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

inline int mobius(int64_t n) {
  int s = 1;
  for (int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      s = -s;
    }
  return n > 1 ? -s : s;
}

inline int64_t euler_phi(int64_t n) {
  int64_t r = n;
  for (int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  if (n > 1) r -= r / n;
  return r;
}

inline int64_t num_divisors(int64_t n) { return static_cast<int64_t>(divisors(n).size()); }

// Kronecker symbol (a/n), n >= 1.
inline int kronecker(int64_t a, int64_t n) {
  if (n <= 0) throw std::domain_error("kronecker: n must be positive");
  int s = 1;
  while (n % 2 == 0) {
    n /= 2;
    int64_t r = mod(a, 8);
    if (r % 2 == 0) return 0;
    if (r == 3 || r == 5) s = -s;
  }
  // Jacobi symbol for odd n
  a = mod(a, n);
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      int64_t r = n % 8;
      if (r == 3 || r == 5) s = -s;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) s = -s;
    a %= n;
  }
  return n == 1 ? s : 0;
}

inline bool is_fundamental_discriminant(int64_t d) {
  if (d == 0 || d == 1) return false;
  int64_t m4 = mod(d, 4);
  auto squarefree = [](int64_t x) {
    x = x < 0 ? -x : x;
    for (int64_t p = 2; p * p <= x; ++p)
      if (x % (p * p) == 0) return false;
    return true;
  };
  if (m4 == 1) return squarefree(d);
  if (m4 == 0) {
    int64_t e = d / 4, r = mod(e, 4);
    return (r == 2 || r == 3) && squarefree(e);
  }
  return false;
}

// B_0..B_n with B_1 = -1/2 (Akiyama-Tanigawa gives +1/2, sign fixed below).
inline std::vector<Rat> bernoulli_table(int n) {
  std::vector<Rat> a(n + 1), b(n + 1);
  for (int m = 0; m <= n; ++m) {
    a[m] = Rat(1, m + 1);
    for (int j = m; j >= 1; --j) a[j - 1] = Rat(j) * (a[j - 1] - a[j]);
    b[m] = a[0];
  }
  if (n >= 1) b[1] = -b[1];
  return b;
}

inline Rat bernoulli(int n) { return bernoulli_table(n)[n]; }

inline Int ipow(const Int& b, unsigned e) { return bmp::pow(b, e); }
inline Int ipow(int64_t b, unsigned e) { return bmp::pow(Int(b), e); }

}  // namespace skl
