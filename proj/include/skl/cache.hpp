#pragma once

// On-disk coefficient cache, one file per eigenform:
//   # weight=<k> label=<a|b|..> prec_bits=<P> n_max=<N>
//   n a(n)
// Files are only ever appended to. Rows past the header's n_max come from
// later extensions; the loader takes the row count as the length.

#include "skl/eigen.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace skl::mf {

struct CacheError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// lambda(m) lambda(n) = sum_{d | (m,n)} lambda(mn/d^2) at three pairs
inline const std::vector<std::pair<int64_t, int64_t>>& cache_hecke_pairs() {
  static const std::vector<std::pair<int64_t, int64_t>> p{{2, 3}, {2, 2}, {2, 5}};
  return p;
}
constexpr size_t kCacheMinRows = 10;

inline std::string cache_file(const std::string& dir, int k, const std::string& label) {
  return (std::filesystem::path(dir) / ("eigen_" + label + ".txt")).string();
}

inline std::string render_coefficient(const Eigenform& f, size_t n, unsigned bits) {
  if (f.exact) return (*f.exact)[n].str();
  return fmt(f.a[n], static_cast<int>(bits_to_digits(bits)));
}

inline std::string cache_header(const Eigenform& f, unsigned bits, size_t nmax) {
  std::string letter = f.label.substr(std::to_string(f.weight).size());
  return "# weight=" + std::to_string(f.weight) + " label=" + letter + " prec_bits=" + std::to_string(bits) +
         " n_max=" + std::to_string(nmax);
}

inline void write_cache_rows(std::ostream& os, const Eigenform& f, size_t from, size_t to, unsigned bits) {
  for (size_t n = from; n <= to; ++n) os << n << ' ' << render_coefficient(f, n, bits) << '\n';
}

struct CachedForm {
  Eigenform f;
  unsigned prec_bits = 0;
};

// Parses and re-validates one file; any defect is a CacheError.
inline CachedForm read_cache_file(const std::string& path, int k, const std::string& label) {
  std::ifstream in(path);
  if (!in) throw CacheError("cache: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw CacheError("cache: empty file " + path);
  int w = 0;
  unsigned bits = 0;
  size_t nmax = 0;
  char lab[16] = {0};
  if (std::sscanf(line.c_str(), "# weight=%d label=%15s prec_bits=%u n_max=%zu", &w, lab, &bits, &nmax) != 4)
    throw CacheError("cache: bad header in " + path);
  if (w != k || std::to_string(k) + lab != label) throw CacheError("cache: header does not match " + label);
  if (bits < 64) throw CacheError("cache: precision too low in " + path);
  CachedForm c;
  c.prec_bits = bits;
  c.f.weight = k;
  c.f.label = label;
  c.f.a.push_back(Real(0));
  std::vector<Int> exact{Int(0)};
  bool integral = true;
  PrecisionGuard g(bits);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream is(line);
    size_t n = 0;
    std::string v;
    if (!(is >> n >> v) || n != c.f.a.size()) throw CacheError("cache: rows out of order in " + path);
    try {
      c.f.a.push_back(Real(v));
      if (integral && v.find_first_of(".eE") == std::string::npos) exact.push_back(Int(v));
      else integral = false;
    } catch (const std::exception&) {
      throw CacheError("cache: unreadable coefficient in " + path);
    }
  }
  size_t rows = c.f.a.size() - 1;
  if (rows < nmax || rows < kCacheMinRows) throw CacheError("cache: truncated file " + path);
  if (c.f.a[1] != 1) throw CacheError("cache: a(1) != 1 in " + path);
  if (integral && mf::dim_S(k) == 1) c.f.exact = std::move(exact);
  normalize_lambda(c.f);
  Real defect = hecke_defect(c.f, cache_hecke_pairs());
  if (defect > ldexp(Real(1), -static_cast<int>(bits) + 40))
    throw CacheError("cache: Hecke relations fail in " + path + " (defect " + fmt(defect, 6) + ")");
  return c;
}

// Eigenbasis of S_k with a(0..n-1), through the cache in dir (empty: no
// cache). Files shorter than n are extended after the recomputed forms
// are checked against the stored rows.
inline std::vector<Eigenform> cached_eigenbasis(int k, size_t n, const std::string& dir,
                                                unsigned bits = current_bits()) {
  if (dir.empty()) return eigenbasis(k, n, bits);
  std::filesystem::create_directories(dir);
  int d = dim_S(k);
  std::vector<std::optional<CachedForm>> have(d);
  bool complete = true;
  for (int i = 0; i < d; ++i) {
    std::string label = label_for(k, i), path = cache_file(dir, k, label);
    if (std::filesystem::exists(path)) {
      have[i] = read_cache_file(path, k, label);
      if (have[i]->f.a.size() < n || have[i]->prec_bits < bits) complete = false;
    } else {
      complete = false;
    }
  }
  if (complete) {
    std::vector<Eigenform> out;
    for (auto& c : have) {
      Eigenform f = c->f;
      f.a.resize(n);
      if (f.exact) f.exact->resize(n);
      normalize_lambda(f);
      out.push_back(std::move(f));
    }
    return out;
  }
  size_t m = std::max(n, kCacheMinRows + 1);
  auto fresh = eigenbasis(k, m, bits);
  for (int i = 0; i < d; ++i) {
    const Eigenform& f = fresh[i];
    std::string path = cache_file(dir, k, f.label);
    if (have[i]) {
      const auto& old = have[i]->f;
      size_t common = std::min(old.a.size(), f.a.size());
      unsigned tb = std::min(have[i]->prec_bits, bits);
      for (size_t t = 1; t < common; ++t)
        if (abs(old.a[t] - f.a[t]) > ldexp(abs(f.a[t]) + 1, -static_cast<int>(tb) + 40))
          throw CacheError("cache: stored coefficients disagree with recomputation in " + path);
      if (old.a.size() < f.a.size() && have[i]->prec_bits >= bits) {
        std::ofstream os(path, std::ios::app);
        write_cache_rows(os, f, old.a.size(), f.a.size() - 1, have[i]->prec_bits);
      }
    } else {
      std::ofstream os(path);
      os << cache_header(f, bits, f.a.size() - 1) << '\n';
      write_cache_rows(os, f, 1, f.a.size() - 1, bits);
    }
  }
  for (auto& f : fresh) {
    f.a.resize(n);
    if (f.exact) f.exact->resize(n);
    normalize_lambda(f);
  }
  return fresh;
}

}  // namespace skl::mf
