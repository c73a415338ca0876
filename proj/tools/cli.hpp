#pragma once

// Command-line surface: argument/config/environment handling and command
// dispatch. Kept in a header so tests can drive it without a process.

#include "CLI11.hpp"
#include "suites.hpp"

#include <fstream>
#include <iostream>

namespace skr {

enum Exit { kPass = 0, kDisagree = 1, kUsage = 2, kInternal = 3 };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Cli {
  Settings s;
  std::string format = "text";
  std::string out;

  // table
  std::string ells = "12";
  // verify
  std::string suite;
  int64_t cmax = 500;
  std::vector<int> weights;
  double K = 0, gamma = -1;
  int ell = 0;
  // dump
  std::string kind;
  int weight = 0;
  int64_t n = 100, max = 20;
  // petersson
  int64_t pm = 1, pn = 1, pcmax = 10000;

  std::unique_ptr<CLI::App> app;
  CLI::App *table = nullptr, *verify = nullptr, *dump = nullptr, *petersson = nullptr;

  Cli() {
    app = std::make_unique<CLI::App>("Saito-Kurokawa lift norms, central values and their numerical checks", "skr");
    app->set_config("--config", "", "flat key = value file with global settings");
    app->option_defaults()->always_capture_default();
    app->add_option("--prec", s.bits, "working precision in bits")->envname("SKR_PREC")->check(CLI::Range(64u, 8192u));
    app->add_option("--cutoff-c", s.cutoff_c, "Rankin-Selberg cutoff X = C k^2")
        ->envname("SKR_CUTOFF_C")
        ->check(CLI::PositiveNumber);
    app->add_option("--cache", s.cache, "eigenform coefficient cache directory")->envname("SKR_CACHE");
    app->add_option("--format", format, "report format")->envname("SKR_FORMAT")->check(CLI::IsMember({"text", "csv"}));
    app->add_option("--seed", s.seed, "seed for randomized sweeps")->envname("SKR_SEED");
    app->require_subcommand(1);
    app->fallthrough();  // global flags may follow the subcommand

    table = app->add_subcommand("table", "N(F_f) beside the reference values");
    table->add_option("--ell", ells, "weight, list a,b,c or range a..b")->configurable(false);

    verify = app->add_subcommand("verify", "run one verification suite");
    verify->add_option("suite", suite, "suite name")
        ->required()
        ->check(CLI::IsMember({"gauss", "weil", "petersson", "bessel", "proposition-a", "euler", "nv1", "ichino", "kz"}));
    verify->add_option("--cmax", cmax, "largest modulus (gauss) or c cutoff (petersson)");
    verify->add_option("--weight", weights, "weights (petersson)");
    verify->add_option("--K", K, "single point K (bessel)");
    verify->add_option("--gamma", gamma, "single point gamma (bessel)");
    verify->add_option("--ell", ell, "Siegel weight (ichino, kz)");

    dump = app->add_subcommand("dump", "write coefficient tables");
    dump->add_option("kind", kind, "table kind")->required()->check(CLI::IsMember({"eigen", "jacobi", "sk", "restriction"}));
    dump->add_option("--weight", weight, "weight of S_k (eigen)");
    dump->add_option("--ell", ell, "Siegel weight (jacobi, sk, restriction)");
    dump->add_option("--n", n, "rows (eigen)");
    dump->add_option("--max", max, "largest D (jacobi) or n, m (sk, restriction)");
    dump->add_option("--out", out, "output file (default: standard output)");

    petersson = app->add_subcommand("petersson", "two-sided Petersson formula for one pair");
    petersson->add_option("--weight", weight, "weight")->required();
    petersson->add_option("--m", pm, "m")->check(CLI::Range(1, 10));
    petersson->add_option("--n", pn, "n")->check(CLI::Range(1, 10));
    petersson->add_option("--cmax", pcmax, "c cutoff")->check(CLI::Range(1, 100000));

    // the config file carries global settings only
    for (auto* sc : {table, verify, dump, petersson}) {
      sc->configurable(false);
      for (auto* o : sc->get_options()) o->configurable(false);
    }
  }

  // Global settings as a config file; parsing it back gives the same settings.
  std::string config() const { return app->config_to_str(true, false); }
};

inline std::vector<int> parse_ells(const std::string& spec) {
  std::vector<int> v;
  std::stringstream ss(spec);
  std::string part;
  try {
    while (std::getline(ss, part, ',')) {
      auto dots = part.find("..");
      if (dots == std::string::npos) {
        v.push_back(std::stoi(part));
      } else {
        int a = std::stoi(part.substr(0, dots)), b = std::stoi(part.substr(dots + 2));
        for (int l = a; l <= b; ++l)
          if (l % 2 == 0) v.push_back(l);
      }
    }
  } catch (const std::exception&) {
    throw UsageError("bad --ell specification: " + spec);
  }
  for (int l : v)
    if (l < 10 || l % 2) throw UsageError("--ell: weights must be even and >= 10");
  if (v.empty()) throw UsageError("--ell: empty range");
  return v;
}

inline void need_prec(const Settings& s) {
  if (s.bits < 128) throw UsageError("L-value computations need --prec >= 128");
}

// ---------------------------------------------------------------- dumps

inline std::string render(const Rat& q) { return skl::rat_str(q); }
inline std::string render(const Real& x) { return skl::fmt(x, 30); }

inline const char* kPhi10Convention = "phi10 normalized by c(3) = 1; phi12 by c(3) = 1; lift coefficients scaled to first nonzero c(D) = 1";

inline void dump_eigen(std::ostream& os, const Cli& c) {
  if (c.weight < 12 || c.weight % 2 || c.n < skl::mf::kCacheMinRows) throw UsageError("dump eigen: need even --weight >= 12 and --n >= 10");
  need_prec(c.s);
  auto fs = skl::mf::cached_eigenbasis(c.weight, static_cast<size_t>(c.n) + 1, c.s.cache, c.s.bits);
  for (auto& f : fs) {
    os << skl::mf::cache_header(f, c.s.bits, static_cast<size_t>(c.n)) << '\n';
    skl::mf::write_cache_rows(os, f, 1, static_cast<size_t>(c.n), c.s.bits);
  }
}

inline std::vector<skl::sk::SKLift> dump_lifts(const Cli& c, size_t Dmax) {
  if (c.ell < 10 || c.ell % 2) throw UsageError("dump: need even --ell >= 10");
  skl::sk::LiftOptions o;
  // never below the default table the Hecke matching needs
  size_t d = skl::mf::dim_M(c.ell - 10) + skl::mf::dim_M(c.ell - 12);
  o.Dmax = std::max(Dmax, 25 * (8 * d + 16));
  return skl::sk::match_lifts(c.ell, o);
}

inline std::string lift_header(const skl::sk::SKLift& F, int ell) {
  return "# ell=" + std::to_string(ell) + " label=" + F.label + " exact=" + (F.exact ? "yes" : "no") + " convention: " +
         kPhi10Convention;
}

inline void dump_jacobi(std::ostream& os, const Cli& c) {
  if (c.max < 4) throw UsageError("dump jacobi: need --max >= 4");
  for (auto& F : dump_lifts(c, std::max<size_t>(c.max, 8))) {
    os << lift_header(F, c.ell) << "\nD,c(D)\n";
    for (int64_t D = 0; D <= c.max; ++D) os << D << ',' << (F.exact ? render((*F.exact)[D]) : render(F.c[D])) << '\n';
  }
}

inline void dump_sk(std::ostream& os, const Cli& c) {
  if (c.max < 1) throw UsageError("dump sk: need --max >= 1");
  auto lifts = dump_lifts(c, static_cast<size_t>(4 * c.max * c.max + 8));
  // Maass symmetry spot-check before anything is written
  Real tol = ldexp(Real(1), -static_cast<int>(skl::current_bits()) + 40);
  for (auto& F : lifts)
    for (int64_t a = 1; a <= c.max; ++a)
      for (int64_t b = 1; b <= c.max; ++b) {
        Real x = skl::sk::maass_coefficient(F, a, 1, b), y = skl::sk::maass_coefficient(F, b, -1, a);
        if (abs(x - y) > tol * (abs(x) + 1)) throw std::runtime_error("dump sk: Maass symmetry fails for " + F.label);
      }
  for (auto& F : lifts) {
    os << lift_header(F, c.ell) << "\nn,r,m,A\n";
    for (int64_t a = 1; a <= c.max; ++a)
      for (int64_t b = 1; b <= c.max; ++b)
        for (int64_t r = -2 * c.max; r <= 2 * c.max; ++r) {
          if (4 * a * b - r * r < 0) continue;
          os << a << ',' << r << ',' << b << ',';
          if (F.exact) os << render(skl::sk::maass_coefficient(*F.exact, c.ell, a, r, b));
          else os << render(skl::sk::maass_coefficient(F, a, r, b));
          os << '\n';
        }
  }
}

inline void dump_restriction(std::ostream& os, const Cli& c) {
  if (c.max < 1) throw UsageError("dump restriction: need --max >= 1");
  for (auto& F : dump_lifts(c, static_cast<size_t>(4 * c.max * c.max + 8))) {
    auto r = skl::sk::restrict_z0(F, c.max);
    os << lift_header(F, c.ell) << " vanishes=" << (r.vanishes ? "yes" : "no") << "\nn,m,b\n";
    if (F.exact) {
      auto b = skl::sk::restriction_table(*F.exact, c.ell, c.max);
      for (int64_t i = 0; i < c.max; ++i)
        for (int64_t j = 0; j < c.max; ++j) os << i + 1 << ',' << j + 1 << ',' << render(b[i][j]) << '\n';
    } else {
      for (int64_t i = 0; i < c.max; ++i)
        for (int64_t j = 0; j < c.max; ++j) os << i + 1 << ',' << j + 1 << ',' << render(r.b[i][j]) << '\n';
    }
  }
}

// ---------------------------------------------------------------- dispatch

// Runs the parsed command; the report (or dump) goes to os.
inline int run(Cli& c, std::ostream& os) {
  skl::set_precision_bits(c.s.bits);
  Format f = c.format == "csv" ? Format::Csv : Format::Text;
  if (*c.dump) {
    std::ofstream file;
    std::ostream* o = &os;
    if (!c.out.empty()) {
      file.open(c.out);
      if (!file) throw std::runtime_error("dump: cannot write " + c.out);
      o = &file;
    }
    if (c.kind == "eigen") dump_eigen(*o, c);
    else if (c.kind == "jacobi") dump_jacobi(*o, c);
    else if (c.kind == "sk") dump_sk(*o, c);
    else dump_restriction(*o, c);
    return kPass;
  }
  Report R;
  if (*c.table) {
    need_prec(c.s);
    for (int l : parse_ells(c.ells)) suite_table(R, l, c.s);
  } else if (*c.petersson) {
    if (c.weight < 12 || c.weight % 2) throw UsageError("petersson: weight must be even and >= 12");
    need_prec(c.s);
    petersson_single(R, c.weight, c.pm, c.pn, c.pcmax);
  } else if (*c.verify) {
    const std::string& s = c.suite;
    if (s == "gauss") suite_gauss(R, c.cmax);
    else if (s == "weil") suite_weil(R);
    else if (s == "petersson") {
      need_prec(c.s);
      auto w = c.weights.empty() ? std::vector<int>{12, 22} : c.weights;
      for (int k : w)
        if (k < 12 || k % 2) throw UsageError("verify petersson: weights must be even and >= 12");
      suite_petersson(R, w, 6, c.verify->count("--cmax") ? c.cmax : 10000);
    } else if (s == "bessel") {
      if (c.K > 0 || c.gamma >= 0) {
        if (!(c.K > 0) || !(c.gamma > 0 && c.gamma < 1)) throw UsageError("verify bessel: need --K > 0 and 0 < --gamma < 1");
        suite_bessel_point(R, c.K, c.gamma);
      } else {
        suite_bessel(R);
      }
    } else if (s == "proposition-a") suite_proposition_a(R);
    else if (s == "euler") suite_euler(R, c.s.seed);
    else if (s == "nv1") suite_sk_structure(R);
    else if (s == "ichino") {
      need_prec(c.s);
      suite_ichino(R, c.s, c.ell ? c.ell : 24);
    } else {
      need_prec(c.s);
      suite_kz(R, c.s, c.ell ? c.ell : 12);
    }
  }
  os << R.render(f);
  return R.failed() ? kDisagree : kPass;
}

// Full entry point: parse, run, map failures to exit codes.
inline int main_entry(int argc, const char* const* argv, std::ostream& os, std::ostream& err) {
  Cli c;
  try {
    c.app->parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    os << c.app->help();
    return kPass;
  } catch (const CLI::CallForAllHelp& e) {
    os << c.app->help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }
  try {
    return run(c, os);
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const skl::mf::CacheError& e) {
    err << "validation: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    err << "internal: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace skr
