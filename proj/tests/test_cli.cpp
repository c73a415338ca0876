#include <gtest/gtest.h>

#include "cli.hpp"

#include <cstdlib>
#include <filesystem>

namespace fs = std::filesystem;
using namespace skr;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "skr");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  int code = main_entry(static_cast<int>(argv.size()), argv.data(), o, e);
  return {code, o.str(), e.str()};
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("skr_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Report, TextAndCsv) {
  Report R;
  auto& T = R.table("t", {"a", "b"});
  T.rows.push_back({"1", "22"});
  R.check(true, "s", "x", "plain");
  R.check(false, "s", "y", "has, comma and \"quote\"");
  R.info("s", "z", "");
  EXPECT_TRUE(R.failed());
  EXPECT_TRUE(R.failed("s"));
  EXPECT_FALSE(R.failed("other"));
  std::string csv = R.render(Format::Csv);
  EXPECT_NE(csv.find("a,b\n1,22\n"), std::string::npos);
  EXPECT_NE(csv.find("s,y,FAIL,\"has, comma and \"\"quote\"\"\"\n"), std::string::npos);
  std::string txt = R.render(Format::Text);
  EXPECT_NE(txt.find("PASS  s  x  plain"), std::string::npos);
  EXPECT_NE(txt.find("INFO  s  z\n"), std::string::npos);
}

TEST(Table, SetwiseMatching) {
  EXPECT_EQ(first_digit(0.0438), 4);
  EXPECT_EQ(first_digit(1.21), 1);
  EXPECT_EQ(first_digit(0.0), 0);
  // computed in the opposite order to the reference row
  auto m = match_reference({1.2106, 0.0438}, {0.043, 1.2});
  EXPECT_EQ(m.perm, (std::vector<size_t>{1, 0}));
  EXPECT_TRUE(m.digits_agree);
  EXPECT_NEAR(m.worst_rel, 0.0186, 1e-3);
  auto bad = match_reference({0.5}, {0.83});
  EXPECT_FALSE(bad.digits_agree);
}

TEST(Table, EllSpecification) {
  EXPECT_EQ(parse_ells("12"), std::vector<int>{12});
  EXPECT_EQ(parse_ells("10..16"), (std::vector<int>{10, 12, 14, 16}));
  EXPECT_EQ(parse_ells("12,20"), (std::vector<int>{12, 20}));
  EXPECT_THROW(parse_ells("9"), UsageError);
  EXPECT_THROW(parse_ells("x"), UsageError);
}

TEST(Table, EmptySpaceIsExactlyZero) {
  auto r = run({"table", "--ell", "10,14"});
  EXPECT_EQ(r.code, kPass) << r.err;
  EXPECT_NE(r.out.find("PASS  table  l=10  N = 0 exactly"), std::string::npos);
  EXPECT_NE(r.out.find("PASS  table  l=14"), std::string::npos);
}

TEST(Config, RoundTrip) {
  Cli a;
  const char* args[] = {"skr", "--prec", "256", "--seed", "7", "--cutoff-c", "30", "--format", "csv", "verify", "gauss"};
  a.app->parse(11, args);
  std::string text = a.config();
  fs::path file = scratch("config") / "run.ini";
  std::ofstream(file) << text;
  Cli b;
  std::string f = file.string();
  const char* args2[] = {"skr", "--config", f.c_str(), "verify", "gauss"};
  b.app->parse(5, args2);
  EXPECT_EQ(b.s.bits, 256u);
  EXPECT_EQ(b.s.seed, 7u);
  EXPECT_EQ(b.s.cutoff_c, 30);
  EXPECT_EQ(b.format, "csv");
  EXPECT_EQ(b.config(), text);
  EXPECT_EQ(text.find("verify"), std::string::npos);
}

TEST(Config, EnvironmentOverride) {
  setenv("SKR_SEED", "11", 1);
  setenv("SKR_FORMAT", "csv", 1);
  Cli a;
  const char* args[] = {"skr", "verify", "euler"};
  a.app->parse(3, args);
  EXPECT_EQ(a.s.seed, 11u);
  EXPECT_EQ(a.format, "csv");
  // the command line wins
  Cli b;
  const char* args2[] = {"skr", "--seed", "5", "verify", "euler"};
  b.app->parse(5, args2);
  EXPECT_EQ(b.s.seed, 5u);
  unsetenv("SKR_SEED");
  unsetenv("SKR_FORMAT");
}

TEST(ExitCodes, Usage) {
  EXPECT_EQ(run({"verify", "bogus"}).code, kUsage);
  EXPECT_EQ(run({}).code, kUsage);
  EXPECT_EQ(run({"--format", "xml", "verify", "euler"}).code, kUsage);
  EXPECT_EQ(run({"--prec", "100", "table", "--ell", "12"}).code, kUsage);
  EXPECT_EQ(run({"table", "--ell", "11"}).code, kUsage);
  EXPECT_EQ(run({"petersson", "--weight", "12", "--m", "11"}).code, kUsage);
  EXPECT_EQ(run({"verify", "bessel", "--K", "64"}).code, kUsage);
  EXPECT_EQ(run({"--help"}).code, kPass);
}

TEST(ExitCodes, PassAndDisagreement) {
  auto e = run({"verify", "euler"});
  EXPECT_EQ(e.code, kPass);
  EXPECT_NE(e.out.find("= 4/5"), std::string::npos);
  EXPECT_NE(e.out.find("= 2 "), std::string::npos);
  EXPECT_NE(e.out.find("seed 20240611"), std::string::npos);
  EXPECT_EQ(run({"verify", "gauss", "--cmax", "60"}).code, kPass);
  // the 8x-per-doubling clause does not hold at these K
  auto p = run({"verify", "proposition-a"});
  EXPECT_EQ(p.code, kDisagree);
  EXPECT_NE(p.out.find("FAIL  proposition-a  8x per doubling a=0"), std::string::npos);
}

TEST(ExitCodes, CorruptCacheIsInternal) {
  auto dir = scratch("corrupt");
  EXPECT_EQ(run({"--cache", dir.string(), "dump", "eigen", "--weight", "22", "--n", "30"}).code, kPass);
  fs::path file = dir / "eigen_22a.txt";
  std::string t = slurp(file);
  auto pos = t.find("\n6 ");
  ASSERT_NE(pos, std::string::npos);
  t.replace(pos, t.find('\n', pos + 1) - pos, "\n6 1");
  std::ofstream(file) << t;
  auto r = run({"--cache", dir.string(), "dump", "eigen", "--weight", "22", "--n", "30"});
  EXPECT_EQ(r.code, kInternal);
  EXPECT_NE(r.err.find("Hecke"), std::string::npos);
}

TEST(Dump, EigenRowsAndDeterminism) {
  auto a = run({"dump", "eigen", "--weight", "22", "--n", "100"});
  EXPECT_EQ(a.code, kPass);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 101);
  EXPECT_EQ(a.out.rfind("# weight=22 label=a prec_bits=192 n_max=100\n1 1\n2 -288\n", 0), 0u);
  EXPECT_EQ(run({"dump", "eigen", "--weight", "22", "--n", "100"}).out, a.out);
  auto dir = scratch("dump");
  auto f = (dir / "e.txt").string();
  EXPECT_EQ(run({"dump", "eigen", "--weight", "24", "--n", "20", "--out", f}).code, kPass);
  auto first = slurp(f);
  run({"dump", "eigen", "--weight", "24", "--n", "20", "--out", f});
  EXPECT_EQ(slurp(f), first);
  EXPECT_NE(first.find("label=b"), std::string::npos);
}

TEST(Dump, SiegelCoefficients) {
  auto a = run({"dump", "sk", "--ell", "12", "--max", "4"});
  ASSERT_EQ(a.code, kPass) << a.err;
  EXPECT_NE(a.out.find("n,r,m,A\n"), std::string::npos);
  EXPECT_NE(a.out.find("\n1,0,1,10\n"), std::string::npos);   // c(4)
  EXPECT_NE(a.out.find("\n1,1,1,1\n"), std::string::npos);    // c(3)
  EXPECT_NE(a.out.find("label=22a"), std::string::npos);
  EXPECT_EQ(run({"dump", "sk", "--ell", "12", "--max", "4"}).out, a.out);
  // restriction to the diagonal is 12 Delta x Delta at l = 12
  auto r = run({"dump", "restriction", "--ell", "12", "--max", "2"});
  EXPECT_NE(r.out.find("1,1,12\n1,2,-288\n2,1,-288\n2,2,6912\n"), std::string::npos);
  auto z = run({"dump", "restriction", "--ell", "10", "--max", "2"});
  EXPECT_NE(z.out.find("vanishes=yes"), std::string::npos);
  auto j = run({"dump", "jacobi", "--ell", "10", "--max", "8"});
  EXPECT_NE(j.out.find("D,c(D)\n0,0\n1,0\n2,0\n3,1\n4,-2\n"), std::string::npos);
}

TEST(Petersson, SinglePair) {
  auto r = run({"petersson", "--weight", "22", "--m", "2", "--n", "2", "--format", "csv"});
  EXPECT_EQ(r.code, kPass) << r.err;
  EXPECT_NE(r.out.find("petersson,k=22 m=2 n=2,PASS"), std::string::npos);
}

TEST(Cache, ExtendsByAppendingAndRevalidates) {
  auto dir = scratch("cache").string();
  auto a = skl::mf::cached_eigenbasis(22, 31, dir);
  auto file = fs::path(dir) / "eigen_22a.txt";
  std::string first = slurp(file);
  EXPECT_EQ(first.rfind("# weight=22 label=a prec_bits=", 0), 0u);
  EXPECT_NE(first.find(" n_max=30\n"), std::string::npos);
  auto b = skl::mf::cached_eigenbasis(22, 61, dir);
  std::string second = slurp(file);
  EXPECT_EQ(second.rfind(first, 0), 0u);  // appended, header kept
  EXPECT_EQ(std::count(second.begin(), second.end(), '\n'), 61);
  auto c = skl::mf::cached_eigenbasis(22, 61, dir);
  EXPECT_EQ(*c[0].exact, *skl::mf::eigenbasis(22, 61)[0].exact);
  for (size_t n = 1; n < 61; ++n) EXPECT_LE(abs(c[0].lambda[n] - b[0].lambda[n]), ldexp(Real(1), -180));
  // a two-dimensional space round-trips through decimal rows
  auto d = skl::mf::cached_eigenbasis(24, 40, dir);
  auto e = skl::mf::cached_eigenbasis(24, 40, dir);
  for (size_t i = 0; i < 2; ++i)
    for (size_t n = 1; n < 40; ++n) EXPECT_LE(abs(d[i].a[n] - e[i].a[n]), ldexp(abs(d[i].a[n]), -180));
  // a header that names another form is rejected
  std::ofstream(fs::path(dir) / "eigen_26a.txt") << "# weight=24 label=a prec_bits=192 n_max=10\n";
  EXPECT_THROW(skl::mf::cached_eigenbasis(26, 20, dir), skl::mf::CacheError);
}
