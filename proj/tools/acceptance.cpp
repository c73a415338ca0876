// One PASS/FAIL line per acceptance criterion. Arguments select criteria
// (default: all); -v prints the suite lines under each criterion.

#include "suites.hpp"

#include <functional>
#include <iostream>
#include <set>

using namespace skr;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::function<void(Report&, const Settings&)> run;
};

std::vector<Criterion> criteria() {
  return {
      {1, "Norm table reproduction",
       [](Report& R, const Settings& s) {
         for (int l : {10, 12, 14, 16, 18, 20}) suite_table(R, l, s, 0.15);
       }},
      {2, "Gauss-sum identity", [](Report& R, const Settings&) { suite_gauss(R, 500, 100, 10, 400); }},
      {3, "Weil bound sweep", [](Report& R, const Settings&) { suite_weil(R, 20, 200); }},
      {4, "Petersson two-sided check", [](Report& R, const Settings&) { suite_petersson(R, {12, 22}, 6, 10000); }},
      {5, "Bessel-sum asymptotics",
       [](Report& R, const Settings&) {
         suite_bessel(R);
         suite_proposition_a(R);
       }},
      {6, "Euler/constant identities", [](Report& R, const Settings& s) { suite_euler(R, s.seed); }},
      {7, "SK structural suite", [](Report& R, const Settings&) { suite_sk_structure(R); }},
      {8, "Ichino end-to-end", [](Report& R, const Settings& s) { suite_ichino(R, s, 24); }},
      {9, "Kohnen-Zagier ratio", [](Report& R, const Settings& s) { suite_kz(R, s, 12, -4, -3); }},
  };
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> pick;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "-v") verbose = true;
    else pick.insert(std::stoi(a));
  }
  Settings s;
  bool all = true;
  for (auto& c : criteria()) {
    if (!pick.empty() && !pick.count(c.id)) continue;
    Report R;
    std::string why;
    bool ok;
    try {
      c.run(R, s);
      ok = !R.failed();
      for (auto& l : R.lines())
        if (l.status == Status::Fail) why += (why.empty() ? "" : "; ") + l.item;
    } catch (const std::exception& e) {
      ok = false;
      why = std::string("exception: ") + e.what();
    }
    all = all && ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << c.id << "  " << c.title << (why.empty() ? "" : "  [" + why + "]")
              << std::endl;
    if (verbose) {
      std::istringstream in(R.render(Format::Text));
      for (std::string line; std::getline(in, line);) std::cout << "    " << line << '\n';
    }
  }
  return all ? 0 : 1;
}
