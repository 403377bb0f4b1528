// One line per acceptance criterion; nonzero exit if any fails.
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bmcycles/cli.hpp"

using namespace bmc;
using nlohmann::json;

namespace {

struct Line {
  int id;
  std::string title;
  std::function<std::pair<bool, std::string>()> run;
};

std::pair<bool, std::string> from_suite(const SuiteResult& r) {
  std::string note = std::to_string(r.cases) + " checks";
  if (!r.failures.empty()) note += "; first failure: " + r.failures.front();
  return {r.pass, note};
}

// Multiplicities and lifts for μ = ((2,0),(2,0)), p = 5, e = 2; lifts written out by hand.
const char* kBmTerms =
    R"([{"lambda":[[1,1]],"lift":[[2,1],[1,0]],"multiplicity":1,"steinberg":false},)"
    R"({"lambda":[[2,0]],"lift":[[3,0],[1,0]],"multiplicity":1,"steinberg":false}])";

std::pair<bool, std::string> bm_identity_report() {
  const json cfg = json::parse(R"({"task":"bm-identity","field":{"p":5,"e":2,"f":1},"mu":[[2,0],[2,0]]})");
  const json out = cli::run_task("bm-identity", cfg, {});
  const std::string got = out["results"]["terms"].dump();
  const bool ok = out["pass"].get<bool>() && got == json::parse(kBmTerms).dump() &&
                  out.dump() == cli::run_task("bm-identity", cfg, {}).dump();
  return {ok, ok ? "terms {(2,0):1,(1,1):1}, lifts (3,0)/(1,0) and (2,1)/(1,0)" : got};
}

std::pair<bool, std::string> shifted_identity() {
  const SuiteResult r = suite_hilbert(1);
  bool ok = true;
  std::string why;
  for (const auto& inst : hilbert_corpus(1)) {
    const auto s = shifted_identity_check(inst.mus, inst.mult, 8);
    if (!s.pass) {
      ok = false;
      why = "corpus " + mus_string(inst.mus);
    }
  }
  const auto w = shifted_identity_check({{2, 0}, {2, 0}}, {{{2, 0}, 1}, {{1, 1}, 1}}, 8);
  for (long n = 1; n <= 8; ++n) {
    const auto& [lhs, rhs] = w.sides[static_cast<std::size_t>(n - 1)];
    ok = ok && lhs == 4 * n * n && rhs == 4 * n * n &&
         weighted_lift_dims({{{2, 0}, 1}}, 2, 2, n, DimShift::minus_rho) == 3 * n * n;
  }
  return {ok && r.pass, ok ? "20 instances, n = 1..8, 4n^2 = 3n^2 + n^2" : why};
}

std::pair<bool, std::string> defect_degrees() {
  bool ok = true;
  long worst = -1;
  for (const auto& inst : hilbert_corpus(1)) {
    const auto s = defect_degree(inst.mus, inst.mult);
    ok = ok && s.pass;
    worst = std::max(worst, s.degree - s.claimed_degree_bound);
  }
  const std::vector<Weight> w1{{2, 0}, {2, 0}}, w2{{3, 0}, {2, 0}};
  const Multiplicities m1{{{2, 0}, 1}, {{1, 1}, 1}}, m2{{{3, 0}, 1}, {{2, 1}, 1}};
  for (long n = 1; n <= 10; ++n)
    ok = ok && defect_value(w1, m1, n) == -2 * n - 1 && defect_value(w2, m2, n) == -3 * n - 1;
  return {ok, "max(degree - bound) = " + std::to_string(worst) + "; D(n) = -2n-1 and -3n-1"};
}

std::pair<bool, std::string> equality_forcing() {
  long tested = 0, missed = 0;
  for (const auto& inst : hilbert_corpus(1)) {
    Weight top(2, 0);
    for (const auto& m : inst.mus) top = weight_add(top, weight_sub(m, rho(2)));
    for (const auto& lam : dominant_weights_below(top)) {
      ++tested;
      if (!equality_forcing_check(inst.mus, inst.mult, {{lam, 1}}).detected) ++missed;
    }
  }
  return {missed == 0 && tested > 0, std::to_string(tested) + " overcounts, " + std::to_string(missed) + " missed"};
}

}  // namespace

int main() {
  const std::vector<Line> lines{
      {1, "Clebsch-Gordan table", [] { return from_suite(suite_characters(8)); }},
      {2, "BM identity report", bm_identity_report},
      {3, "shifted dimension identity", shifted_identity},
      {4, "unshifted defect degree", defect_degrees},
      {5, "equality forcing", equality_forcing},
      {6, "nabla cell dimensions", [] { return from_suite(suite_nabla_cells()); }},
      {7, "phi-conjugation torsor", [] { return from_suite(suite_torsor_cases(1, 50)); }},
      {8, "interpolation", [] { return from_suite(suite_interpolate(1, 100, 10)); }},
      {9, "lattice duality", [] { return from_suite(suite_duality(1, 100)); }},
      {10, "psi equivariance", [] { return from_suite(suite_psi(1, 50)); }},
      {11, "filtration lattices satisfy nabla", [] { return from_suite(suite_nabla_containment(1, 50)); }},
  };
  int failed = 0;
  for (const auto& l : lines) {
    std::pair<bool, std::string> res;
    try {
      res = l.run();
    } catch (const std::exception& e) {
      res = {false, std::string("threw ") + e.what()};
    }
    std::printf("[%s] criterion %2d: %s (%s)\n", res.first ? "PASS" : "FAIL", l.id, l.title.c_str(), res.second.c_str());
    if (!res.first) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(lines.size()) - failed, lines.size());
  return failed == 0 ? 0 : 1;
}
