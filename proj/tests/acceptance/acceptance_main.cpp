// Acceptance suite: runs every criterion at its stated tolerance (exact
// arithmetic throughout) and prints one pass/fail line per criterion.
// Usage: acceptance <path-to-cli> <path-to-golden-dir>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ordchain/enumerate.hpp"
#include "ordchain/factorize.hpp"
#include "ordchain/finite_oracle.hpp"
#include "ordchain/json_io.hpp"
#include "ordchain/property_suite.hpp"

using namespace ordchain;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << ": " << what
            << std::endl;
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

ChainSpec omega() { return ChainSpec({Segment::omega_up()}); }
ChainSpec omega_star() { return ChainSpec({Segment::omega_down()}); }
ChainSpec int_chain() { return ChainSpec({Segment::int_line()}); }
ChainSpec rat_chain() { return ChainSpec({Segment::rat_line()}); }
ChainSpec z_arrow() {
  return ChainSpec({Segment::omega_up(), Segment::fin(1), Segment::omega_down()});
}
ChainSpec omega_gap() {
  return ChainSpec({Segment::omega_up(), Segment::omega_down()});
}
ChainSpec fin3_rat() { return ChainSpec({Segment::fin(3), Segment::rat_line()}); }
ChainSpec rat_fin_rat() {
  return ChainSpec({Segment::rat_line(), Segment::fin(1), Segment::rat_line()});
}

std::vector<ChainSpec> catalog() {
  return {omega(), omega_star(), int_chain(), rat_chain(),
          z_arrow(), omega_gap(), fin3_rat()};
}

PcMap compose_all(const std::vector<PcMap>& fs) {
  PcMap p = normalize(fs.front());
  for (std::size_t i = 1; i < fs.size(); ++i) p = compose(p, fs[i]);
  return p;
}

// ---------------------------------------------------------------------------

struct DualSample {
  ChainSpec chain;
  PcMap alpha;
  std::vector<PcMap> factors;
};

std::vector<DualSample> dual_samples;

void criterion_1_main_lemma() {
  auto t0 = Clock::now();
  std::vector<ChainSpec> chains{int_chain(), rat_chain(), z_arrow(), fin3_rat(),
                                rat_fin_rat()};
  GenConfig cfg{20260201, 12, 50, 5};
  bool ok = true;
  std::string why;
  for (const auto& chain : chains) {
    Element zero = pick_element(chain, regions(chain).zero);
    for (int t = 0; t < 500 && ok; ++t) {
      Rng rng = case_rng(cfg, static_cast<std::uint64_t>(t));
      PcMap alpha = random_jf_map(chain, cfg, rng);
      FactorizationTrace tr = main_lemma_factorize(alpha, zero);
      if (tr.factors.size() != 2 * static_cast<std::size_t>(tr.k + 1) + 2) {
        ok = false;
        why = "factor count law broken at case " + std::to_string(t);
        break;
      }
      auto rep = verify_factorization(alpha, tr.factors, 25);
      if (!rep.pass) {
        ok = false;
        why = "verification failed at case " + std::to_string(t);
        break;
      }
      if (dual_samples.size() < 200 && zero <= alpha.evaluate(zero))
        dual_samples.push_back({chain, alpha, tr.factors});
    }
    if (!ok) break;
  }
  double dt = seconds_since(t0);
  if (ok && dt >= 30.0) {
    ok = false;
    why = "runtime " + std::to_string(dt) + "s over budget";
  }
  std::ostringstream msg;
  msg << "block factorization suite, 2500 seeded maps across 5 chains, exact equality ("
      << dt << "s)";
  report(1, ok, ok ? msg.str() : msg.str() + " -- " + why);
}

void criterion_2_dual_coherence() {
  bool ok = dual_samples.size() == 200;
  std::string why = ok ? "" : "collected only " +
                                  std::to_string(dual_samples.size()) + " dual cases";
  for (const auto& s : dual_samples) {
    if (!ok) break;
    DualMap d(s.chain);
    PcMap alpha_d = transport_map(s.alpha, d);
    std::vector<PcMap> fs;
    for (const auto& f : s.factors) fs.push_back(transport_map(f, d));
    auto rep = verify_factorization(alpha_d, fs, 25);
    if (!rep.pass) {
      ok = false;
      why = "transported factors failed on the dual chain";
    }
  }
  report(2, ok,
         ok ? "dual-case coherence on 200 transported factorizations, exact equality"
            : "dual-case coherence -- " + why);
}

void criterion_3_two_factor() {
  GenConfig cfg{889900, 9, 40, 5};
  int le = 0, gt = 0;
  bool ok = true;
  std::string why;
  std::vector<ChainSpec> chains{int_chain(), rat_chain()};
  for (int t = 0; t < 300 && ok; ++t) {
    const ChainSpec& chain = chains[static_cast<std::size_t>(t % 2)];
    Rng rng = case_rng(cfg, static_cast<std::uint64_t>(t));
    PcMap alpha = t % 3 ? random_jf_map(chain, cfg, rng) : random_j_map(chain, cfg, rng);
    auto uv = find_crossing_pair(alpha);
    if (!uv) {
      ok = false;
      why = "no crossing pair at case " + std::to_string(t);
      break;
    }
    (uv->first <= uv->second ? le : gt) += 1;
    auto [a1, a2] = two_factor_factorize(alpha, uv->first, uv->second);
    if (!(compose(a1, a2) == normalize(alpha)) || !j_membership(a1).in_j ||
        !j_membership(a2).in_j) {
      ok = false;
      why = "two-factor identity failed at case " + std::to_string(t);
    }
  }
  if (ok && (le < 50 || gt < 50)) {
    ok = false;
    why = "branch counts " + std::to_string(le) + "/" + std::to_string(gt);
  }
  std::ostringstream msg;
  msg << "two-factor suite, 300 maps on Z and Q, branches " << le << "/" << gt;
  report(3, ok, ok ? msg.str() : msg.str() + " -- " + why);
}

void criterion_4_generation_catalog() {
  std::vector<std::pair<ChainSpec, bool>> cases{
      {int_chain(), true},  {rat_chain(), true},  {z_arrow(), true},
      {fin3_rat(), true},   {omega(), false},     {omega_star(), false},
      {omega_gap(), false},
  };
  int good = 0;
  for (const auto& [chain, want] : cases) {
    GenerationDecision d = decide_generation(chain);
    bool right = d.generated == want;
    if (right && want) {
      right = d.witness && classify(chain, *d.witness) == RegionClass::Zero;
    }
    good += right;
  }
  report(4, good == 7,
         "generation decided for all 7 catalog chains (" + std::to_string(good) +
             "/7 match)");
}

void criterion_5_finite_oracle() {
  auto t0 = Clock::now();
  bool ok = true;
  std::string why;
  std::vector<std::size_t> want{1, 3, 10, 35, 126, 462};
  for (int n = 1; n <= 6 && ok; ++n) {
    auto all = enumerate_On(n);
    if (all.size() != want[static_cast<std::size_t>(n - 1)]) {
      ok = false;
      why = "order of O_" + std::to_string(n);
      break;
    }
    auto top = top_class(n);
    if (top.size() != 1 || !(top.front() == finite_identity(n))) {
      ok = false;
      why = "top class of O_" + std::to_string(n);
      break;
    }
    auto cl = closure(n, top);
    if ((cl.size() == all.size()) != (n == 1)) {
      ok = false;
      why = "closure criterion at n=" + std::to_string(n);
      break;
    }
  }
  for (int n = 1; n <= 4 && ok; ++n) {
    auto all = enumerate_On(n);
    for (const auto& f : all)
      for (const auto& g : all) {
        int s = image_size(compose(f, g));
        if (s > image_size(f) || s > image_size(g)) {
          ok = false;
          why = "image inequality at n=" + std::to_string(n);
        }
      }
  }
  double dt = seconds_since(t0);
  if (ok && dt >= 5.0) {
    ok = false;
    why = "runtime " + std::to_string(dt) + "s over budget";
  }
  std::ostringstream msg;
  msg << "finite oracle n=1..6 counts, closure and image laws (" << dt << "s)";
  report(5, ok, ok ? msg.str() : msg.str() + " -- " + why);
}

void criterion_6_no_end() {
  GenConfig cfg{7777, 8, 40, 5};
  ChainSpec down = omega_star();
  ChainSpec up = omega();
  bool ok = true;
  std::string why;
  for (int t = 0; t < 500 && ok; ++t) {
    Rng rng = case_rng(cfg, static_cast<std::uint64_t>(t));
    int len = 1 + static_cast<int>(rng.uniform(0, 4));
    std::vector<PcMap> fs, gs;
    for (int s = 0; s < len; ++s) {
      fs.push_back(random_j_map(down, cfg, rng));
      gs.push_back(random_j_map(up, cfg, rng));
    }
    if (!check_no_end(down, fs).pass) {
      ok = false;
      why = "product on omega* attained a minimum at case " + std::to_string(t);
    }
    if (ok && !check_no_end(up, gs).pass) {
      ok = false;
      why = "product on omega attained a maximum at case " + std::to_string(t);
    }
    if (ok && t % 25 == 0) {
      PcMap control = random_jf_map(down, cfg, rng);
      if (check_no_end(down, {control}).pass) {
        ok = false;
        why = "all-constant control not flagged at case " + std::to_string(t);
      }
    }
  }
  report(6, ok,
         ok ? "500 seeded products on omega*/omega keep their ends unattained; "
              "controls flagged"
            : std::string("no-end suite -- ") + why);
}

void criterion_7_region_preservation() {
  GenConfig cfg{31415, 8, 40, 5};
  ChainSpec g = omega_gap();
  bool ok = true;
  std::string why;
  for (int t = 0; t < 500 && ok; ++t) {
    Rng rng = case_rng(cfg, static_cast<std::uint64_t>(t));
    PcMap f = random_j_map(g, cfg, rng);
    auto r = check_region_preservation(g, f, 100);  // structural + 100-pt window
    if (!r.pass) {
      ok = false;
      why = "crossing at case " + std::to_string(t) + ": " +
            element_to_string(r.input) + " -> " + element_to_string(r.image);
    }
  }
  report(7, ok,
         ok ? "500 seeded full-image maps on omega+omega* preserve regions "
              "(structural and 100-point window)"
            : std::string("region preservation -- ") + why);
}

void criterion_8_bijection() {
  ChainSpec w = omega();
  GenConfig cfg{424242, 12, 60, 5};
  bool ok = true;
  std::string why;
  std::map<std::pair<std::vector<Element>, std::vector<Element>>, PcMap> seen;
  for (int t = 0; t < 500 && ok; ++t) {
    Rng rng = case_rng(cfg, static_cast<std::uint64_t>(t));
    PcMap f = random_jf_map(w, cfg, rng);
    auto s = jf_to_subset(f);
    PcMap g = subset_to_jf(w, s.image, s.breakpoints);
    if (!(normalize(g) == normalize(f))) {
      ok = false;
      why = "round trip broke at case " + std::to_string(t);
      break;
    }
    auto key = std::make_pair(s.image, s.breakpoints);
    auto [it, inserted] = seen.emplace(key, normalize(f));
    if (!inserted && !(it->second == normalize(f))) {
      ok = false;
      why = "distinct maps shared a subset at case " + std::to_string(t);
    }
  }
  report(8, ok,
         ok ? "500 seeded finite-image maps on omega round-trip exactly and "
              "injectively"
            : std::string("bijection -- ") + why);
}

void criterion_9_composition_oracle() {
  GenConfig cfg{10007, 7, 30, 5};
  bool ok = true;
  std::string why;
  for (const auto& chain : catalog()) {
    auto window = enumerate_window(chain, 1000);
    for (int t = 0; t < 1000 && ok; ++t) {
      Rng rng = case_rng(cfg, static_cast<std::uint64_t>(t));
      PcMap f = t % 2 ? random_j_map(chain, cfg, rng) : random_jf_map(chain, cfg, rng);
      PcMap g = t % 3 ? random_j_map(chain, cfg, rng) : random_jf_map(chain, cfg, rng);
      PcMap fg = compose(f, g);
      if (!is_monotone(fg).pass) {
        ok = false;
        why = "composition left the monotone class at case " + std::to_string(t);
      }
      for (const auto& x : window) {
        if (!ok) break;
        if (!(fg.evaluate(x) == g.evaluate(f.evaluate(x)))) {
          ok = false;
          why = "pointwise disagreement at " + element_to_string(x);
          break;
        }
      }
      if (ok && t < 300) {
        PcMap h = random_jf_map(chain, cfg, rng);
        if (!(compose(compose(f, g), h) == compose(f, compose(g, h)))) {
          ok = false;
          why = "associativity broke at case " + std::to_string(t);
        }
      }
    }
    if (!ok) break;
  }
  report(9, ok,
         ok ? "1000 pairs per catalog chain agree with the pointwise oracle on "
              "1000-point windows; associativity on 300 triples each"
            : std::string("composition oracle -- ") + why);
}

// ---------------------------------------------------------------------------
// CLI golden files

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<<missing " + path + ">>";
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void criterion_10_golden(const std::string& cli, const std::string& golden_dir) {
  bool ok = true;
  std::string why;
  std::string tmp = "acceptance_cli_output.tmp";
  auto run_and_compare = [&](const std::string& args, const std::string& golden) {
    if (!ok) return;
    std::string cmd = cli + " " + args + " > " + tmp;
    int rc = std::system(cmd.c_str());
    if (rc != 0) {
      ok = false;
      why = "nonzero exit from: " + args;
      return;
    }
    if (slurp(tmp) != slurp(golden_dir + "/" + golden)) {
      ok = false;
      why = "output differs from " + golden;
    }
  };
  for (const std::string c :
       {"omega", "omega_star", "int", "rat", "z_arrow", "omega_gap", "fin3_rat"})
    run_and_compare("decide --chain " + golden_dir + "/inputs/chain_" + c + ".json",
                    "decide_" + c + ".json");
  run_and_compare("oracle --n 3", "oracle_n3.json");
  run_and_compare("factorize --chain " + golden_dir + "/inputs/chain_omega_gap.json" +
                      " --map " + golden_dir + "/inputs/map_const_minus_on_gap.json",
                  "factorize_obstructed_omega_gap.json");
  std::remove(tmp.c_str());
  report(10, ok,
         ok ? "CLI reproduces all 9 committed golden outputs byte-identically"
            : std::string("golden files -- ") + why);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <cli-path> <golden-dir>\n";
    return 2;
  }
  criterion_1_main_lemma();
  criterion_2_dual_coherence();
  criterion_3_two_factor();
  criterion_4_generation_catalog();
  criterion_5_finite_oracle();
  criterion_6_no_end();
  criterion_7_region_preservation();
  criterion_8_bijection();
  criterion_9_composition_oracle();
  criterion_10_golden(argv[1], argv[2]);
  if (failures == 0) {
    std::cout << "all criteria passed" << std::endl;
    return 0;
  }
  std::cout << failures << " criteria failed" << std::endl;
  return 1;
}
