// Exercises the command-line tool end to end: exit codes, the
// factorize-then-verify round trip, text output and the seed environment
// variable. Usage: cli_behavior <cli-path> <golden-dir>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int failures = 0;
std::string cli, golden;

void check(bool ok, const std::string& what) {
  std::cout << (ok ? "ok" : "FAILED") << " - " << what << "\n";
  if (!ok) ++failures;
}

int run(const std::string& args, const std::string& out_file = "") {
  std::string cmd = cli + " " + args;
  if (!out_file.empty()) cmd += " > " + out_file;
  else cmd += " > cli_behavior.null";
  int rc = std::system(cmd.c_str());
  return rc == -1 ? -1 : WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: cli_behavior <cli-path> <golden-dir>\n";
    return 2;
  }
  cli = argv[1];
  golden = argv[2];
  std::string inputs = golden + "/inputs";

  // exit 0 on plain answers
  check(run("decide --chain " + inputs + "/chain_int.json") == 0, "decide exits 0");
  check(run("classify --chain " + inputs + "/chain_z_arrow.json --element "
            "'{\"seg\":1,\"coord\":\"0\"}'") == 0,
        "classify exits 0");
  check(run("regions --chain " + inputs + "/chain_omega_gap.json") == 0,
        "regions exits 0");

  // an obstruction is an answer, not a failure
  check(run("factorize --chain " + inputs + "/chain_omega_gap.json --map " + inputs +
            "/map_const_minus_on_gap.json") == 0,
        "obstructed factorize exits 0");

  // malformed input exits 2
  check(run("decide --chain " + inputs + "/no_such_file.json 2> cli_behavior.null") == 2,
        "missing file exits 2");
  write_file("cli_behavior_bad.json", "{\"segments\":[{\"type\":\"weird\"}]}");
  check(run("decide --chain cli_behavior_bad.json 2> cli_behavior.null") == 2,
        "bad segment type exits 2");
  write_file("cli_behavior_bad.json", "{\"segments\":[{\"type\":\"fin\",\"size\":3}]}");
  check(run("decide --chain cli_behavior_bad.json 2> cli_behavior.null") == 2,
        "finite chain exits 2");
  check(run("classify --chain " + inputs + "/chain_int.json --element "
            "'{\"seg\":0,\"coord\":\"6/4\"}' 2> cli_behavior.null") == 2,
        "non-canonical rational exits 2");
  check(run("nonsense 2> cli_behavior.null") == 2, "unknown subcommand exits 2");

  // factorize output pipes straight into verify, which passes
  std::string map_file = "cli_behavior_map.json";
  write_file(map_file,
             "{\"chain\":{\"segments\":[{\"type\":\"int_line\"}]},\"pieces\":["
             "{\"lower\":{\"type\":\"neg_inf\"},\"upper\":{\"type\":\"at\","
             "\"element\":{\"seg\":0,\"coord\":\"-3\"},\"inclusive\":true},"
             "\"action\":{\"kind\":\"const\",\"value\":{\"seg\":0,\"coord\":\"-2\"}}},"
             "{\"lower\":{\"type\":\"at\",\"element\":{\"seg\":0,\"coord\":\"-3\"},"
             "\"inclusive\":false},\"upper\":{\"type\":\"pos_inf\"},"
             "\"action\":{\"kind\":\"const\",\"value\":{\"seg\":0,\"coord\":\"1\"}}}]}");
  for (const std::string strategy : {"auto", "main_lemma", "two_factor"}) {
    int rc = run("factorize --chain " + inputs + "/chain_int.json --map " + map_file +
                     " --strategy " + strategy,
                 "cli_behavior_factors.json");
    check(rc == 0, "factorize --strategy " + strategy + " exits 0");
    rc = run("verify --chain " + inputs + "/chain_int.json --map " + map_file +
             " --factors cli_behavior_factors.json --window 30");
    check(rc == 0, "verify passes the " + strategy + " factorization");
  }

  // a full-image map factorizes as a singleton, which verify accepts
  std::string idmap = "cli_behavior_idmap.json";
  write_file(idmap,
             "{\"chain\":{\"segments\":[{\"type\":\"int_line\"}]},\"pieces\":["
             "{\"lower\":{\"type\":\"neg_inf\"},\"upper\":{\"type\":\"pos_inf\"},"
             "\"action\":{\"kind\":\"id\"}}]}");
  check(run("factorize --chain " + inputs + "/chain_int.json --map " + idmap,
            "cli_behavior_singleton.json") == 0,
        "factorize of a full-image map exits 0");
  check(slurp("cli_behavior_singleton.json").find("singleton") != std::string::npos,
        "full-image map factorizes as a singleton");
  check(run("verify --chain " + inputs + "/chain_int.json --map " + idmap +
            " --factors cli_behavior_singleton.json --window 20") == 0,
        "verify passes the singleton outcome");

  // a wrong factor list makes verify exit 1
  write_file("cli_behavior_factors.json",
             "[{\"chain\":{\"segments\":[{\"type\":\"int_line\"}]},\"pieces\":["
             "{\"lower\":{\"type\":\"neg_inf\"},\"upper\":{\"type\":\"pos_inf\"},"
             "\"action\":{\"kind\":\"id\"}}]}]");
  check(run("verify --chain " + inputs + "/chain_int.json --map " + map_file +
            " --factors cli_behavior_factors.json --window 10") == 1,
        "verify exits 1 on a wrong factorization");

  // bijection round trip through the tool
  std::string wmap = "cli_behavior_wmap.json";
  write_file(wmap,
             "{\"chain\":{\"segments\":[{\"type\":\"omega_up\"}]},\"pieces\":["
             "{\"lower\":{\"type\":\"neg_inf\"},\"upper\":{\"type\":\"at\","
             "\"element\":{\"seg\":0,\"coord\":\"4\"},\"inclusive\":false},"
             "\"action\":{\"kind\":\"const\",\"value\":{\"seg\":0,\"coord\":\"3\"}}},"
             "{\"lower\":{\"type\":\"at\",\"element\":{\"seg\":0,\"coord\":\"4\"},"
             "\"inclusive\":true},\"upper\":{\"type\":\"pos_inf\"},"
             "\"action\":{\"kind\":\"const\",\"value\":{\"seg\":0,\"coord\":\"7\"}}}]}");
  check(run("bijection --map " + wmap, "cli_behavior_subset.json") == 0,
        "bijection forward exits 0");
  check(slurp("cli_behavior_subset.json").find("\"4\"") != std::string::npos,
        "bijection reports the breakpoint");
  check(run("bijection --invert --chain " + inputs + "/chain_omega.json --image "
            "'[{\"seg\":0,\"coord\":\"3\"},{\"seg\":0,\"coord\":\"7\"}]' "
            "--breakpoints '[{\"seg\":0,\"coord\":\"4\"}]'",
            "cli_behavior_inv.json") == 0,
        "bijection --invert exits 0");

  // property suites exit 0 and respect the seed environment variable
  check(run("props --suite region_preservation --seed 7 --cases 20") == 0, "props exits 0");
  check(run("props --suite nonsense --cases 5 2> cli_behavior.null") == 2,
        "unknown suite exits 2");
  {
    int rc = std::system((std::string("ORDCHAIN_SEED=99 ") + cli +
                          " props --suite generators --cases 5 > cli_behavior_a.json")
                             .c_str());
    int rc2 = std::system((cli + " props --suite generators --seed 99 --cases 5 "
                                 "> cli_behavior_b.json")
                              .c_str());
    check(WEXITSTATUS(rc) == 0 && WEXITSTATUS(rc2) == 0 &&
              slurp("cli_behavior_a.json") == slurp("cli_behavior_b.json"),
          "ORDCHAIN_SEED matches an explicit --seed");
  }

  // text format renders the same content
  check(run("decide --chain " + inputs + "/chain_z_arrow.json --format text",
            "cli_behavior_text.txt") == 0,
        "text format exits 0");
  check(slurp("cli_behavior_text.txt").find("generated") != std::string::npos,
        "text format mentions the decision");

  for (const char* f :
       {"cli_behavior.null", "cli_behavior_bad.json", "cli_behavior_map.json",
        "cli_behavior_factors.json", "cli_behavior_wmap.json",
        "cli_behavior_subset.json", "cli_behavior_inv.json", "cli_behavior_a.json",
        "cli_behavior_idmap.json", "cli_behavior_singleton.json",
        "cli_behavior_b.json", "cli_behavior_text.txt"})
    std::remove(f);

  if (failures) {
    std::cout << failures << " checks failed\n";
    return 1;
  }
  std::cout << "all cli checks passed\n";
  return 0;
}
