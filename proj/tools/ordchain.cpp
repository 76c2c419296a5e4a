// Command-line surface over the chain/endomorphism library: classification,
// factorization, verification, the finite oracle and the property suites,
// all speaking the library's JSON formats.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ordchain/json_io.hpp"

using namespace ordchain;

namespace {

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

Json parse_json_arg(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw InputError(std::string("malformed JSON argument: ") + e.what());
  }
}

void emit(const Json& j, bool as_text, const std::string& text) {
  if (as_text)
    std::cout << text;
  else
    std::cout << j.dump(2) << "\n";
}

std::string bound_text(const Bound& b, bool lower) {
  switch (b.kind) {
    case BoundKind::NegInf:
      return "-inf";
    case BoundKind::PosInf:
      return "+inf";
    case BoundKind::Gap:
      return "gap@" + std::to_string(b.gap_seg);
    case BoundKind::At: {
      std::string e = element_to_string(b.element);
      if (lower) return (b.inclusive ? "[" : "(") + e;
      return e + (b.inclusive ? "]" : ")");
    }
  }
  return "?";
}

std::string interval_text(const Interval& iv) {
  return bound_text(iv.lower, true) + " .. " + bound_text(iv.upper, false);
}

int run(int argc, char** argv) {
  CLI::App app{"exact chains, order endomorphisms and their factorizations"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));

  std::string chain_file, map_file, factors_file, element_json, zero_json;
  std::string strategy = "auto", suite, image_json, breakpoints_json;
  int window = 41, oracle_n = 3, cases = 100;
  bool invert = false;
  std::uint64_t seed = 42;
  if (const char* env = std::getenv("ORDCHAIN_SEED")) seed = std::strtoull(env, nullptr, 10);

  auto* c_classify = app.add_subcommand("classify", "classify an element into X^-/X^0/X^+");
  c_classify->add_option("--chain", chain_file)->required();
  c_classify->add_option("--element", element_json)->required();

  auto* c_regions = app.add_subcommand("regions", "the three-interval decomposition");
  c_regions->add_option("--chain", chain_file)->required();

  auto* c_factorize = app.add_subcommand("factorize", "factor a map over the full-image maps");
  c_factorize->add_option("--chain", chain_file)->required();
  c_factorize->add_option("--map", map_file)->required();
  c_factorize->add_option("--zero", zero_json);
  c_factorize->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"auto", "main_lemma", "two_factor"}));

  auto* c_verify = app.add_subcommand("verify", "check a factorization end to end");
  c_verify->add_option("--chain", chain_file)->required();
  c_verify->add_option("--map", map_file)->required();
  c_verify->add_option("--factors", factors_file)->required();
  c_verify->add_option("--window", window);

  auto* c_decide = app.add_subcommand("decide", "decide generation by the full-image maps");
  c_decide->add_option("--chain", chain_file)->required();

  auto* c_oracle = app.add_subcommand("oracle", "finite-chain brute-force report");
  c_oracle->add_option("--n", oracle_n)->required();

  auto* c_bijection = app.add_subcommand("bijection", "finite-image maps on omega as subsets");
  c_bijection->add_option("--map", map_file);
  c_bijection->add_flag("--invert", invert);
  c_bijection->add_option("--chain", chain_file);
  c_bijection->add_option("--image", image_json);
  c_bijection->add_option("--breakpoints", breakpoints_json);

  auto* c_props = app.add_subcommand("props", "run a property suite");
  c_props->add_option("--suite", suite)->required();
  c_props->add_option("--seed", seed);
  c_props->add_option("--cases", cases);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  bool as_text = format == "text";

  if (c_classify->parsed()) {
    ChainSpec chain = parse_chain(load_json_file(chain_file));
    Element x = parse_element(parse_json_arg(element_json));
    chain.require_valid(x);
    RegionClass c = classify(chain, x);
    Json j{{"class", region_class_to_json(c)}};
    emit(j, as_text, region_class_to_json(c).get<std::string>() + "\n");
    return 0;
  }

  if (c_regions->parsed()) {
    ChainSpec chain = parse_chain(load_json_file(chain_file));
    Regions r = regions(chain);
    std::ostringstream t;
    t << "minus: " << interval_text(r.minus) << "\n"
      << "zero:  " << interval_text(r.zero) << "\n"
      << "plus:  " << interval_text(r.plus) << "\n";
    emit(regions_to_json(r), as_text, t.str());
    return 0;
  }

  if (c_factorize->parsed()) {
    ChainSpec chain = parse_chain(load_json_file(chain_file));
    PcMap alpha = parse_map(load_json_file(map_file));
    if (!(alpha.chain() == chain))
      throw InputError("--chain disagrees with the map's chain");
    FactorizationResult result;
    if (strategy == "auto") {
      result = factorize(alpha);
    } else if (strategy == "main_lemma") {
      Element zero = zero_json.empty()
                         ? pick_element(chain, regions(chain).zero)
                         : parse_element(parse_json_arg(zero_json));
      result.outcome = FactorizationResult::Outcome::Factored;
      result.trace = main_lemma_factorize(alpha, zero);
    } else {
      auto uv = find_crossing_pair(alpha);
      if (!uv) throw PreconditionError("no crossing pair for the two-factor strategy");
      result.outcome = FactorizationResult::Outcome::TwoFactor;
      result.two_factor = two_factor_factorize(alpha, uv->first, uv->second);
    }
    Json j = factorization_to_json(result);
    std::ostringstream t;
    t << "outcome: " << j["outcome"].get<std::string>() << "\n";
    if (result.trace)
      t << "factors: " << result.trace->factors.size() << " (i = " << result.trace->i
        << ", k = " << result.trace->k << ")\n";
    if (result.witness)
      t << "witness: " << obstruction_to_json(*result.witness).dump() << "\n";
    emit(j, as_text, t.str());
    return 0;
  }

  if (c_verify->parsed()) {
    ChainSpec chain = parse_chain(load_json_file(chain_file));
    PcMap alpha = parse_map(load_json_file(map_file));
    if (!(alpha.chain() == chain))
      throw InputError("--chain disagrees with the map's chain");
    auto factors = parse_factors(load_json_file(factors_file));
    if (factors.empty() && !j_membership(alpha).in_j)
      throw InputError("nothing to verify for this outcome");
    if (factors.empty()) factors.push_back(alpha);  // singleton outcome
    auto rep = verify_factorization(alpha, factors, window);
    std::ostringstream t;
    t << "symbolic:  " << (rep.symbolic.pass ? "pass" : "fail " + rep.symbolic.detail)
      << "\n"
      << "in-J:      " << (rep.all_in_j ? "pass" : "fail") << "\n"
      << "pointwise: " << (rep.pointwise.pass ? "pass" : "fail " + rep.pointwise.detail)
      << "\n"
      << "overall:   " << (rep.pass ? "pass" : "fail") << "\n";
    emit(verification_to_json(rep), as_text, t.str());
    return rep.pass ? 0 : 1;
  }

  if (c_decide->parsed()) {
    ChainSpec chain = parse_chain(load_json_file(chain_file));
    GenerationDecision d = decide_generation(chain);
    std::ostringstream t;
    if (d.generated)
      t << "generated, witness " << element_to_string(*d.witness) << "\n";
    else
      t << "not generated: X^0 is empty\n";
    emit(generation_to_json(d), as_text, t.str());
    return 0;
  }

  if (c_oracle->parsed()) {
    OracleReport r = oracle_report(oracle_n);
    std::ostringstream t;
    t << "n=" << r.n << " order=" << r.order << " top_class=" << r.top_class_size
      << " closure=" << r.closure_size
      << " generated=" << (r.generated ? "yes" : "no") << "\n";
    emit(oracle_report_to_json(r), as_text, t.str());
    return 0;
  }

  if (c_bijection->parsed()) {
    if (invert) {
      if (chain_file.empty() || image_json.empty() || breakpoints_json.empty())
        throw InputError("--invert needs --chain, --image and --breakpoints");
      ChainSpec chain = parse_chain(load_json_file(chain_file));
      auto image = parse_element_list(parse_json_arg(image_json));
      auto breakpoints = parse_element_list(parse_json_arg(breakpoints_json));
      PcMap f = subset_to_jf(chain, image, breakpoints);
      emit(map_to_json(f), as_text, map_to_json(f).dump(2) + "\n");
      return 0;
    }
    if (map_file.empty()) throw InputError("bijection needs --map (or --invert)");
    PcMap f = parse_map(load_json_file(map_file));
    JfSubset s = jf_to_subset(f);
    Json j = jf_subset_to_json(s);
    std::ostringstream t;
    t << "image:";
    for (const auto& e : s.image) t << " " << element_to_string(e);
    t << "\nbreakpoints:";
    for (const auto& e : s.breakpoints) t << " " << element_to_string(e);
    t << "\n";
    emit(j, as_text, t.str());
    return 0;
  }

  if (c_props->parsed()) {
    GenConfig cfg;
    cfg.seed = seed;
    SuiteReport rep = run_suite(suite, cfg, cases);
    std::ostringstream t;
    for (const auto& p : rep.properties) {
      t << p.name << ": " << p.cases << " cases, " << p.failures.size()
        << " failures\n";
      for (const auto& f : p.failures)
        t << "  case " << f.case_index << " (seed " << f.seed << "): " << f.witness
          << "\n";
    }
    emit(suite_report_to_json(rep), as_text, t.str());
    return rep.pass ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const AddressError& e) {
    std::cerr << "address error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
}
