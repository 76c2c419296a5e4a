#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ordchain/chain.hpp"
#include "ordchain/enumerate.hpp"
#include "ordchain/factorize.hpp"
#include "ordchain/interval.hpp"
#include "ordchain/pcmap.hpp"

namespace ordchain {

// Reproducible generation: identical config yields identical draws.
struct GenConfig {
  std::uint64_t seed = 42;
  int max_pieces = 6;
  long coordinate_band = 50;
  int product_length = 5;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // inclusive range; rejection sampling keeps draws engine-portable
  long uniform(long lo, long hi) {
    std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t v = eng_();
    while (v >= limit) v = eng_();
    return lo + static_cast<long>(v % range);
  }

  bool flip() { return uniform(0, 1) == 1; }

 private:
  std::mt19937_64 eng_;
};

inline Rng case_rng(const GenConfig& cfg, std::uint64_t case_index) {
  return Rng(cfg.seed ^ (0x9E3779B97F4A7C15ULL * (case_index + 1)));
}

inline void require_valid_config(const GenConfig& cfg) {
  if (cfg.max_pieces < 1 || cfg.coordinate_band < 1 || cfg.product_length < 1)
    throw PreconditionError("generator config fields must be positive");
}

inline Element random_element(const ChainSpec& chain, Rng& rng, long band) {
  int s = static_cast<int>(rng.uniform(0, chain.segment_count() - 1));
  const Segment& seg = chain.segment(s);
  switch (seg.kind) {
    case SegmentKind::Fin:
      return Element(s, rng.uniform(0, seg.size - 1));
    case SegmentKind::OmegaUp:
      return Element(s, rng.uniform(0, band));
    case SegmentKind::OmegaDown:
      return Element(s, rng.uniform(-band, 0));
    case SegmentKind::IntLine:
      return Element(s, rng.uniform(-band, band));
    case SegmentKind::RatLine:
      return Element(s, Rat(rng.uniform(-band, band), rng.uniform(1, 8)));
  }
  return Element(s, 0);
}

// ---------------------------------------------------------------------------
// Map generators

// A monotone map with an infinite identity tail and a bounded staircase of
// constants between two pivots; always a full-image map.
inline PcMap random_j_map(const ChainSpec& chain, const GenConfig& cfg, Rng& rng) {
  require_valid_config(cfg);
  if (cfg.max_pieces == 1) return PcMap::identity(chain);

  Element a = random_element(chain, rng, cfg.coordinate_band);
  Element b = random_element(chain, rng, cfg.coordinate_band);
  if (b < a) std::swap(a, b);
  auto feasible = [&] {
    return downset_cardinality(chain, a).infinite ||
           upset_cardinality(chain, b).infinite;
  };
  for (int attempt = 0; attempt < 20 && !feasible(); ++attempt) {
    a = random_element(chain, rng, cfg.coordinate_band);
    b = random_element(chain, rng, cfg.coordinate_band);
    if (b < a) std::swap(a, b);
  }
  if (!feasible()) b = a;  // a single pivot always leaves an infinite tail

  int m = static_cast<int>(rng.uniform(0, cfg.max_pieces - 1));
  std::set<Element> vals;
  for (int t = 0; t < 8 * m && static_cast<int>(vals.size()) < m; ++t) {
    Element v = random_element(chain, rng, cfg.coordinate_band);
    if (a <= v && v <= b) vals.insert(v);
  }
  std::set<Element> cut_elems;
  int needed = static_cast<int>(vals.size()) - 1;
  for (int t = 0; t < 8 * needed && static_cast<int>(cut_elems.size()) < needed; ++t) {
    Element d = random_element(chain, rng, cfg.coordinate_band);
    if (a < d && d < b) cut_elems.insert(d);
  }
  while (static_cast<int>(vals.size()) > static_cast<int>(cut_elems.size()) + 1)
    vals.erase(std::prev(vals.end()));
  while (static_cast<int>(cut_elems.size()) > static_cast<int>(vals.size()) - 1 &&
         !cut_elems.empty())
    cut_elems.erase(std::prev(cut_elems.end()));
  if (vals.empty()) return PcMap::identity(chain);

  std::vector<Piece> ps;
  Cut start = canonicalize_cut(chain, Cut::below(a));
  Cut stop = canonicalize_cut(chain, Cut::below(b));
  ps.push_back({Cut::before_all(), start, Action::id()});
  Cut lo = start;
  auto vi = vals.begin();
  for (const auto& d : cut_elems) {
    Cut hi = canonicalize_cut(chain, Cut::below(d));
    ps.push_back({lo, hi, Action::constant(*vi++)});
    lo = hi;
  }
  ps.push_back({lo, stop, Action::constant(*vi)});
  ps.push_back({stop, Cut::after_all(), Action::id()});
  PcMap f = normalize(PcMap(chain, std::move(ps)));
  if (!j_membership(f).in_j)
    throw Error("internal: generated map lost its infinite identity tail");
  return f;
}

// An all-constant monotone map with at most max_pieces image values.
inline PcMap random_jf_map(const ChainSpec& chain, const GenConfig& cfg, Rng& rng) {
  require_valid_config(cfg);
  for (int attempt = 0;; ++attempt) {
    int m = static_cast<int>(rng.uniform(1, cfg.max_pieces));
    std::set<Element> vals;
    for (int t = 0; t < 16 * m && static_cast<int>(vals.size()) < m; ++t)
      vals.insert(random_element(chain, rng, cfg.coordinate_band));
    std::set<Element> cut_elems;
    int needed = static_cast<int>(vals.size()) - 1;
    for (int t = 0; t < 16 * needed && static_cast<int>(cut_elems.size()) < needed;
         ++t)
      cut_elems.insert(random_element(chain, rng, cfg.coordinate_band));
    while (static_cast<int>(vals.size()) > static_cast<int>(cut_elems.size()) + 1)
      vals.erase(std::prev(vals.end()));
    while (static_cast<int>(cut_elems.size()) >
           static_cast<int>(vals.size()) - 1)
      cut_elems.erase(std::prev(cut_elems.end()));
    std::vector<Element> values(vals.begin(), vals.end());
    std::vector<Bound> cuts;
    for (const auto& d : cut_elems) cuts.push_back(Bound::at(d, rng.flip()));
    try {
      return step_map_from_image(chain, values, cuts);
    } catch (const ConstructionError&) {
      if (attempt > 100) throw;
    }
  }
}

// ---------------------------------------------------------------------------
// Structural checks

struct EndCheck {
  bool pass = true;
  std::optional<Element> attained_end;
};

// On the single omega* chain the image of a product of full-image maps has
// no minimum; dually no maximum on omega. Decidable from the extreme piece
// of the normalized product.
inline EndCheck check_no_end(const ChainSpec& chain, const std::vector<PcMap>& factors) {
  if (chain.segment_count() != 1 ||
      (chain.segment(0).kind != SegmentKind::OmegaUp &&
       chain.segment(0).kind != SegmentKind::OmegaDown))
    throw PreconditionError("end check requires the single omega or omega* chain");
  if (factors.empty()) throw PreconditionError("end check needs at least one factor");
  for (const auto& f : factors)
    if (!(f.chain() == chain))
      throw PreconditionError("factors must live on the given chain");
  PcMap prod = normalize(factors.front());
  for (std::size_t i = 1; i < factors.size(); ++i) prod = compose(prod, factors[i]);
  bool check_min = chain.segment(0).kind == SegmentKind::OmegaDown;
  const Piece& edge = check_min ? prod.pieces().front() : prod.pieces().back();
  if (edge.act.identity) return {};
  return {false, edge.act.value};
}

struct RegionCheck {
  bool pass = true;
  Element input, image;  // witness when !pass
};

// On a chain with empty X^0, values of inputs in X^- must classify Minus and
// values of inputs in X^+ must classify Plus. Checked structurally on the
// normalized pieces and pointwise on a window.
inline RegionCheck check_region_preservation(const ChainSpec& chain, const PcMap& f,
                                             int window = 100) {
  Regions r = regions(chain);
  if (!interval_empty(chain, r.zero))
    throw PreconditionError("region preservation check requires empty X^0");
  PcMap nf = normalize(f);
  for (const auto& p : nf.pieces()) {
    if (p.act.identity || compare_cuts(p.lo, p.hi) >= 0) continue;
    RegionClass c = classify(chain, p.act.value);
    Cut mlo = cut_max(p.lo, r.minus.lower_cut());
    Cut mhi = cut_min(p.hi, r.minus.upper_cut());
    if (c != RegionClass::Minus && !cut_interval_empty(chain, mlo, mhi))
      return {false, pick_element(chain, Interval::of_cuts(mlo, mhi)), p.act.value};
    Cut plo = cut_max(p.lo, r.plus.lower_cut());
    Cut phi = cut_min(p.hi, r.plus.upper_cut());
    if (c != RegionClass::Plus && !cut_interval_empty(chain, plo, phi))
      return {false, pick_element(chain, Interval::of_cuts(plo, phi)), p.act.value};
  }
  for (const auto& x : enumerate_window(chain, window)) {
    Element y = f.evaluate(x);
    if (classify(chain, x) != classify(chain, y)) return {false, x, y};
  }
  return {};
}

// Witness c strictly below the whole preimage of an image value b; exists
// whenever the map has full image and b lies in X^+.
inline std::optional<Element> check_preimage_bound(const PcMap& f, const Element& b) {
  const ChainSpec& chain = f.chain();
  Interval pre = preimage_interval(f, b);  // throws if b is not in the image
  Bound upper = strictly_below(chain, pre);
  Interval below{Bound::neg_inf(), upper};
  if (interval_empty(chain, below)) return std::nullopt;
  return pick_element(chain, below);
}

// Some image value of f strictly below c, scanning pieces from the left.
inline std::optional<Element> find_image_below(const PcMap& f, const Element& c) {
  const ChainSpec& chain = f.chain();
  PcMap nf = normalize(f);
  Cut cap = canonicalize_cut(chain, Cut::below(c));
  for (const auto& p : nf.pieces()) {
    if (compare_cuts(p.lo, p.hi) >= 0) continue;
    if (p.act.identity) {
      Cut hi = cut_min(p.hi, cap);
      if (!cut_interval_empty(chain, p.lo, hi))
        return pick_element(chain, Interval::of_cuts(p.lo, hi));
    } else if (p.act.value < c) {
      return p.act.value;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Suite runner

struct PropertyFailure {
  std::uint64_t seed = 0;
  int case_index = 0;
  std::string witness;
};

struct PropertyReport {
  std::string name;
  int cases = 0;
  std::vector<PropertyFailure> failures;
};

struct SuiteReport {
  std::vector<PropertyReport> properties;
  bool pass = true;
};

namespace detail {

inline std::vector<ChainSpec> catalog_chains() {
  return {
      ChainSpec({Segment::omega_up()}),
      ChainSpec({Segment::omega_down()}),
      ChainSpec({Segment::int_line()}),
      ChainSpec({Segment::rat_line()}),
      ChainSpec({Segment::omega_up(), Segment::fin(1), Segment::omega_down()}),
      ChainSpec({Segment::omega_up(), Segment::omega_down()}),
      ChainSpec({Segment::fin(3), Segment::rat_line()}),
  };
}

}  // namespace detail

inline SuiteReport run_suite(const std::string& name, const GenConfig& cfg, int cases) {
  require_valid_config(cfg);
  SuiteReport out;
  PropertyReport rep;
  rep.name = name;
  rep.cases = cases;
  auto fail = [&](int idx, std::string witness) {
    rep.failures.push_back({cfg.seed, idx, std::move(witness)});
  };

  if (name == "generators") {
    auto chains = detail::catalog_chains();
    for (int c = 0; c < cases; ++c) {
      Rng rng = case_rng(cfg, static_cast<std::uint64_t>(c));
      const ChainSpec& chain = chains[static_cast<std::size_t>(c) % chains.size()];
      PcMap j = random_j_map(chain, cfg, rng);
      if (!j_membership(j).in_j) fail(c, "full-image generator produced a finite image");
      if (!is_monotone(j).pass) fail(c, "full-image generator not monotone");
      PcMap jf = random_jf_map(chain, cfg, rng);
      auto cert = j_membership(jf);
      if (cert.in_j) fail(c, "finite-image generator produced an infinite image");
      if (!is_monotone(jf).pass) fail(c, "finite-image generator not monotone");
    }
  } else if (name == "no_end") {
    ChainSpec down({Segment::omega_down()});
    ChainSpec up({Segment::omega_up()});
    for (int c = 0; c < cases; ++c) {
      Rng rng = case_rng(cfg, static_cast<std::uint64_t>(c));
      int len = 1 + static_cast<int>(rng.uniform(0, cfg.product_length - 1));
      std::vector<PcMap> fs_down, fs_up;
      for (int t = 0; t < len; ++t) {
        fs_down.push_back(random_j_map(down, cfg, rng));
        fs_up.push_back(random_j_map(up, cfg, rng));
      }
      auto r1 = check_no_end(down, fs_down);
      if (!r1.pass)
        fail(c, "product image attains minimum " +
                    element_to_string(*r1.attained_end));
      auto r2 = check_no_end(up, fs_up);
      if (!r2.pass)
        fail(c, "product image attains maximum " +
                    element_to_string(*r2.attained_end));
      if (c % 10 == 0) {  // control: a finite-image map must be flagged
        PcMap control = random_jf_map(down, cfg, rng);
        if (check_no_end(down, {control}).pass)
          fail(c, "finite-image control was not flagged");
      }
    }
  } else if (name == "region_preservation") {
    ChainSpec gap({Segment::omega_up(), Segment::omega_down()});
    for (int c = 0; c < cases; ++c) {
      Rng rng = case_rng(cfg, static_cast<std::uint64_t>(c));
      PcMap f = random_j_map(gap, cfg, rng);
      auto r = check_region_preservation(gap, f);
      if (!r.pass)
        fail(c, "region crossing " + element_to_string(r.input) + " -> " +
                    element_to_string(r.image));
    }
  } else if (name == "preimage_bounds") {
    ChainSpec down({Segment::omega_down()});
    for (int c = 0; c < cases; ++c) {
      Rng rng = case_rng(cfg, static_cast<std::uint64_t>(c));
      PcMap f = random_j_map(down, cfg, rng);
      Element b = f.evaluate(random_element(down, rng, cfg.coordinate_band));
      auto w = check_preimage_bound(f, b);
      if (!w) fail(c, "no element below the preimage of " + element_to_string(b));
    }
  } else if (name == "witness_chain") {
    ChainSpec down({Segment::omega_down()});
    for (int c = 0; c < cases; ++c) {
      Rng rng = case_rng(cfg, static_cast<std::uint64_t>(c));
      PcMap alpha = random_j_map(down, cfg, rng);
      PcMap beta = random_j_map(down, cfg, rng);
      Element b = alpha.evaluate(random_element(down, rng, cfg.coordinate_band));
      auto c_wit = check_preimage_bound(alpha, b);
      if (!c_wit) {
        fail(c, "no bound below the preimage of " + element_to_string(b));
        continue;
      }
      auto b_prime = find_image_below(beta, *c_wit);
      if (!b_prime)
        fail(c, "no image value of the second map below " +
                    element_to_string(*c_wit));
    }
  } else {
    throw InputError("unknown property suite: '" + name + "'");
  }

  out.properties.push_back(std::move(rep));
  for (const auto& p : out.properties)
    if (!p.failures.empty()) out.pass = false;
  return out;
}

}  // namespace ordchain
