#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordchain/chain.hpp"
#include "ordchain/enumerate.hpp"
#include "ordchain/interval.hpp"
#include "ordchain/pcmap.hpp"

namespace ordchain {

// ---------------------------------------------------------------------------
// Result types

enum class FactorCase { BelowOrEqual, AboveDual };

struct FactorizationTrace {
  Element zero;      // the chosen element of X^0
  FactorCase fcase = FactorCase::BelowOrEqual;
  int i = 1;         // 1-based image index with a_i = image of zero
  int k = 0;         // number of further image values in (a_i, zero]
  std::vector<PcMap> factors;  // 2(k+1) + 2 maps, each with full image
};

struct ObstructionWitness {
  enum class Kind { EmptyX0Crossing, BoundedImageEnd, NotRepresentableInJf };
  Kind kind = Kind::NotRepresentableInJf;
  // EmptyX0Crossing: a crossing pair, one element per region
  Element xplus, ximage;
  bool plus_maps_down = true;  // direction: X+ into X- (else X- into X+)
  // BoundedImageEnd: the attained image end that full-image products avoid
  bool end_is_max = false;
  Element end_value;
};

struct FactorizationResult {
  enum class Outcome { Factored, TwoFactor, Singleton, Obstructed };
  Outcome outcome = Outcome::Singleton;
  std::optional<FactorizationTrace> trace;            // Factored
  std::optional<std::pair<PcMap, PcMap>> two_factor;  // TwoFactor
  std::optional<ObstructionWitness> witness;          // Obstructed
};

struct GenerationDecision {
  bool generated = false;
  std::optional<Element> witness;  // an element of X^0 when generated
};

// ---------------------------------------------------------------------------
// Shared helpers

namespace detail {

// Elements of a finite cut interval, in increasing order.
inline std::vector<Element> finite_interval_elements(const ChainSpec& chain,
                                                     const Cut& lo, const Cut& hi) {
  std::vector<Element> out;
  Cut l = canonicalize_cut(chain, lo);
  Cut h = canonicalize_cut(chain, hi);
  if (compare_cuts(l, h) >= 0) return out;
  for (int s = 0; s < chain.segment_count(); ++s) {
    auto r = restrict_to_segment(l, h, s);
    const Segment& seg = chain.segment(s);
    if (seg.kind == SegmentKind::RatLine) {
      auto c = count_in_segment(seg, r);
      if (c.infinite) throw PreconditionError("interval is not finite");
      if (c.count == 1) out.emplace_back(s, r.lower->coord);
      continue;
    }
    IntRange ir = discrete_range(seg, r);
    if (ir.empty) continue;
    if (!ir.lo || !ir.hi) throw PreconditionError("interval is not finite");
    for (Int c = *ir.lo; c <= *ir.hi; ++c) out.emplace_back(s, Rat(c));
  }
  return out;
}

// Increasing list of image values of a normalized finite-image map.
inline std::vector<Element> finite_image_values(const PcMap& nf) {
  const ChainSpec& chain = nf.chain();
  std::vector<Element> out;
  for (const auto& p : nf.pieces()) {
    if (compare_cuts(p.lo, p.hi) >= 0) continue;
    if (!p.act.identity) {
      if (out.empty() || !(out.back() == p.act.value)) out.push_back(p.act.value);
    } else {
      for (auto& e : finite_interval_elements(chain, p.lo, p.hi))
        if (out.empty() || !(out.back() == e)) out.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Block factorization around a fixed zero of X^0

namespace detail {

// The direct case: image of zero lies at or below zero. Transcribes the
// beta / gamma1 / gamma2 / delta construction.
inline FactorizationTrace main_lemma_below(const PcMap& nalpha, const Element& zero) {
  const ChainSpec& chain = nalpha.chain();
  std::vector<Element> image = finite_image_values(nalpha);
  Element v0 = nalpha.evaluate(zero);

  int n = static_cast<int>(image.size());
  int i = 0;
  while (i < n && !(image[static_cast<std::size_t>(i)] == v0)) ++i;
  if (i == n) throw PreconditionError("image of zero not found in image list");
  ++i;  // 1-based
  int k = 0;
  while (i + k < n && image[static_cast<std::size_t>(i + k)] <= zero) ++k;

  Cut below_zero = canonicalize_cut(chain, Cut::below(zero));
  Cut above_zero = canonicalize_cut(chain, Cut::above(zero));

  auto clip = [&](std::vector<Piece>& out, const Cut& lo, const Cut& hi) {
    for (const auto& p : nalpha.pieces()) {
      Cut l = cut_max(p.lo, lo);
      Cut h = cut_min(p.hi, hi);
      if (compare_cuts(l, h) < 0) out.push_back({l, h, p.act});
    }
  };

  std::vector<PcMap> factors;

  {  // beta: apply alpha at or below zero, identity above
    std::vector<Piece> ps;
    clip(ps, Cut::before_all(), above_zero);
    ps.push_back({above_zero, Cut::after_all(), Action::id()});
    factors.push_back(normalize(PcMap(chain, std::move(ps))));
  }

  for (int j = 0; j < k + 1; ++j) {
    const Element& a = image[static_cast<std::size_t>(i + j - 1)];
    Interval pre = preimage_interval(nalpha, a);
    Cut u = canonicalize_cut(chain, pre.upper_cut());
    {  // gamma1: identity below zero, zero on the unfinished block, identity above
      Cut mid_hi = cut_max(below_zero, u);
      std::vector<Piece> ps{{Cut::before_all(), below_zero, Action::id()},
                            {below_zero, mid_hi, Action::constant(zero)},
                            {mid_hi, Cut::after_all(), Action::id()}};
      factors.push_back(normalize(PcMap(chain, std::move(ps))));
    }
    {  // gamma2: identity below a, constant a on [a, zero], identity above zero
      Cut below_a = canonicalize_cut(chain, Cut::below(a));
      std::vector<Piece> ps{{Cut::before_all(), below_a, Action::id()},
                            {below_a, above_zero, Action::constant(a)},
                            {above_zero, Cut::after_all(), Action::id()}};
      factors.push_back(normalize(PcMap(chain, std::move(ps))));
    }
  }

  if (i + k == n) {
    factors.push_back(PcMap::identity(chain));
  } else {  // delta: identity at or below zero, next value on its block, alpha above
    const Element& a_next = image[static_cast<std::size_t>(i + k)];
    Cut u = canonicalize_cut(chain, preimage_interval(nalpha, a_next).upper_cut());
    std::vector<Piece> ps{{Cut::before_all(), above_zero, Action::id()},
                          {above_zero, u, Action::constant(a_next)}};
    clip(ps, u, Cut::after_all());
    factors.push_back(normalize(PcMap(chain, std::move(ps))));
  }

  return FactorizationTrace{zero, FactorCase::BelowOrEqual, i, k, std::move(factors)};
}

}  // namespace detail

// Factorizes a finite-image map into 2(k+1)+2 full-image factors around a
// fixed element of X^0. The case with the image of zero above zero runs on
// the order dual and transports the factors back.
inline FactorizationTrace main_lemma_factorize(const PcMap& alpha, const Element& zero) {
  const ChainSpec& chain = alpha.chain();
  chain.require_valid(zero);
  if (classify(chain, zero) != RegionClass::Zero)
    throw PreconditionError("chosen zero element is not in X^0");
  if (j_membership(alpha).in_j)
    throw PreconditionError("map has full image; only finite-image maps factor here");
  PcMap nalpha = normalize(alpha);
  Element v0 = nalpha.evaluate(zero);
  if (v0 <= zero) return detail::main_lemma_below(nalpha, zero);

  DualMap d(chain);
  PcMap alpha_d = transport_map(nalpha, d);
  Element zero_d = d.transport(zero);
  FactorizationTrace t = detail::main_lemma_below(normalize(alpha_d), zero_d);
  std::vector<PcMap> factors;
  factors.reserve(t.factors.size());
  for (const auto& g : t.factors)
    factors.push_back(normalize(transport_map(g, d, /*backward=*/true)));
  return FactorizationTrace{zero, FactorCase::AboveDual, t.i, t.k, std::move(factors)};
}

// ---------------------------------------------------------------------------
// Two-factor decomposition around a fixed pair u, v in X^0 with u -> v

inline std::pair<PcMap, PcMap> two_factor_factorize(const PcMap& alpha,
                                                    const Element& u,
                                                    const Element& v) {
  const ChainSpec& chain = alpha.chain();
  chain.require_valid(u);
  chain.require_valid(v);
  if (classify(chain, u) != RegionClass::Zero)
    throw PreconditionError("u is not in X^0");
  if (classify(chain, v) != RegionClass::Zero)
    throw PreconditionError("v is not in X^0");
  PcMap nalpha = normalize(alpha);
  if (!(nalpha.evaluate(u) == v))
    throw PreconditionError("alpha does not map u to v");

  auto clip = [&](std::vector<Piece>& out, const Cut& lo, const Cut& hi) {
    for (const auto& p : nalpha.pieces()) {
      Cut l = cut_max(p.lo, lo);
      Cut h = cut_min(p.hi, hi);
      if (compare_cuts(l, h) < 0) out.push_back({l, h, p.act});
    }
  };

  Cut below_u = canonicalize_cut(chain, Cut::below(u));
  Cut above_u = canonicalize_cut(chain, Cut::above(u));
  Cut below_v = canonicalize_cut(chain, Cut::below(v));

  if (u <= v) {
    std::vector<Piece> a1{{Cut::before_all(), below_u, Action::id()}};
    clip(a1, below_u, Cut::after_all());
    std::vector<Piece> a2;
    clip(a2, Cut::before_all(), below_u);
    a2.push_back({below_u, below_v, Action::constant(v)});
    a2.push_back({below_v, Cut::after_all(), Action::id()});
    return {normalize(PcMap(chain, std::move(a1))),
            normalize(PcMap(chain, std::move(a2)))};
  }
  std::vector<Piece> a1;
  clip(a1, Cut::before_all(), above_u);
  a1.push_back({above_u, Cut::after_all(), Action::id()});
  std::vector<Piece> a2{{Cut::before_all(), below_v, Action::id()},
                        {below_v, below_u, Action::constant(v)}};
  clip(a2, below_u, Cut::after_all());
  return {normalize(PcMap(chain, std::move(a1))),
          normalize(PcMap(chain, std::move(a2)))};
}

// ---------------------------------------------------------------------------
// Crossing pairs, generation decision, obstructions

// Some u in X^0 whose image lies in X^0, preferring identity pieces, then
// lower piece index; none exactly when the image of X^0 avoids X^0.
inline std::optional<std::pair<Element, Element>> find_crossing_pair(const PcMap& alpha) {
  const ChainSpec& chain = alpha.chain();
  Regions r = regions(chain);
  Cut zlo = r.zero.lower_cut();
  Cut zhi = r.zero.upper_cut();
  if (cut_interval_empty(chain, zlo, zhi)) return std::nullopt;
  PcMap nalpha = normalize(alpha);
  for (const auto& p : nalpha.pieces()) {
    if (!p.act.identity) continue;
    Cut lo = cut_max(p.lo, zlo);
    Cut hi = cut_min(p.hi, zhi);
    if (!cut_interval_empty(chain, lo, hi)) {
      Element u = pick_element(chain, Interval::of_cuts(lo, hi));
      return std::make_pair(u, u);
    }
  }
  for (const auto& p : nalpha.pieces()) {
    if (p.act.identity) continue;
    if (classify(chain, p.act.value) != RegionClass::Zero) continue;
    Cut lo = cut_max(p.lo, zlo);
    Cut hi = cut_min(p.hi, zhi);
    if (!cut_interval_empty(chain, lo, hi)) {
      Element u = pick_element(chain, Interval::of_cuts(lo, hi));
      return std::make_pair(u, p.act.value);
    }
  }
  return std::nullopt;
}

// The generation criterion for the full endomorphism semigroup: the maps of
// full image cardinality generate exactly when X^0 is nonempty.
inline GenerationDecision decide_generation(const ChainSpec& chain) {
  Regions r = regions(chain);
  if (interval_empty(chain, r.zero)) return {false, std::nullopt};
  return {true, pick_element(chain, r.zero)};
}

// Obstruction evidence for a finite-image map on a chain with empty X^0.
inline ObstructionWitness obstruction_witness(const PcMap& alpha) {
  const ChainSpec& chain = alpha.chain();
  if (j_membership(alpha).in_j)
    throw PreconditionError("map has full image; nothing to obstruct");
  Regions r = regions(chain);
  if (!interval_empty(chain, r.zero))
    throw PreconditionError("X^0 is nonempty; the map factors instead");
  PcMap nalpha = normalize(alpha);
  Cut mlo = r.minus.lower_cut(), mhi = r.minus.upper_cut();
  Cut plo = r.plus.lower_cut(), phi = r.plus.upper_cut();
  bool minus_nonempty = !cut_interval_empty(chain, mlo, mhi);
  bool plus_nonempty = !cut_interval_empty(chain, plo, phi);

  // region crossings
  for (const auto& p : nalpha.pieces()) {
    if (p.act.identity || compare_cuts(p.lo, p.hi) >= 0) continue;
    RegionClass c = classify(chain, p.act.value);
    if (c == RegionClass::Minus) {
      Cut lo = cut_max(p.lo, plo), hi = cut_min(p.hi, phi);
      if (!cut_interval_empty(chain, lo, hi)) {
        ObstructionWitness w;
        w.kind = ObstructionWitness::Kind::EmptyX0Crossing;
        w.xplus = pick_element(chain, Interval::of_cuts(lo, hi));
        w.ximage = p.act.value;
        w.plus_maps_down = true;
        return w;
      }
    } else if (c == RegionClass::Plus) {
      Cut lo = cut_max(p.lo, mlo), hi = cut_min(p.hi, mhi);
      if (!cut_interval_empty(chain, lo, hi)) {
        ObstructionWitness w;
        w.kind = ObstructionWitness::Kind::EmptyX0Crossing;
        w.ximage = pick_element(chain, Interval::of_cuts(lo, hi));
        w.xplus = p.act.value;
        w.plus_maps_down = false;
        return w;
      }
    }
  }

  std::vector<Element> image = detail::finite_image_values(nalpha);
  if (!minus_nonempty) {  // all-plus chain: the attained minimum obstructs
    ObstructionWitness w;
    w.kind = ObstructionWitness::Kind::BoundedImageEnd;
    w.end_is_max = false;
    w.end_value = image.front();
    return w;
  }
  if (!plus_nonempty) {  // all-minus chain: the attained maximum obstructs
    ObstructionWitness w;
    w.kind = ObstructionWitness::Kind::BoundedImageEnd;
    w.end_is_max = true;
    w.end_value = image.back();
    return w;
  }

  // Mixed chain without a crossing: one finite region forces an attained
  // image end on the infinite side (the restriction there is a product of
  // full-image maps of that side whenever the whole map is).
  bool minus_infinite = cut_interval_cardinality(chain, mlo, mhi).infinite;
  bool plus_infinite = cut_interval_cardinality(chain, plo, phi).infinite;
  if (minus_infinite && plus_infinite)
    throw DomainError(
        "no obstruction: the map splits at the region gap into two "
        "full-image factors");
  ObstructionWitness w;
  w.kind = ObstructionWitness::Kind::BoundedImageEnd;
  if (!plus_infinite) {
    std::vector<Element> in_minus;
    for (const auto& v : image)
      if (classify(chain, v) == RegionClass::Minus) in_minus.push_back(v);
    w.end_is_max = true;
    w.end_value = in_minus.back();
  } else {
    std::vector<Element> in_plus;
    for (const auto& v : image)
      if (classify(chain, v) == RegionClass::Plus) in_plus.push_back(v);
    w.end_is_max = false;
    w.end_value = in_plus.front();
  }
  return w;
}

// ---------------------------------------------------------------------------
// The dispatcher

inline FactorizationResult factorize(const PcMap& alpha) {
  FactorizationResult out;
  if (j_membership(alpha).in_j) {
    out.outcome = FactorizationResult::Outcome::Singleton;
    return out;
  }
  if (auto uv = find_crossing_pair(alpha)) {
    out.outcome = FactorizationResult::Outcome::TwoFactor;
    out.two_factor = two_factor_factorize(alpha, uv->first, uv->second);
    return out;
  }
  const ChainSpec& chain = alpha.chain();
  Regions r = regions(chain);
  if (!interval_empty(chain, r.zero)) {
    out.outcome = FactorizationResult::Outcome::Factored;
    out.trace = main_lemma_factorize(alpha, pick_element(chain, r.zero));
    return out;
  }
  // X^0 empty. A finite-image map that stays within each region on a chain
  // whose regions are both infinite still splits at the region gap.
  bool minus_inf = cut_interval_cardinality(chain, r.minus.lower_cut(),
                                            r.minus.upper_cut())
                       .infinite;
  bool plus_inf =
      cut_interval_cardinality(chain, r.plus.lower_cut(), r.plus.upper_cut())
          .infinite;
  if (minus_inf && plus_inf) {
    PcMap nalpha = normalize(alpha);
    bool crossing_free = true;
    for (const auto& p : nalpha.pieces()) {
      if (p.act.identity || compare_cuts(p.lo, p.hi) >= 0) continue;
      RegionClass c = classify(chain, p.act.value);
      Cut lo = c == RegionClass::Minus ? r.plus.lower_cut() : r.minus.lower_cut();
      Cut hi = c == RegionClass::Minus ? r.plus.upper_cut() : r.minus.upper_cut();
      if (!cut_interval_empty(chain, cut_max(p.lo, lo), cut_min(p.hi, hi)))
        crossing_free = false;
    }
    if (crossing_free) {
      Cut gap = r.minus.upper_cut();
      auto clip = [&](std::vector<Piece>& out_ps, const Cut& lo, const Cut& hi) {
        for (const auto& p : nalpha.pieces()) {
          Cut l = cut_max(p.lo, lo);
          Cut h = cut_min(p.hi, hi);
          if (compare_cuts(l, h) < 0) out_ps.push_back({l, h, p.act});
        }
      };
      std::vector<Piece> s1;
      clip(s1, Cut::before_all(), gap);
      s1.push_back({gap, Cut::after_all(), Action::id()});
      std::vector<Piece> s2{{Cut::before_all(), gap, Action::id()}};
      clip(s2, gap, Cut::after_all());
      out.outcome = FactorizationResult::Outcome::TwoFactor;
      out.two_factor = {normalize(PcMap(chain, std::move(s1))),
                        normalize(PcMap(chain, std::move(s2)))};
      return out;
    }
  }
  out.outcome = FactorizationResult::Outcome::Obstructed;
  out.witness = obstruction_witness(alpha);
  return out;
}

// ---------------------------------------------------------------------------
// End-to-end verification

struct VerificationCheck {
  bool pass = true;
  std::string detail;
};

struct VerificationReport {
  bool pass = false;
  VerificationCheck symbolic;
  bool all_in_j = false;
  std::vector<JCertificate> factor_certificates;
  VerificationCheck pointwise;
};

inline VerificationReport verify_factorization(const PcMap& alpha,
                                               const std::vector<PcMap>& factors,
                                               int window_size) {
  const ChainSpec& chain = alpha.chain();
  for (const auto& f : factors)
    if (!(f.chain() == chain))
      throw PreconditionError("factors must live on the chain of the input map");
  VerificationReport rep;
  if (factors.empty()) {
    rep.symbolic = {false, "no factors supplied"};
    rep.pointwise = {false, "no factors supplied"};
    return rep;
  }

  PcMap prod = normalize(factors.front());
  for (std::size_t i = 1; i < factors.size(); ++i) prod = compose(prod, factors[i]);
  PcMap target = normalize(alpha);
  if (prod == target) {
    rep.symbolic = {true, ""};
  } else {
    std::size_t i = 0;
    const auto& a = prod.pieces();
    const auto& b = target.pieces();
    while (i < a.size() && i < b.size() && a[i].lo == b[i].lo && a[i].hi == b[i].hi &&
           a[i].act == b[i].act)
      ++i;
    rep.symbolic = {false, "first difference at piece " + std::to_string(i)};
  }

  rep.all_in_j = true;
  for (const auto& f : factors) {
    rep.factor_certificates.push_back(j_membership(f));
    if (!rep.factor_certificates.back().in_j) rep.all_in_j = false;
  }

  rep.pointwise = {true, ""};
  for (const auto& x : enumerate_window(chain, window_size)) {
    Element lhs = x;
    for (const auto& f : factors) lhs = f.evaluate(lhs);
    Element rhs = alpha.evaluate(x);
    if (!(lhs == rhs)) {
      rep.pointwise = {false, "composition differs from the map at " +
                                  element_to_string(x)};
      break;
    }
  }

  rep.pass = rep.symbolic.pass && rep.all_in_j && rep.pointwise.pass;
  return rep;
}

}  // namespace ordchain
