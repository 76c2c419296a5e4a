#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "ordchain/chain.hpp"
#include "ordchain/interval.hpp"

namespace ordchain {

// Piece behavior: identity on the piece's interval, or a fixed value.
struct Action {
  bool identity = true;
  Element value;  // Constant only

  static Action id() { return {true, {}}; }
  static Action constant(Element v) { return {false, std::move(v)}; }

  friend bool operator==(const Action& a, const Action& b) {
    return a.identity == b.identity && (a.identity || a.value == b.value);
  }
};

struct Piece {
  Cut lo, hi;
  Action act;
};

struct BoundPiece {
  Interval interval;
  Action act;
};

// An order endomorphism represented as finitely many interval pieces, each
// acting as the identity or as a constant. The pieces tile the whole chain;
// cuts are kept canonical. Non-monotone piece assignments are representable
// (is_monotone reports a witness); the library's own constructions only
// produce monotone maps.
class PcMap {
 public:
  PcMap(ChainSpec chain, std::vector<Piece> pieces)
      : chain_(std::move(chain)), pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw ConstructionError("map needs at least one piece");
    for (auto& p : pieces_) {
      require_valid_cut(chain_, p.lo);
      require_valid_cut(chain_, p.hi);
      p.lo = canonicalize_cut(chain_, p.lo);
      p.hi = canonicalize_cut(chain_, p.hi);
      if (!p.act.identity) chain_.require_valid(p.act.value);
    }
    if (!(pieces_.front().lo == Cut::before_all()) ||
        !(pieces_.back().hi == Cut::after_all()))
      throw ConstructionError("pieces must cover the whole chain");
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (compare_cuts(pieces_[i].lo, pieces_[i].hi) > 0)
        throw ConstructionError("piece bounds out of order");
      if (i + 1 < pieces_.size() && !(pieces_[i].hi == pieces_[i + 1].lo))
        throw ConstructionError("pieces must tile the chain without gaps");
    }
  }

  static PcMap from_bound_pieces(ChainSpec chain, const std::vector<BoundPiece>& bps) {
    std::vector<Piece> ps;
    ps.reserve(bps.size());
    for (const auto& bp : bps) {
      require_valid_interval(chain, bp.interval);
      ps.push_back({bp.interval.lower_cut(), bp.interval.upper_cut(), bp.act});
    }
    return PcMap(std::move(chain), std::move(ps));
  }

  static PcMap identity(ChainSpec chain) {
    std::vector<Piece> ps{{Cut::before_all(), Cut::after_all(), Action::id()}};
    return PcMap(std::move(chain), std::move(ps));
  }

  static PcMap constant(ChainSpec chain, Element v) {
    std::vector<Piece> ps{
        {Cut::before_all(), Cut::after_all(), Action::constant(std::move(v))}};
    return PcMap(std::move(chain), std::move(ps));
  }

  const ChainSpec& chain() const { return chain_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  std::vector<BoundPiece> bound_pieces() const {
    std::vector<BoundPiece> out;
    for (const auto& p : pieces_)
      out.push_back({Interval::of_cuts(p.lo, p.hi), p.act});
    return out;
  }

  const Piece& piece_containing(const Element& x) const {
    // first piece whose upper cut is not below x
    std::size_t lo = 0, hi = pieces_.size() - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (pieces_[mid].hi.is_below(x))
        lo = mid + 1;
      else
        hi = mid;
    }
    return pieces_[lo];
  }

  Element evaluate(const Element& x) const {
    chain_.require_valid(x);
    const Piece& p = piece_containing(x);
    return p.act.identity ? x : p.act.value;
  }

  friend bool operator==(const PcMap& a, const PcMap& b) {
    if (!(a.chain_ == b.chain_) || a.pieces_.size() != b.pieces_.size()) return false;
    for (std::size_t i = 0; i < a.pieces_.size(); ++i) {
      if (!(a.pieces_[i].lo == b.pieces_[i].lo) ||
          !(a.pieces_[i].hi == b.pieces_[i].hi) ||
          !(a.pieces_[i].act == b.pieces_[i].act))
        return false;
    }
    return true;
  }

 private:
  ChainSpec chain_;
  std::vector<Piece> pieces_;
};

// ---------------------------------------------------------------------------
// Normalization
//
// Canonical form: the coarsest piece partition realizing the same function,
// with a fixed rule for ambiguous boundary elements (an element that could
// extend either neighbour attaches to the identity side). Structural
// equality of normalized forms then coincides with pointwise equality.

namespace detail {

struct PieceTraits {
  bool id_ok = false;
  bool const_ok = false;
  Element const_value;
};

inline PieceTraits piece_traits(const ChainSpec& chain, const Piece& p) {
  PieceTraits t;
  auto card = cut_interval_cardinality(chain, p.lo, p.hi);
  bool single = !card.infinite && card.count == 1;
  if (p.act.identity) {
    t.id_ok = true;
    if (single) {
      t.const_ok = true;
      t.const_value = pick_element(chain, Interval::of_cuts(p.lo, p.hi));
    }
  } else {
    t.const_ok = true;
    t.const_value = p.act.value;
    if (single) {
      Element e = pick_element(chain, Interval::of_cuts(p.lo, p.hi));
      if (e == p.act.value) t.id_ok = true;
    }
  }
  return t;
}

}  // namespace detail

inline PcMap normalize(const PcMap& f) {
  const ChainSpec& chain = f.chain();
  // drop empty pieces
  std::vector<Piece> ps;
  for (const auto& p : f.pieces())
    if (compare_cuts(p.lo, p.hi) < 0) ps.push_back(p);

  // greedy maximal grouping of compatible pieces, identity preferred on ties
  std::vector<Piece> groups;
  std::size_t i = 0;
  while (i < ps.size()) {
    auto t = detail::piece_traits(chain, ps[i]);
    bool id_alive = t.id_ok;
    bool const_alive = t.const_ok;
    Element const_value = t.const_value;
    std::size_t j = i + 1;
    for (; j < ps.size(); ++j) {
      auto u = detail::piece_traits(chain, ps[j]);
      bool id2 = id_alive && u.id_ok;
      bool c2 = const_alive && u.const_ok && u.const_value == const_value;
      if (!id2 && !c2) break;
      id_alive = id2;
      const_alive = c2;
    }
    Action act = id_alive ? Action::id() : Action::constant(const_value);
    groups.push_back({ps[i].lo, ps[j - 1].hi, act});
    i = j;
  }

  // ambiguous boundary elements attach to the identity side
  for (std::size_t k = 0; k + 1 < groups.size(); ++k) {
    Piece& a = groups[k];
    Piece& b = groups[k + 1];
    if (a.act.identity && !b.act.identity) {
      const Element& v = b.act.value;
      if (b.lo.is_below(v) && !b.hi.is_below(v) &&
          cut_interval_empty(chain, b.lo, Cut::below(v))) {
        Cut c = canonicalize_cut(chain, Cut::above(v));
        a.hi = c;
        b.lo = c;
      }
    } else if (!a.act.identity && b.act.identity) {
      const Element& v = a.act.value;
      if (a.lo.is_below(v) && !a.hi.is_below(v) &&
          cut_interval_empty(chain, Cut::above(v), a.hi)) {
        Cut c = canonicalize_cut(chain, Cut::below(v));
        a.hi = c;
        b.lo = c;
      }
    }
  }

  return PcMap(chain, std::move(groups));
}

// ---------------------------------------------------------------------------
// Monotonicity

struct MonotoneResult {
  bool pass = true;
  Element x, y;  // witness with x <= y and f(x) > f(y) when !pass
};

// Both actions are internally monotone, so order preservation reduces to
// checks across consecutive nonempty pieces.
inline MonotoneResult is_monotone(const PcMap& f) {
  const ChainSpec& chain = f.chain();
  std::vector<const Piece*> ps;
  for (const auto& p : f.pieces())
    if (compare_cuts(p.lo, p.hi) < 0) ps.push_back(&p);
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
    const Piece& p = *ps[i];
    const Piece& q = *ps[i + 1];
    auto pick = [&](const Cut& lo, const Cut& hi) {
      return pick_element(chain, Interval::of_cuts(lo, hi));
    };
    if (!p.act.identity && !q.act.identity) {
      if (p.act.value > q.act.value)
        return {false, pick(p.lo, p.hi), pick(q.lo, q.hi)};
    } else if (!p.act.identity && q.act.identity) {
      // some y in q with y < value?
      Cut cap = cut_min(q.hi, Cut::below(p.act.value));
      if (!cut_interval_empty(chain, q.lo, cap))
        return {false, pick(p.lo, p.hi), pick(q.lo, cap)};
    } else if (p.act.identity && !q.act.identity) {
      // some x in p with x > value?
      Cut base = cut_max(p.lo, Cut::above(q.act.value));
      if (!cut_interval_empty(chain, base, p.hi))
        return {false, pick(base, p.hi), pick(q.lo, q.hi)};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Composition (left to right: x -> g(f(x)))

inline PcMap compose(const PcMap& f, const PcMap& g) {
  if (!(f.chain() == g.chain()))
    throw PreconditionError("compose requires maps over the same chain");
  const ChainSpec& chain = f.chain();
  std::vector<Piece> out;
  for (const auto& p : f.pieces()) {
    if (compare_cuts(p.lo, p.hi) >= 0) continue;
    if (!p.act.identity) {
      out.push_back({p.lo, p.hi, Action::constant(g.evaluate(p.act.value))});
      continue;
    }
    for (const auto& q : g.pieces()) {
      Cut lo = cut_max(p.lo, q.lo);
      Cut hi = cut_min(p.hi, q.hi);
      if (compare_cuts(lo, hi) < 0) out.push_back({lo, hi, q.act});
    }
  }
  return normalize(PcMap(chain, std::move(out)));
}

// ---------------------------------------------------------------------------
// Image analysis and J membership

// Convex preimage of an image value of a monotone map.
inline Interval preimage_interval(const PcMap& f, const Element& v) {
  const ChainSpec& chain = f.chain();
  PcMap nf = normalize(f);
  std::optional<Cut> lo, hi;
  for (const auto& p : nf.pieces()) {
    if (compare_cuts(p.lo, p.hi) >= 0) continue;
    bool realizes;
    Cut plo = p.lo, phi = p.hi;
    if (p.act.identity) {
      realizes = p.lo.is_below(v) && !p.hi.is_below(v);
      if (realizes) {
        plo = canonicalize_cut(chain, Cut::below(v));
        phi = canonicalize_cut(chain, Cut::above(v));
      }
    } else {
      realizes = p.act.value == v;
    }
    if (!realizes) continue;
    if (!lo) lo = plo;
    hi = phi;
  }
  if (!lo) throw PreconditionError("value " + element_to_string(v) + " not in image");
  return Interval::of_cuts(*lo, *hi);
}

struct ImageSummary {
  std::vector<Interval> identity_intervals;
  std::vector<Element> constant_values;  // values not inside an identity interval
  CardinalityClass cardinality = CardinalityClass::finite(0);
};

inline ImageSummary image_summary(const PcMap& f) {
  const ChainSpec& chain = f.chain();
  PcMap nf = normalize(f);
  ImageSummary out;
  std::vector<std::pair<Cut, Cut>> id_cuts;
  for (const auto& p : nf.pieces()) {
    if (p.act.identity) {
      out.identity_intervals.push_back(Interval::of_cuts(p.lo, p.hi));
      id_cuts.emplace_back(p.lo, p.hi);
    }
  }
  bool infinite = false;
  Int count = 0;
  for (const auto& [lo, hi] : id_cuts) {
    auto c = cut_interval_cardinality(chain, lo, hi);
    if (c.infinite) infinite = true;
    count += c.count;
  }
  for (const auto& p : nf.pieces()) {
    if (p.act.identity) continue;
    const Element& v = p.act.value;
    bool inside_id = false;
    for (const auto& [lo, hi] : id_cuts)
      if (lo.is_below(v) && !hi.is_below(v)) inside_id = true;
    if (inside_id) continue;
    if (std::find(out.constant_values.begin(), out.constant_values.end(), v) ==
        out.constant_values.end())
      out.constant_values.push_back(v);
  }
  std::sort(out.constant_values.begin(), out.constant_values.end());
  count += Int(out.constant_values.size());
  out.cardinality = infinite ? CardinalityClass::countably_infinite()
                             : CardinalityClass::finite(count);
  return out;
}

struct JCertificate {
  bool in_j = false;
  Interval witness;                  // infinite identity interval when in_j
  CardinalityClass image_cardinality;  // exact finite count when !in_j
};

// For this map class the image is infinite exactly when some identity piece
// spans an infinite interval.
inline JCertificate j_membership(const PcMap& f) {
  const ChainSpec& chain = f.chain();
  PcMap nf = normalize(f);
  for (const auto& p : nf.pieces()) {
    if (!p.act.identity) continue;
    if (cut_interval_cardinality(chain, p.lo, p.hi).infinite)
      return {true, Interval::of_cuts(p.lo, p.hi),
              CardinalityClass::countably_infinite()};
  }
  return {false, Interval{}, image_summary(nf).cardinality};
}

// ---------------------------------------------------------------------------
// Step maps (the finite-image staircase construction)

inline PcMap step_map_from_image(const ChainSpec& chain,
                                 const std::vector<Element>& values,
                                 const std::vector<Bound>& cuts) {
  if (values.empty()) throw ConstructionError("step map needs at least one value");
  for (const auto& v : values) chain.require_valid(v);
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    if (!(values[i] < values[i + 1]))
      throw ConstructionError("step map values must be strictly increasing");
  if (cuts.size() + 1 != values.size())
    throw ConstructionError("step map needs exactly one cut between values");
  std::vector<Cut> cs;
  for (const auto& b : cuts) {
    if (b.kind != BoundKind::At)
      throw ConstructionError("step map cuts must be At-bounds");
    chain.require_valid(b.element);
    cs.push_back(canonicalize_cut(chain, bound_to_cut(b, BoundSide::Upper)));
  }
  for (std::size_t i = 0; i + 1 < cs.size(); ++i)
    if (compare_cuts(cs[i], cs[i + 1]) >= 0)
      throw ConstructionError("step map cuts must be strictly increasing");
  std::vector<Piece> ps;
  Cut lo = Cut::before_all();
  for (std::size_t i = 0; i < values.size(); ++i) {
    Cut hi = i < cs.size() ? cs[i] : Cut::after_all();
    if (cut_interval_empty(chain, lo, hi))
      throw ConstructionError("step map piece " + std::to_string(i) + " is empty");
    ps.push_back({lo, hi, Action::constant(values[i])});
    lo = hi;
  }
  return PcMap(chain, std::move(ps));
}

// ---------------------------------------------------------------------------
// The finite-image bijection on the omega chain

inline void require_omega_chain(const ChainSpec& chain) {
  if (chain.segment_count() != 1 ||
      chain.segment(0).kind != SegmentKind::OmegaUp)
    throw DomainError("operation requires the single-omega chain");
}

struct JfSubset {
  std::vector<Element> image;
  std::vector<Element> breakpoints;  // min preimage of image[1..]
};

inline JfSubset jf_to_subset(const PcMap& f) {
  require_omega_chain(f.chain());
  const ChainSpec& chain = f.chain();
  PcMap nf = normalize(f);
  if (j_membership(nf).in_j)
    throw PreconditionError("map has infinite image, not in the finite-image class");
  // walk pieces in order collecting image values with their least preimage
  JfSubset out;
  auto push = [&](const Element& v, const Element& min_pre) {
    if (!out.image.empty() && out.image.back() == v) return;
    out.image.push_back(v);
    if (out.image.size() > 1) out.breakpoints.push_back(min_pre);
  };
  auto first_element = [&](const Cut& lo) {
    // canonical cuts on the omega chain are BeforeAll or BelowElem
    return lo.kind == CutKind::BeforeAll ? Element(0, 0) : lo.elem;
  };
  for (const auto& p : nf.pieces()) {
    if (compare_cuts(p.lo, p.hi) >= 0) continue;
    if (!p.act.identity) {
      push(p.act.value, first_element(p.lo));
    } else {
      // every element of a (necessarily finite) identity piece is its own
      // image point and its own least preimage
      for (Element e = first_element(p.lo); !p.hi.is_below(e);
           e = *chain.successor(e))
        push(e, e);
    }
  }
  return out;
}

inline PcMap subset_to_jf(const ChainSpec& chain, const std::vector<Element>& image,
                          const std::vector<Element>& breakpoints) {
  require_omega_chain(chain);
  if (image.empty()) throw ConstructionError("image must be nonempty");
  if (breakpoints.size() + 1 != image.size())
    throw ConstructionError("need exactly |image| - 1 breakpoints");
  for (const auto& v : image) chain.require_valid(v);
  for (std::size_t i = 0; i + 1 < image.size(); ++i)
    if (!(image[i] < image[i + 1]))
      throw ConstructionError("image must be strictly increasing");
  for (const auto& b : breakpoints) {
    chain.require_valid(b);
    if (b.coord < 1)
      throw ConstructionError("breakpoints must exceed the chain minimum");
  }
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (!(breakpoints[i] < breakpoints[i + 1]))
      throw ConstructionError("breakpoints must be strictly increasing");
  std::vector<Piece> ps;
  Cut lo = Cut::before_all();
  for (std::size_t i = 0; i < image.size(); ++i) {
    Cut hi = i < breakpoints.size() ? Cut::below(breakpoints[i]) : Cut::after_all();
    ps.push_back({lo, hi, Action::constant(image[i])});
    lo = hi;
  }
  return PcMap(chain, std::move(ps));
}

// ---------------------------------------------------------------------------
// Transport through the order dual

inline Cut transport_cut(const DualMap& d, const Cut& c, bool backward) {
  auto t = [&](const Element& e) {
    return backward ? d.transport_back(e) : d.transport(e);
  };
  int n = d.dual_chain().segment_count();
  switch (c.kind) {
    case CutKind::BeforeAll:
      return Cut::after_all();
    case CutKind::AfterAll:
      return Cut::before_all();
    case CutKind::BeforeSeg:
      return Cut::before_seg(n - c.seg);
    case CutKind::BelowElem:
      return Cut::above(t(c.elem));
    case CutKind::AboveElem:
      return Cut::below(t(c.elem));
  }
  return Cut::before_all();
}

// Conjugation by the order-reversing transport. Conjugation is an
// automorphism of the composition monoid, so transported factor lists
// compose in their original order.
inline PcMap transport_map(const PcMap& f, const DualMap& d, bool backward = false) {
  const ChainSpec& target = backward ? d.orig_chain() : d.dual_chain();
  auto t = [&](const Element& e) {
    return backward ? d.transport_back(e) : d.transport(e);
  };
  std::vector<Piece> ps;
  const auto& in = f.pieces();
  for (auto it = in.rbegin(); it != in.rend(); ++it) {
    Cut lo = transport_cut(d, it->hi, backward);
    Cut hi = transport_cut(d, it->lo, backward);
    Action act = it->act.identity ? Action::id() : Action::constant(t(it->act.value));
    ps.push_back({lo, hi, act});
  }
  return PcMap(target, std::move(ps));
}

}  // namespace ordchain
