#pragma once

#include <optional>
#include <utility>

#include "ordchain/chain.hpp"

namespace ordchain {

// Exact cardinality of a subset of a countable chain: a finite count or
// countably infinite. Finite(m) compares below CountablyInfinite.
struct CardinalityClass {
  bool infinite = false;
  Int count = 0;

  static CardinalityClass finite(Int n) { return {false, std::move(n)}; }
  static CardinalityClass countably_infinite() { return {true, 0}; }

  friend bool operator==(const CardinalityClass& a, const CardinalityClass& b) {
    return a.infinite == b.infinite && (a.infinite || a.count == b.count);
  }
  friend bool operator<(const CardinalityClass& a, const CardinalityClass& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.count < b.count;
  }
  friend bool operator<=(const CardinalityClass& a, const CardinalityClass& b) {
    return a < b || a == b;
  }
};

// ---------------------------------------------------------------------------
// Cuts
//
// A cut is a position strictly between, before, or after the elements of a
// chain; it splits the chain into a down-set and an up-set. Interval
// endpoints, piece boundaries and region boundaries are all cuts. A cut is
// never "at" an element, which keeps membership tests two-valued.

enum class CutKind { BeforeAll, BeforeSeg, BelowElem, AboveElem, AfterAll };

struct Cut {
  CutKind kind = CutKind::BeforeAll;
  int seg = 0;      // BeforeSeg only
  Element elem;     // BelowElem / AboveElem only

  static Cut before_all() { return {CutKind::BeforeAll, 0, {}}; }
  static Cut after_all() { return {CutKind::AfterAll, 0, {}}; }
  static Cut before_seg(int i) { return {CutKind::BeforeSeg, i, {}}; }
  static Cut below(Element e) { return {CutKind::BelowElem, 0, std::move(e)}; }
  static Cut above(Element e) { return {CutKind::AboveElem, 0, std::move(e)}; }

  // True when the cut lies strictly below element x.
  bool is_below(const Element& x) const {
    switch (kind) {
      case CutKind::BeforeAll:
        return true;
      case CutKind::AfterAll:
        return false;
      case CutKind::BeforeSeg:
        return x.seg >= seg;
      case CutKind::BelowElem:
        return elem <= x;
      case CutKind::AboveElem:
        return elem < x;
    }
    return false;
  }

  friend bool operator==(const Cut& a, const Cut& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case CutKind::BeforeSeg:
        return a.seg == b.seg;
      case CutKind::BelowElem:
      case CutKind::AboveElem:
        return a.elem == b.elem;
      default:
        return true;
    }
  }
};

// Total order on cut representations, consistent with cut positions. Two
// representations of the same position (e.g. "above 4" and "below 5" on a
// discrete segment) compare unequal here; canonicalize_cut collapses them.
inline std::strong_ordering compare_cuts(const Cut& a, const Cut& b) {
  auto rank = [](const Cut& c) {
    if (c.kind == CutKind::BeforeAll) return 0;
    if (c.kind == CutKind::AfterAll) return 2;
    return 1;
  };
  if (rank(a) != rank(b)) return rank(a) <=> rank(b);
  if (rank(a) != 1) return std::strong_ordering::equal;
  int seg_a = a.kind == CutKind::BeforeSeg ? a.seg : a.elem.seg;
  int seg_b = b.kind == CutKind::BeforeSeg ? b.seg : b.elem.seg;
  if (seg_a != seg_b) return seg_a <=> seg_b;
  bool elem_a = a.kind != CutKind::BeforeSeg;
  bool elem_b = b.kind != CutKind::BeforeSeg;
  if (elem_a != elem_b) return elem_a <=> elem_b;  // segment start sorts first
  if (!elem_a) return std::strong_ordering::equal;
  if (a.elem.coord != b.elem.coord)
    return a.elem.coord < b.elem.coord ? std::strong_ordering::less
                                       : std::strong_ordering::greater;
  int eps_a = a.kind == CutKind::AboveElem ? 1 : 0;
  int eps_b = b.kind == CutKind::AboveElem ? 1 : 0;
  return eps_a <=> eps_b;
}

inline bool cut_less(const Cut& a, const Cut& b) { return compare_cuts(a, b) < 0; }

inline Cut cut_min(const Cut& a, const Cut& b) { return cut_less(b, a) ? b : a; }
inline Cut cut_max(const Cut& a, const Cut& b) { return cut_less(a, b) ? b : a; }

// Canonical form: below-element preferred, then above-element, then the
// bare segment gap; the extremes collapse to BeforeAll / AfterAll. Distinct
// canonical cuts always have an element strictly between them.
inline Cut canonicalize_cut(const ChainSpec& chain, Cut c) {
  int n = chain.segment_count();
  if (c.kind == CutKind::BeforeSeg) {
    if (c.seg <= 0) return Cut::before_all();
    if (c.seg >= n) return Cut::after_all();
    const Segment& s = chain.segment(c.seg);
    if (s.has_min()) return Cut::below(Element(c.seg, s.min_coord()));
    const Segment& prev = chain.segment(c.seg - 1);
    if (prev.has_max()) return Cut::above(Element(c.seg - 1, prev.max_coord()));
    return c;
  }
  if (c.kind == CutKind::AboveElem) {
    if (auto succ = chain.successor(c.elem)) {
      c = Cut::below(*succ);
    } else if (chain.has_max() && c.elem == chain.max_element()) {
      return Cut::after_all();
    } else {
      return c;
    }
  }
  if (c.kind == CutKind::BelowElem) {
    if (chain.has_min() && c.elem == chain.min_element()) return Cut::before_all();
  }
  return c;
}

// ---------------------------------------------------------------------------
// Bounds and intervals (the user-facing endpoint vocabulary)

enum class BoundKind { NegInf, PosInf, At, Gap };

struct Bound {
  BoundKind kind = BoundKind::NegInf;
  Element element;       // At only
  bool inclusive = true; // At only
  int gap_seg = 0;       // Gap only: the position just before this segment

  static Bound neg_inf() { return {BoundKind::NegInf, {}, true, 0}; }
  static Bound pos_inf() { return {BoundKind::PosInf, {}, true, 0}; }
  static Bound at(Element e, bool incl) { return {BoundKind::At, std::move(e), incl, 0}; }
  static Bound gap(int seg) { return {BoundKind::Gap, {}, true, seg}; }

  friend bool operator==(const Bound& a, const Bound& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case BoundKind::At:
        return a.element == b.element && a.inclusive == b.inclusive;
      case BoundKind::Gap:
        return a.gap_seg == b.gap_seg;
      default:
        return true;
    }
  }
};

enum class BoundSide { Lower, Upper };

inline Cut bound_to_cut(const Bound& b, BoundSide side) {
  switch (b.kind) {
    case BoundKind::NegInf:
      return Cut::before_all();
    case BoundKind::PosInf:
      return Cut::after_all();
    case BoundKind::Gap:
      return Cut::before_seg(b.gap_seg);
    case BoundKind::At:
      if (side == BoundSide::Lower)
        return b.inclusive ? Cut::below(b.element) : Cut::above(b.element);
      return b.inclusive ? Cut::above(b.element) : Cut::below(b.element);
  }
  return Cut::before_all();
}

inline Bound cut_to_bound(const Cut& c, BoundSide side) {
  switch (c.kind) {
    case CutKind::BeforeAll:
      return Bound::neg_inf();
    case CutKind::AfterAll:
      return Bound::pos_inf();
    case CutKind::BeforeSeg:
      return Bound::gap(c.seg);
    case CutKind::BelowElem:
      return Bound::at(c.elem, side == BoundSide::Lower);
    case CutKind::AboveElem:
      return Bound::at(c.elem, side == BoundSide::Upper);
  }
  return Bound::neg_inf();
}

struct Interval {
  Bound lower = Bound::neg_inf();
  Bound upper = Bound::pos_inf();

  static Interval whole() { return {Bound::neg_inf(), Bound::pos_inf()}; }
  static Interval of_cuts(const Cut& lo, const Cut& hi) {
    return {cut_to_bound(lo, BoundSide::Lower), cut_to_bound(hi, BoundSide::Upper)};
  }

  Cut lower_cut() const { return bound_to_cut(lower, BoundSide::Lower); }
  Cut upper_cut() const { return bound_to_cut(upper, BoundSide::Upper); }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lower == b.lower && a.upper == b.upper;
  }
};

inline void require_valid_cut(const ChainSpec& chain, const Cut& c) {
  if (c.kind == CutKind::BelowElem || c.kind == CutKind::AboveElem)
    chain.require_valid(c.elem);
  if (c.kind == CutKind::BeforeSeg && (c.seg < 0 || c.seg > chain.segment_count()))
    throw AddressError("segment cut outside the chain");
}

inline void require_valid_bound(const ChainSpec& chain, const Bound& b) {
  if (b.kind == BoundKind::At) chain.require_valid(b.element);
  if (b.kind == BoundKind::Gap && (b.gap_seg < 0 || b.gap_seg > chain.segment_count()))
    throw AddressError("gap bound outside the chain's segment range");
}

inline void require_valid_interval(const ChainSpec& chain, const Interval& iv) {
  require_valid_bound(chain, iv.lower);
  require_valid_bound(chain, iv.upper);
}

inline bool interval_contains(const ChainSpec& chain, const Interval& iv,
                              const Element& x) {
  chain.require_valid(x);
  return iv.lower_cut().is_below(x) && !iv.upper_cut().is_below(x);
}

// ---------------------------------------------------------------------------
// Per-segment restriction of a cut pair

namespace detail {

struct CoordBound {
  Rat coord;
  bool inclusive;
};

// Constraint the cuts induce on one segment's coordinates; nullopt entries
// mean "unconstrained on that side", absent value means the segment is
// excluded entirely.
struct SegmentRange {
  bool excluded = false;
  std::optional<CoordBound> lower;  // x >(=) coord
  std::optional<CoordBound> upper;  // x <(=) coord
};

inline SegmentRange restrict_to_segment(const Cut& lo, const Cut& hi, int s) {
  SegmentRange r;
  switch (lo.kind) {
    case CutKind::BeforeAll:
      break;
    case CutKind::AfterAll:
      r.excluded = true;
      return r;
    case CutKind::BeforeSeg:
      if (lo.seg > s) {
        r.excluded = true;
        return r;
      }
      break;
    case CutKind::BelowElem:
    case CutKind::AboveElem:
      if (lo.elem.seg > s) {
        r.excluded = true;
        return r;
      }
      if (lo.elem.seg == s)
        r.lower = CoordBound{lo.elem.coord, lo.kind == CutKind::BelowElem};
      break;
  }
  switch (hi.kind) {
    case CutKind::AfterAll:
      break;
    case CutKind::BeforeAll:
      r.excluded = true;
      return r;
    case CutKind::BeforeSeg:
      if (hi.seg <= s) {
        r.excluded = true;
        return r;
      }
      break;
    case CutKind::BelowElem:
    case CutKind::AboveElem:
      if (hi.elem.seg < s) {
        r.excluded = true;
        return r;
      }
      if (hi.elem.seg == s)
        r.upper = CoordBound{hi.elem.coord, hi.kind == CutKind::AboveElem};
      break;
  }
  return r;
}

// Integer range [lo, hi] within a discrete segment's domain; unbounded ends
// are encoded as nullopt.
struct IntRange {
  bool empty = false;
  std::optional<Int> lo, hi;
};

inline IntRange discrete_range(const Segment& seg, const SegmentRange& r) {
  IntRange out;
  if (r.excluded) {
    out.empty = true;
    return out;
  }
  std::optional<Int> lo, hi;
  if (r.lower) {
    Int c = numerator(r.lower->coord);  // integer coordinate
    lo = r.lower->inclusive ? c : c + 1;
  }
  if (r.upper) {
    Int c = numerator(r.upper->coord);
    hi = r.upper->inclusive ? c : c - 1;
  }
  // clip to the segment's coordinate domain
  auto raise_lo = [&](const Int& v) { lo = lo ? std::max(*lo, v) : v; };
  auto drop_hi = [&](const Int& v) { hi = hi ? std::min(*hi, v) : v; };
  switch (seg.kind) {
    case SegmentKind::Fin:
      raise_lo(0);
      drop_hi(Int(seg.size - 1));
      break;
    case SegmentKind::OmegaUp:
      raise_lo(0);
      break;
    case SegmentKind::OmegaDown:
      drop_hi(0);
      break;
    default:
      break;
  }
  if (lo && hi && *lo > *hi) out.empty = true;
  out.lo = lo;
  out.hi = hi;
  return out;
}

inline CardinalityClass count_in_segment(const Segment& seg, const SegmentRange& r) {
  if (r.excluded) return CardinalityClass::finite(0);
  if (seg.kind == SegmentKind::RatLine) {
    if (!r.lower || !r.upper) return CardinalityClass::countably_infinite();
    const Rat& a = r.lower->coord;
    const Rat& b = r.upper->coord;
    if (a < b) return CardinalityClass::countably_infinite();
    if (a == b && r.lower->inclusive && r.upper->inclusive)
      return CardinalityClass::finite(1);
    return CardinalityClass::finite(0);
  }
  IntRange ir = discrete_range(seg, r);
  if (ir.empty) return CardinalityClass::finite(0);
  if (!ir.lo || !ir.hi) return CardinalityClass::countably_infinite();
  return CardinalityClass::finite(*ir.hi - *ir.lo + 1);
}

}  // namespace detail

inline CardinalityClass cut_interval_cardinality(const ChainSpec& chain, const Cut& lo,
                                                 const Cut& hi) {
  Cut l = canonicalize_cut(chain, lo);
  Cut h = canonicalize_cut(chain, hi);
  if (compare_cuts(l, h) >= 0) return CardinalityClass::finite(0);
  Int total = 0;
  for (int s = 0; s < chain.segment_count(); ++s) {
    auto r = detail::restrict_to_segment(l, h, s);
    auto c = detail::count_in_segment(chain.segment(s), r);
    if (c.infinite) return CardinalityClass::countably_infinite();
    total += c.count;
  }
  return CardinalityClass::finite(total);
}

inline CardinalityClass interval_cardinality(const ChainSpec& chain,
                                             const Interval& iv) {
  require_valid_interval(chain, iv);
  return cut_interval_cardinality(chain, iv.lower_cut(), iv.upper_cut());
}

inline bool cut_interval_empty(const ChainSpec& chain, const Cut& lo, const Cut& hi) {
  return compare_cuts(canonicalize_cut(chain, lo), canonicalize_cut(chain, hi)) >= 0;
}

inline bool interval_empty(const ChainSpec& chain, const Interval& iv) {
  return cut_interval_empty(chain, iv.lower_cut(), iv.upper_cut());
}

// ---------------------------------------------------------------------------
// Down-sets, up-sets, the X^- / X^0 / X^+ classification

enum class RegionClass { Minus, Zero, Plus };

inline CardinalityClass downset_cardinality(const ChainSpec& chain, const Element& x) {
  chain.require_valid(x);
  return cut_interval_cardinality(chain, Cut::before_all(), Cut::above(x));
}

inline CardinalityClass upset_cardinality(const ChainSpec& chain, const Element& x) {
  chain.require_valid(x);
  return cut_interval_cardinality(chain, Cut::below(x), Cut::after_all());
}

// For a countable chain |(x]| < |X| iff (x] is finite, so the classification
// reduces to two finiteness tests.
inline RegionClass classify(const ChainSpec& chain, const Element& x) {
  if (!downset_cardinality(chain, x).infinite) return RegionClass::Minus;
  if (!upset_cardinality(chain, x).infinite) return RegionClass::Plus;
  return RegionClass::Zero;
}

struct Regions {
  Interval minus;
  Interval zero;
  Interval plus;
};

// The three-interval decomposition X = X^- + X^0 + X^+. The boundaries are
// determined by the first and last infinite segments.
inline Regions regions(const ChainSpec& chain) {
  int n = chain.segment_count();
  int first_inf = 0, last_inf = n - 1;
  while (!chain.segment(first_inf).is_infinite()) ++first_inf;
  while (!chain.segment(last_inf).is_infinite()) --last_inf;
  int minus_end = first_inf +
                  (chain.segment(first_inf).kind == SegmentKind::OmegaUp ? 1 : 0);
  int plus_start = last_inf +
                   (chain.segment(last_inf).kind == SegmentKind::OmegaDown ? 0 : 1);
  Cut a = canonicalize_cut(chain, Cut::before_seg(minus_end));
  Cut b = canonicalize_cut(chain, Cut::before_seg(plus_start));
  return Regions{Interval::of_cuts(Cut::before_all(), a), Interval::of_cuts(a, b),
                 Interval::of_cuts(b, Cut::after_all())};
}

// ---------------------------------------------------------------------------
// strictly_above / strictly_below

// Bound describing {x : x > s pointwise} as a lower bound. The inclusive
// flag of an At endpoint flips; PosInf marks the empty region above an
// unbounded set.
inline Bound strictly_above(const ChainSpec& chain, const Interval& s) {
  require_valid_interval(chain, s);
  if (interval_empty(chain, s)) return Bound::neg_inf();
  Bound b = s.upper;
  if (b.kind == BoundKind::At) b.inclusive = !b.inclusive;
  if (b.kind == BoundKind::NegInf) b = Bound::neg_inf();
  return b;
}

inline Bound strictly_below(const ChainSpec& chain, const Interval& s) {
  require_valid_interval(chain, s);
  if (interval_empty(chain, s)) return Bound::pos_inf();
  Bound b = s.lower;
  if (b.kind == BoundKind::At) b.inclusive = !b.inclusive;
  return b;
}

// ---------------------------------------------------------------------------
// Canonical representative of a nonempty interval

namespace detail {

// Least valid denominator for num/den in the range, scanning up from the
// exact lower limit; nullopt when no reduced fraction with this numerator
// fits.
inline std::optional<Int> min_denominator(const Int& num, const SegmentRange& r) {
  Int den_lo = 1;
  std::optional<Int> den_hi;
  auto apply = [&](const CoordBound& cb, bool is_value_upper) {
    // constraint: num/den <= cb.coord (value upper) or num/den >= cb.coord
    // (value lower), with strictness from cb.inclusive.
    const Rat& q = cb.coord;
    Int qn = numerator(q), qd = denominator(q);
    // num/den vs qn/qd  <=>  num*qd vs qn*den  (den, qd > 0)
    // Solve for den with num sign handled by case analysis.
    bool upper = is_value_upper;
    if (num > 0) {
      // value decreases as den grows
      if (upper) {
        // num/den <= q  => den >= num*qd/qn  (requires q > 0, else impossible)
        if (qn <= 0) { den_lo = -1; return; }  // impossible marker
        Rat lim = make_rat(num * qd, qn);
        Int c = ceil_rat(lim);
        if (!cb.inclusive && make_rat(num * qd, qn) == c) c += 1;
        den_lo = std::max(den_lo, c);
      } else {
        // num/den >= q: q <= 0 => always true; else den <= num*qd/qn
        if (qn > 0) {
          Rat lim = make_rat(num * qd, qn);
          Int f = floor_rat(lim);
          if (!cb.inclusive && make_rat(num * qd, qn) == f) f -= 1;
          den_hi = den_hi ? std::min(*den_hi, f) : f;
        }
      }
    } else {  // num < 0: value increases as den grows
      if (upper) {
        // num/den <= q: q >= 0 => always; else den <= num*qd/qn (both neg)
        if (qn < 0) {
          Rat lim = make_rat(num * qd, qn);
          Int f = floor_rat(lim);
          if (!cb.inclusive && make_rat(num * qd, qn) == f) f -= 1;
          den_hi = den_hi ? std::min(*den_hi, f) : f;
        }
      } else {
        // num/den >= q  => den >= num*qd/qn (requires q < 0, else impossible)
        if (qn >= 0) { den_lo = -1; return; }
        Rat lim = make_rat(num * qd, qn);
        Int c = ceil_rat(lim);
        if (!cb.inclusive && make_rat(num * qd, qn) == c) c += 1;
        den_lo = std::max(den_lo, c);
      }
    }
  };
  if (r.upper) apply(*r.upper, true);
  if (den_lo < 0) return std::nullopt;
  if (r.lower) apply(*r.lower, false);
  if (den_lo < 0) return std::nullopt;
  if (den_lo < 1) den_lo = 1;
  for (Int d = den_lo; !den_hi || d <= *den_hi; ++d) {
    if (gcd(abs(num), d) == 1) return d;
    if (den_hi && d - den_lo > 64) break;  // gcd gaps are short; stay bounded
  }
  return std::nullopt;
}

inline bool coord_in_range(const Rat& c, const SegmentRange& r) {
  if (r.excluded) return false;
  if (r.lower && (c < r.lower->coord || (c == r.lower->coord && !r.lower->inclusive)))
    return false;
  if (r.upper && (c > r.upper->coord || (c == r.upper->coord && !r.upper->inclusive)))
    return false;
  return true;
}

// Smallest |numerator|, then smallest denominator, ties toward the
// non-negative value.
inline Rat pick_rational(const SegmentRange& r) {
  if (coord_in_range(Rat(0), r)) return Rat(0);
  for (Int n = 1;; ++n) {
    auto dp = min_denominator(n, r);
    auto dm = min_denominator(-n, r);
    if (dp && (!dm || *dp <= *dm)) return Rat(n, *dp);
    if (dm) return Rat(-n, *dm);
  }
}

inline Rat pick_discrete(const Segment& seg, const SegmentRange& r) {
  IntRange ir = discrete_range(seg, r);
  bool lo0 = !ir.lo || *ir.lo <= 0;
  bool hi0 = !ir.hi || *ir.hi >= 0;
  if (lo0 && hi0) return Rat(0);
  if (!lo0) return Rat(*ir.lo);
  return Rat(*ir.hi);
}

}  // namespace detail

// Deterministic representative: least-index segment meeting the interval,
// then the coordinate with the smallest absolute numerator and denominator,
// preferring non-negative on ties.
inline Element pick_element(const ChainSpec& chain, const Interval& iv) {
  require_valid_interval(chain, iv);
  Cut lo = canonicalize_cut(chain, iv.lower_cut());
  Cut hi = canonicalize_cut(chain, iv.upper_cut());
  if (compare_cuts(lo, hi) >= 0) throw EmptinessError("pick_element on empty interval");
  for (int s = 0; s < chain.segment_count(); ++s) {
    auto r = detail::restrict_to_segment(lo, hi, s);
    auto c = detail::count_in_segment(chain.segment(s), r);
    if (!c.infinite && c.count == 0) continue;
    if (chain.segment(s).kind == SegmentKind::RatLine)
      return Element(s, detail::pick_rational(r));
    return Element(s, detail::pick_discrete(chain.segment(s), r));
  }
  throw EmptinessError("pick_element on empty interval");
}

}  // namespace ordchain
