#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordchain/rational.hpp"

namespace ordchain {

// A countable chain is a finite ordinal sum of primitive segments. Five
// segment order types are representable: a finite chain, omega (the
// naturals), omega* (the negative integers), zeta (all integers) and eta
// (the rationals).
enum class SegmentKind { Fin, OmegaUp, OmegaDown, IntLine, RatLine };

struct Segment {
  SegmentKind kind;
  std::int64_t size = 0;  // meaningful for Fin only, >= 1

  static Segment fin(std::int64_t n) { return {SegmentKind::Fin, n}; }
  static Segment omega_up() { return {SegmentKind::OmegaUp, 0}; }
  static Segment omega_down() { return {SegmentKind::OmegaDown, 0}; }
  static Segment int_line() { return {SegmentKind::IntLine, 0}; }
  static Segment rat_line() { return {SegmentKind::RatLine, 0}; }

  bool is_infinite() const { return kind != SegmentKind::Fin; }
  bool is_discrete() const { return kind != SegmentKind::RatLine; }

  bool has_min() const {
    return kind == SegmentKind::Fin || kind == SegmentKind::OmegaUp;
  }
  bool has_max() const {
    return kind == SegmentKind::Fin || kind == SegmentKind::OmegaDown;
  }
  Rat min_coord() const { return Rat(0); }
  Rat max_coord() const { return kind == SegmentKind::Fin ? Rat(size - 1) : Rat(0); }

  // Finiteness of {c' in segment : c' <= c} for an in-domain coordinate c.
  bool downset_finite() const { return has_min(); }
  bool upset_finite() const { return has_max(); }

  bool in_domain(const Rat& c) const {
    switch (kind) {
      case SegmentKind::Fin:
        return is_integer(c) && c >= 0 && c <= size - 1;
      case SegmentKind::OmegaUp:
        return is_integer(c) && c >= 0;
      case SegmentKind::OmegaDown:
        return is_integer(c) && c <= 0;
      case SegmentKind::IntLine:
        return is_integer(c);
      case SegmentKind::RatLine:
        return true;
    }
    return false;
  }

  friend bool operator==(const Segment& a, const Segment& b) {
    return a.kind == b.kind && (a.kind != SegmentKind::Fin || a.size == b.size);
  }
};

// Address of a point: segment index plus an exact coordinate within it.
struct Element {
  int seg = 0;
  Rat coord;

  Element() = default;
  Element(int s, Rat c) : seg(s), coord(std::move(c)) {}
  Element(int s, long c) : seg(s), coord(c) {}

  friend bool operator==(const Element& a, const Element& b) {
    return a.seg == b.seg && a.coord == b.coord;
  }
  friend std::strong_ordering operator<=>(const Element& a, const Element& b) {
    if (a.seg != b.seg) return a.seg <=> b.seg;
    if (a.coord < b.coord) return std::strong_ordering::less;
    if (a.coord > b.coord) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

inline std::string element_to_string(const Element& e) {
  return "(" + std::to_string(e.seg) + "," + rat_to_string(e.coord) + ")";
}

class ChainSpec {
 public:
  explicit ChainSpec(std::vector<Segment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) throw ConstructionError("chain needs at least one segment");
    bool any_infinite = false;
    for (const auto& s : segments_) {
      if (s.kind == SegmentKind::Fin && s.size < 1)
        throw ConstructionError("finite segment size must be >= 1");
      any_infinite = any_infinite || s.is_infinite();
    }
    if (!any_infinite)
      throw ConstructionError("chain must contain an infinite segment");
  }

  const std::vector<Segment>& segments() const { return segments_; }
  int segment_count() const { return static_cast<int>(segments_.size()); }
  const Segment& segment(int i) const { return segments_[static_cast<std::size_t>(i)]; }

  bool valid(const Element& e) const {
    return e.seg >= 0 && e.seg < segment_count() && segment(e.seg).in_domain(e.coord);
  }
  void require_valid(const Element& e) const {
    if (!valid(e))
      throw AddressError("element " + element_to_string(e) + " is not in the chain");
  }

  bool has_min() const { return segments_.front().has_min(); }
  bool has_max() const { return segments_.back().has_max(); }
  Element min_element() const { return Element(0, segments_.front().min_coord()); }
  Element max_element() const {
    return Element(segment_count() - 1, segments_.back().max_coord());
  }

  // Immediate successor in the whole chain, when one exists.
  std::optional<Element> successor(const Element& e) const {
    const Segment& s = segment(e.seg);
    if (s.is_discrete() && !(s.has_max() && e.coord == s.max_coord()))
      return Element(e.seg, e.coord + 1);
    if (s.is_discrete() && e.seg + 1 < segment_count() &&
        segment(e.seg + 1).has_min())
      return Element(e.seg + 1, segment(e.seg + 1).min_coord());
    return std::nullopt;
  }

  std::optional<Element> predecessor(const Element& e) const {
    const Segment& s = segment(e.seg);
    if (s.is_discrete() && !(s.has_min() && e.coord == s.min_coord()))
      return Element(e.seg, e.coord - 1);
    if (s.is_discrete() && e.seg > 0 && segment(e.seg - 1).has_max())
      return Element(e.seg - 1, segment(e.seg - 1).max_coord());
    return std::nullopt;
  }

  friend bool operator==(const ChainSpec& a, const ChainSpec& b) {
    return a.segments_ == b.segments_;
  }

 private:
  std::vector<Segment> segments_;
};

enum class Ordering { Less, Equal, Greater };

// The chain order: lexicographic on (segment index, coordinate).
inline Ordering compare(const ChainSpec& chain, const Element& a, const Element& b) {
  chain.require_valid(a);
  chain.require_valid(b);
  auto c = a <=> b;
  if (c < 0) return Ordering::Less;
  if (c > 0) return Ordering::Greater;
  return Ordering::Equal;
}

// ---------------------------------------------------------------------------
// Order dual

inline SegmentKind dual_kind(SegmentKind k) {
  switch (k) {
    case SegmentKind::OmegaUp:
      return SegmentKind::OmegaDown;
    case SegmentKind::OmegaDown:
      return SegmentKind::OmegaUp;
    default:
      return k;
  }
}

// The order-reversed chain together with the element transport, an
// order-reversing involution between the chain and its dual.
class DualMap {
 public:
  explicit DualMap(const ChainSpec& chain) : orig_(chain), dual_(make_dual(chain)) {}

  const ChainSpec& orig_chain() const { return orig_; }
  const ChainSpec& dual_chain() const { return dual_; }

  Element transport(const Element& e) const {
    int n = orig_.segment_count();
    const Segment& s = orig_.segment(e.seg);
    Rat c = s.kind == SegmentKind::Fin ? Rat(s.size - 1) - e.coord : Rat(-e.coord);
    return Element(n - 1 - e.seg, c);
  }

  // Transport from the dual chain back; same formula by symmetry.
  Element transport_back(const Element& e) const {
    int n = dual_.segment_count();
    const Segment& s = dual_.segment(e.seg);
    Rat c = s.kind == SegmentKind::Fin ? Rat(s.size - 1) - e.coord : Rat(-e.coord);
    return Element(n - 1 - e.seg, c);
  }

 private:
  static ChainSpec make_dual(const ChainSpec& chain) {
    std::vector<Segment> segs;
    const auto& in = chain.segments();
    for (auto it = in.rbegin(); it != in.rend(); ++it)
      segs.push_back({dual_kind(it->kind), it->size});
    return ChainSpec(std::move(segs));
  }

  ChainSpec orig_;
  ChainSpec dual_;
};

inline ChainSpec dual(const ChainSpec& chain) { return DualMap(chain).dual_chain(); }

}  // namespace ordchain
