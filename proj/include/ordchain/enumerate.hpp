#pragma once

#include <vector>

#include "ordchain/chain.hpp"

namespace ordchain {

// Deterministic enumeration of up to `count` coordinates of a segment,
// starting from the canonical small values. Integer segments spiral out
// from 0 within their domain; rationals are listed by increasing
// |numerator| + denominator.
inline std::vector<Rat> enumerate_coords(const Segment& seg, int count) {
  std::vector<Rat> out;
  switch (seg.kind) {
    case SegmentKind::Fin:
      for (long c = 0; c < seg.size && static_cast<int>(out.size()) < count; ++c)
        out.emplace_back(c);
      break;
    case SegmentKind::OmegaUp:
      for (long c = 0; static_cast<int>(out.size()) < count; ++c) out.emplace_back(c);
      break;
    case SegmentKind::OmegaDown:
      for (long c = 0; static_cast<int>(out.size()) < count; --c) out.emplace_back(c);
      break;
    case SegmentKind::IntLine:
      out.emplace_back(0);
      for (long c = 1; static_cast<int>(out.size()) < count; ++c) {
        out.emplace_back(c);
        if (static_cast<int>(out.size()) < count) out.emplace_back(-c);
      }
      break;
    case SegmentKind::RatLine:
      for (long h = 1; static_cast<int>(out.size()) < count; ++h) {
        for (long d = 1; d <= h && static_cast<int>(out.size()) < count; ++d) {
          long n = h - d;
          if (gcd(Int(n), Int(d)) != 1) continue;
          out.emplace_back(Rat(n, d));
          if (n != 0 && static_cast<int>(out.size()) < count)
            out.emplace_back(Rat(-n, d));
        }
      }
      break;
  }
  return out;
}

// A window of up to `per_segment` elements from every segment of the chain.
inline std::vector<Element> enumerate_window(const ChainSpec& chain, int per_segment) {
  std::vector<Element> out;
  for (int s = 0; s < chain.segment_count(); ++s)
    for (const auto& c : enumerate_coords(chain.segment(s), per_segment))
      out.emplace_back(s, c);
  return out;
}

}  // namespace ordchain
