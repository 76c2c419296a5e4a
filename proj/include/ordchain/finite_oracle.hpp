#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "ordchain/rational.hpp"

namespace ordchain {

// Brute-force ground truth on the n-element chain {0, ..., n-1}.
struct FiniteMap {
  std::vector<std::uint8_t> values;  // values[i] = image of i, non-decreasing

  int size() const { return static_cast<int>(values.size()); }

  friend bool operator==(const FiniteMap& a, const FiniteMap& b) {
    return a.values == b.values;
  }
  friend bool operator<(const FiniteMap& a, const FiniteMap& b) {
    return a.values < b.values;
  }
};

inline FiniteMap finite_identity(int n) {
  FiniteMap f;
  for (int i = 0; i < n; ++i) f.values.push_back(static_cast<std::uint8_t>(i));
  return f;
}

// Left-to-right composition, matching the infinite-chain convention.
inline FiniteMap compose(const FiniteMap& f, const FiniteMap& g) {
  FiniteMap out;
  out.values.reserve(f.values.size());
  for (auto v : f.values) out.values.push_back(g.values[v]);
  return out;
}

inline int image_size(const FiniteMap& f) {
  std::set<std::uint8_t> s(f.values.begin(), f.values.end());
  return static_cast<int>(s.size());
}

inline constexpr int kFiniteOracleCap = 8;

// All monotone self-maps of the n-chain in lexicographic order; there are
// C(2n-1, n) of them.
inline std::vector<FiniteMap> enumerate_On(int n) {
  if (n < 1 || n > kFiniteOracleCap)
    throw ConstructionError("finite oracle supports 1 <= n <= 8");
  std::vector<FiniteMap> out;
  FiniteMap cur;
  cur.values.assign(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int pos, int min_val) -> void {
    if (pos == n) {
      out.push_back(cur);
      return;
    }
    for (int v = min_val; v < n; ++v) {
      cur.values[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(v);
      self(self, pos + 1, v);
    }
  };
  rec(rec, 0, 0);
  return out;
}

// Maps of full image size; on a finite chain only the identity qualifies.
inline std::vector<FiniteMap> top_class(int n) {
  std::vector<FiniteMap> out;
  for (const auto& f : enumerate_On(n))
    if (image_size(f) == n) out.push_back(f);
  return out;
}

// Least composition-closed superset of the generators, by breadth-first
// product saturation.
inline std::set<FiniteMap> closure(int n, const std::vector<FiniteMap>& generators) {
  std::set<FiniteMap> seen;
  std::vector<FiniteMap> frontier;
  for (const auto& g : generators) {
    if (g.size() != n) throw ConstructionError("generator arity mismatch");
    if (seen.insert(g).second) frontier.push_back(g);
  }
  std::vector<FiniteMap> gens(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<FiniteMap> next;
    for (const auto& f : frontier) {
      for (const auto& g : gens) {
        FiniteMap fg = compose(f, g);
        if (seen.insert(fg).second) next.push_back(fg);
        FiniteMap gf = compose(g, f);
        if (seen.insert(gf).second) next.push_back(gf);
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

struct OracleReport {
  int n = 0;
  Int order = 0;        // |O_n|
  Int top_class_size = 0;
  Int closure_size = 0;  // |<top class>|
  bool generated = false;
};

inline OracleReport oracle_report(int n) {
  auto all = enumerate_On(n);
  auto top = top_class(n);
  auto cl = closure(n, top);
  OracleReport r;
  r.n = n;
  r.order = Int(all.size());
  r.top_class_size = Int(top.size());
  r.closure_size = Int(cl.size());
  r.generated = cl.size() == all.size();
  return r;
}

}  // namespace ordchain
