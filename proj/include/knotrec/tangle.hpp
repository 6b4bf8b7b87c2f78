#pragma once

// Rational and Montesinos tangles, and their numerator closures as oriented
// link diagrams.
//
// Conventions (Conway): a tangle has ends NW, NE, SE, SW. The crossing [+1]
// has its SW-NE strand over. A horizontal twist adds a crossing on the
// right (fraction F -> F +- 1); a vertical twist adds one at the bottom
// (1/F -> 1/F +- 1). The numerator closure joins NW-NE and SW-SE.

#include "knotrec/diagram.hpp"
#include "knotrec/errors.hpp"

#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <vector>

namespace knotrec {

/// An unoriented crossing: edge ids in counterclockwise order and which pair
/// of opposite slots carries the over-strand.
struct TangleCrossing {
  std::array<int, 4> edges;
  bool over02;
};

enum TangleEnd { NW = 0, NE = 1, SE = 2, SW = 3 };

/// A 4-ended tangle diagram. Every edge id occurs exactly twice among the
/// crossing slots and the ends.
struct Tangle {
  std::vector<TangleCrossing> crossings;
  std::array<int, 4> ends{};
  int next_edge = 0;

  int fresh() { return next_edge++; }

  /// Two horizontal arcs, NW-NE and SW-SE.
  static Tangle zero() {
    Tangle t;
    int top = t.fresh(), bottom = t.fresh();
    t.ends = {top, top, bottom, bottom};
    return t;
  }

  /// Two vertical arcs, NW-SW and NE-SE.
  static Tangle infinity() {
    Tangle t;
    int left = t.fresh(), right = t.fresh();
    t.ends = {left, right, right, left};
    return t;
  }

  /// Crossing on the right joining NE and SE; sign +1 adds 1 to the fraction.
  void twist_h(int sign) {
    int ne = fresh(), se = fresh();
    // ccw legs NW, SW, SE, NE; the SW-NE strand (slots 1, 3) is over for +1
    crossings.push_back({{ends[NE], ends[SE], se, ne}, sign < 0});
    ends[NE] = ne;
    ends[SE] = se;
  }

  /// Crossing at the bottom joining SW and SE; sign +1 adds 1 to 1/fraction.
  void twist_v(int sign) {
    int sw = fresh(), se = fresh();
    crossings.push_back({{ends[SW], sw, se, ends[SE]}, sign < 0});
    ends[SW] = sw;
    ends[SE] = se;
  }
};

/// Rational tangle of fraction p/q (q = 0 is the infinity tangle) from the
/// continued fraction with all terms of one sign, giving an alternating
/// diagram with the minimal number of crossings.
inline Tangle rational_tangle(std::int64_t p, std::int64_t q) {
  if (q == 0) return p == 0 ? throw InvalidForm("0/0 is not a tangle fraction") : Tangle::infinity();
  if (p == 0) return Tangle::zero();
  int sign = (p > 0) == (q > 0) ? 1 : -1;
  if (std::llabs(p) >= std::llabs(q)) {
    std::int64_t a = p / q;
    Tangle t = rational_tangle(p - a * q, q);
    for (std::int64_t i = 0; i < std::llabs(a); ++i) t.twist_h(sign);
    return t;
  }
  std::int64_t b = q / p;
  Tangle t = rational_tangle(p, q - b * p);
  for (std::int64_t i = 0; i < std::llabs(b); ++i) t.twist_v(sign);
  return t;
}

/// Tangle sum: NE of a joins NW of b, SE of a joins SW of b.
inline Tangle tangle_sum(const Tangle& a, const Tangle& b) {
  Tangle t = a;
  const int offset = a.next_edge;
  std::map<int, int> rename;
  rename[b.ends[NW] + offset] = a.ends[NE];
  rename[b.ends[SW] + offset] = a.ends[SE];
  auto id = [&](int e) {
    e += offset;
    auto it = rename.find(e);
    return it == rename.end() ? e : it->second;
  };
  for (const auto& c : b.crossings)
    t.crossings.push_back({{id(c.edges[0]), id(c.edges[1]), id(c.edges[2]), id(c.edges[3])},
                           c.over02});
  t.ends[NE] = id(b.ends[NE]);
  t.ends[SE] = id(b.ends[SE]);
  t.next_edge = offset + b.next_edge;
  // When b's NW and NE ends were one arc, a's NE edge now runs straight
  // through to the new NE end (likewise at the bottom); renaming covers it.
  return t;
}

/// Numerator closure as an oriented diagram. Both closing arcs run left to
/// right (NW to NE and SW to SE); components that meet neither arc are
/// oriented from their lowest slot. For two-bridge links this matches the
/// orientation of Schubert's normal form b(alpha, beta).
inline LinkDiagram numerator_closure(const Tangle& t) {
  const int n = static_cast<int>(t.crossings.size());
  // nodes: slot (c, i) is 4c + i; end k is 4n + k
  const int nodes = 4 * n + 4;
  std::vector<std::vector<int>> occ(t.next_edge);
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < 4; ++i) occ[t.crossings[c].edges[i]].push_back(4 * c + i);
  for (int k = 0; k < 4; ++k) occ[t.ends[k]].push_back(4 * n + k);
  std::vector<int> link(nodes, -1);
  for (const auto& o : occ) {
    if (o.empty()) continue;
    if (o.size() != 2) throw StructureError("tangle edge does not have two ends");
    link[o[0]] = o[1];
    link[o[1]] = o[0];
  }
  auto is_end = [&](int v) { return v >= 4 * n; };
  // closing arcs pair NW with NE and SE with SW
  auto across = [&](int v) {
    int k = v - 4 * n;
    return 4 * n + (k == NW ? NE : k == NE ? NW : k == SE ? SW : SE);
  };
  // Follow the edge leaving node v to the crossing slot at its other end,
  // passing through closing arcs; -1 if the loop meets no crossing.
  auto far = [&](int v) {
    int u = link[v];
    int guard = 0;
    while (is_end(u)) {
      u = link[across(u)];
      if (++guard > 4) return -1;
    }
    return u;
  };

  std::vector<int> role(4 * n, 0);  // +1 incoming, -1 outgoing
  int free_loops = 0;
  auto orient_from = [&](int head) {
    int s = head;
    do {
      role[s] = 1;
      int out = 4 * (s / 4) + (s % 4 + 2) % 4;
      role[out] = -1;
      s = far(out);
    } while (s != head);
  };
  // the closing arcs enter the tangle at NE and SE
  for (int seed_end : {NE, SE}) {
    int v = 4 * n + seed_end;
    int u = link[v];
    int guard = 0;
    while (is_end(u) && guard++ <= 4) u = link[across(u)];
    if (is_end(u)) continue;  // crossing-free loop, counted below
    if (role[u] == 0) orient_from(u);
  }
  for (int s = 0; s < 4 * n; ++s)
    if (role[s] == 0) orient_from(s);

  // Crossing-free closed loops through the ends.
  std::vector<bool> seen_end(4, false);
  for (int k = 0; k < 4; ++k) {
    if (seen_end[k]) continue;
    int v = 4 * n + k;
    bool crossing_free = true;
    std::vector<int> visited;
    int u = v;
    for (int step = 0; step < 8; ++step) {
      visited.push_back(u - 4 * n);
      int w = link[u];
      if (!is_end(w)) {
        crossing_free = false;
        break;
      }
      visited.push_back(w - 4 * n);
      u = across(w);
      if (u == v) break;
    }
    if (crossing_free) {
      for (int e : visited) seen_end[e] = true;
      ++free_loops;
    }
  }

  // Label each edge by its outgoing slot, in traversal order.
  std::vector<int> label(4 * n, 0);
  int next = 1;
  std::vector<bool> done(4 * n, false);
  for (int start = 0; start < 4 * n; ++start) {
    if (role[start] != 1 || done[start]) continue;
    int s = start;
    while (!done[s]) {
      done[s] = true;
      int out = 4 * (s / 4) + (s % 4 + 2) % 4;
      int head = far(out);
      label[out] = label[head] = next++;
      s = head;
    }
  }

  std::vector<Crossing> cs;
  for (int c = 0; c < n; ++c) {
    const auto& x = t.crossings[c];
    // incoming under slot
    int u = x.over02 ? 1 : 0;
    if (role[4 * c + u] != 1) u += 2;
    std::array<int, 4> arcs{};
    for (int k = 0; k < 4; ++k) arcs[k] = label[4 * c + (u + k) % 4];
    int over_in_pos = role[4 * c + (u + 3) % 4] == 1 ? 3 : 1;
    cs.push_back({arcs, over_in_pos == 3 ? 1 : -1});
  }
  return LinkDiagram(std::move(cs), free_loops);
}

}  // namespace knotrec
