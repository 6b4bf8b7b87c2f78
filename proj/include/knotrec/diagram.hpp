#pragma once

// Oriented link diagrams as planar-diagram (PD) crossing codes.
//
// Convention: each crossing lists the labels of its four incident edges
// counterclockwise, starting from the incoming under-strand. The under-strand
// therefore runs position 0 -> position 2. The over-strand runs 3 -> 1 at a
// positive crossing and 1 -> 3 at a negative one. Edges are the segments of
// the diagram between consecutive crossings (an edge may pass over other
// strands only at its endpoints), so every label appears in exactly two
// slots: once incoming and once outgoing.
//
// Crossing-free components are kept as a count of free loops.

#include "knotrec/errors.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace knotrec {

struct Crossing {
  std::array<int, 4> arcs{};
  int sign = 1;

  /// True when the slot at `pos` carries the strand into the crossing.
  bool incoming(int pos) const {
    return pos == 0 || (pos == 3 && sign > 0) || (pos == 1 && sign < 0);
  }
  bool over_slot(int pos) const { return (pos & 1) != 0; }

  friend bool operator==(const Crossing&, const Crossing&) = default;
  friend auto operator<=>(const Crossing&, const Crossing&) = default;
};

/// A position in the crossing list: crossing index and slot 0..3.
struct Slot {
  int crossing = -1;
  int pos = -1;
  friend bool operator==(const Slot&, const Slot&) = default;
  friend auto operator<=>(const Slot&, const Slot&) = default;
};

/// A face corner: the slot through which the face boundary leaves a
/// crossing. Faces are traced keeping the face on the left.
using Dart = Slot;

class LinkDiagram;
LinkDiagram canonical(const LinkDiagram& d);

class LinkDiagram {
 public:
  LinkDiagram() = default;

  /// Validating constructor. Throws StructureError.
  LinkDiagram(std::vector<Crossing> crossings, int free_loops)
      : crossings_(std::move(crossings)), free_loops_(free_loops) {
    validate();
  }

  static LinkDiagram unknot() { return LinkDiagram({}, 1); }

  const std::vector<Crossing>& crossings() const { return crossings_; }
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  int arc_count() const { return 2 * crossing_count(); }
  int free_loops() const { return free_loops_; }

  /// Edge cycles of the components that meet at least one crossing, each
  /// listed along its orientation starting from its smallest label.
  const std::vector<std::vector<int>>& component_cycles() const { return cycles_; }
  int component_count() const {
    return static_cast<int>(cycles_.size()) + free_loops_;
  }

  /// Index into component_cycles() of the component carrying edge `label`.
  int component_of(int label) const { return edge_component_.at(label); }

  /// The two slots carrying `label`, tail (outgoing) first.
  std::pair<Slot, Slot> edge_slots(int label) const {
    const auto& s = slots_.at(label);
    return {s[0], s[1]};
  }
  Slot tail(int label) const { return slots_.at(label)[0]; }
  Slot head(int label) const { return slots_.at(label)[1]; }

  /// The slot carrying the same edge as `s`.
  Slot mate(Slot s) const {
    int label = crossings_[s.crossing].arcs[s.pos];
    const auto& ends = slots_.at(label);
    return ends[0] == s ? ends[1] : ends[0];
  }

  int label_at(Slot s) const { return crossings_[s.crossing].arcs[s.pos]; }

  /// All faces of the diagram, each as its boundary darts in order.
  const std::vector<std::vector<Dart>>& faces() const { return faces_; }

  /// Next dart along the boundary of the face on the left of `d`.
  Dart next_dart(Dart d) const {
    Slot arrive = mate(d);
    return {arrive.crossing, (arrive.pos + 3) % 4};
  }

  friend bool operator==(const LinkDiagram& a, const LinkDiagram& b) {
    return a.crossings_ == b.crossings_ && a.free_loops_ == b.free_loops_;
  }

 private:
  void validate() {
    if (free_loops_ < 0) throw StructureError("negative free-loop count");
    if (crossings_.empty() && free_loops_ == 0)
      throw StructureError("empty diagram");
    for (const auto& c : crossings_) {
      if (c.sign != 1 && c.sign != -1)
        throw StructureError("crossing sign must be +1 or -1");
      for (int a : c.arcs)
        if (a <= 0) throw StructureError("arc labels must be positive");
    }

    // Pair every label with exactly one tail slot and one head slot.
    std::map<int, std::array<Slot, 2>> ends;
    std::map<int, std::array<int, 2>> seen;
    for (int i = 0; i < crossing_count(); ++i) {
      for (int p = 0; p < 4; ++p) {
        int label = crossings_[i].arcs[p];
        int role = crossings_[i].incoming(p) ? 1 : 0;
        auto& cnt = seen[label];
        if (cnt[role] != 0)
          throw StructureError("arc " + std::to_string(label) +
                               " is not paired as one incoming and one outgoing end");
        cnt[role] = 1;
        ends[label][role] = {i, p};
      }
    }
    for (const auto& [label, cnt] : seen)
      if (cnt[0] != 1 || cnt[1] != 1)
        throw StructureError("arc " + std::to_string(label) + " appears only once");
    slots_ = std::move(ends);

    // Components, following the orientation.
    cycles_.clear();
    edge_component_.clear();
    for (const auto& [start, unused] : slots_) {
      if (edge_component_.contains(start)) continue;
      int id = static_cast<int>(cycles_.size());
      std::vector<int> cycle;
      int e = start;
      do {
        edge_component_[e] = id;
        cycle.push_back(e);
        Slot h = slots_.at(e)[1];
        e = crossings_[h.crossing].arcs[(h.pos + 2) % 4];
      } while (e != start);
      cycles_.push_back(std::move(cycle));
    }

    trace_faces();
    check_planar();
  }

  void trace_faces() {
    faces_.clear();
    std::vector<std::array<bool, 4>> used(crossings_.size(), {false, false, false, false});
    for (int i = 0; i < crossing_count(); ++i) {
      for (int p = 0; p < 4; ++p) {
        if (used[i][p]) continue;
        std::vector<Dart> face;
        Dart d{i, p};
        while (!used[d.crossing][d.pos]) {
          used[d.crossing][d.pos] = true;
          face.push_back(d);
          d = next_dart(d);
        }
        faces_.push_back(std::move(face));
      }
    }
  }

  // Euler characteristic of each connected piece: V - 2V + F = 2.
  void check_planar() {
    int n = crossing_count();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& [label, s] : slots_) parent[find(s[0].crossing)] = find(s[1].crossing);
    std::map<int, int> vertices, face_count;
    for (int i = 0; i < n; ++i) ++vertices[find(i)];
    for (const auto& f : faces_) ++face_count[find(f.front().crossing)];
    for (const auto& [root, v] : vertices)
      if (face_count[root] != v + 2)
        throw StructureError("crossing code is not planar");
  }

  std::vector<Crossing> crossings_;
  int free_loops_ = 0;
  std::map<int, std::array<Slot, 2>> slots_;  // label -> {tail, head}
  std::vector<std::vector<int>> cycles_;
  std::map<int, int> edge_component_;
  std::vector<std::vector<Dart>> faces_;
};

// ---------------------------------------------------------------------------
// Elementary transformations

/// Swap over and under at every crossing; all signs negate.
inline LinkDiagram mirror_diagram(const LinkDiagram& d) {
  std::vector<Crossing> out;
  out.reserve(d.crossings().size());
  for (const auto& c : d.crossings()) {
    const auto& a = c.arcs;
    // The old over-strand becomes the under-strand; start from its incoming end.
    if (c.sign > 0)
      out.push_back({{a[3], a[0], a[1], a[2]}, -1});
    else
      out.push_back({{a[1], a[2], a[3], a[0]}, 1});
  }
  return LinkDiagram(std::move(out), d.free_loops());
}

/// Reverse the orientation of every component.
inline LinkDiagram reverse_diagram(const LinkDiagram& d) {
  std::vector<Crossing> out;
  out.reserve(d.crossings().size());
  for (const auto& c : d.crossings())
    out.push_back({{c.arcs[2], c.arcs[3], c.arcs[0], c.arcs[1]}, c.sign});
  return LinkDiagram(std::move(out), d.free_loops());
}

// ---------------------------------------------------------------------------
// Canonical relabeling
//
// Labels are assigned 1, 2, ... along the orientation starting from a chosen
// edge; further components are entered at the first unlabeled slot met when
// scanning the heads of already-labeled edges counterclockwise. The canonical
// form is the lexicographically smallest sorted crossing list over all
// starting edges. Split pieces that cannot be reached this way are started
// greedily at the choice giving the smallest partial encoding.

namespace detail {

using Encoding = std::vector<std::array<int, 5>>;

inline Encoding encode(const LinkDiagram& d, const std::map<int, int>& relabel) {
  Encoding enc;
  enc.reserve(d.crossings().size());
  for (const auto& c : d.crossings())
    enc.push_back({relabel.at(c.arcs[0]), relabel.at(c.arcs[1]), relabel.at(c.arcs[2]),
                   relabel.at(c.arcs[3]), c.sign});
  std::sort(enc.begin(), enc.end());
  return enc;
}

inline void label_component(const LinkDiagram& d, int start, std::map<int, int>& relabel,
                            std::vector<int>& order) {
  int e = start;
  do {
    int next = static_cast<int>(relabel.size()) + 1;
    relabel[e] = next;
    order.push_back(e);
    Slot h = d.head(e);
    e = d.crossings()[h.crossing].arcs[(h.pos + 2) % 4];
  } while (e != start);
}

// Label every component reachable from already-labeled edges.
inline void label_reachable(const LinkDiagram& d, std::map<int, int>& relabel,
                            std::vector<int>& order) {
  for (std::size_t i = 0; i < order.size(); ++i) {
    Slot h = d.head(order[i]);
    const auto& arcs = d.crossings()[h.crossing].arcs;
    for (int k = 0; k < 4; ++k) {
      int label = arcs[(h.pos + k) % 4];
      if (!relabel.contains(label)) label_component(d, label, relabel, order);
    }
  }
}

inline Encoding partial_encoding(const LinkDiagram& d, const std::map<int, int>& relabel) {
  Encoding enc;
  for (const auto& c : d.crossings()) {
    if (!relabel.contains(c.arcs[0])) continue;
    enc.push_back({relabel.at(c.arcs[0]), relabel.at(c.arcs[1]), relabel.at(c.arcs[2]),
                   relabel.at(c.arcs[3]), c.sign});
  }
  std::sort(enc.begin(), enc.end());
  return enc;
}

inline std::map<int, int> labeling_from(const LinkDiagram& d, int start) {
  std::map<int, int> relabel;
  std::vector<int> order;
  label_component(d, start, relabel, order);
  label_reachable(d, relabel, order);
  while (static_cast<int>(relabel.size()) < d.arc_count()) {
    std::optional<std::pair<Encoding, std::map<int, int>>> best;
    for (const auto& cyc : d.component_cycles()) {
      for (int e : cyc) {
        if (relabel.contains(e)) continue;
        auto trial = relabel;
        auto trial_order = order;
        label_component(d, e, trial, trial_order);
        label_reachable(d, trial, trial_order);
        auto enc = partial_encoding(d, trial);
        if (!best || enc < best->first) best.emplace(std::move(enc), std::move(trial));
      }
    }
    relabel = std::move(best->second);
    order.clear();
  }
  return relabel;
}

}  // namespace detail

/// Canonically relabeled copy of `d`; two diagrams are equal as planar
/// diagrams on the sphere exactly when their canonical forms are equal.
inline LinkDiagram canonical(const LinkDiagram& d) {
  if (d.crossings().empty()) return d;
  std::optional<std::pair<detail::Encoding, std::map<int, int>>> best;
  for (const auto& cyc : d.component_cycles()) {
    for (int e : cyc) {
      auto relabel = detail::labeling_from(d, e);
      auto enc = detail::encode(d, relabel);
      if (!best || enc < best->first) best.emplace(std::move(enc), std::move(relabel));
    }
  }
  std::vector<Crossing> out;
  out.reserve(best->first.size());
  for (const auto& row : best->first) out.push_back({{row[0], row[1], row[2], row[3]}, row[4]});
  return LinkDiagram(std::move(out), d.free_loops());
}

/// Compact hashable key of a diagram already in canonical form.
inline std::string diagram_key(const LinkDiagram& canon) {
  std::string key;
  key.reserve(canon.crossings().size() * 9 + 2);
  auto put = [&](int v) {
    key.push_back(static_cast<char>(v & 0xff));
    key.push_back(static_cast<char>((v >> 8) & 0xff));
  };
  put(canon.free_loops());
  for (const auto& c : canon.crossings()) {
    for (int a : c.arcs) put(a);
    key.push_back(c.sign > 0 ? '+' : '-');
  }
  return key;
}

// ---------------------------------------------------------------------------
// Invariants

/// Symmetric integer matrix of pairwise linking numbers, zero diagonal.
/// Rows follow component_cycles(), then one zero row per free loop.
using LinkingMatrix = std::vector<std::vector<int>>;

inline LinkingMatrix linking_matrix(const LinkDiagram& d) {
  int n = d.component_count();
  LinkingMatrix twice(n, std::vector<int>(n, 0));
  for (const auto& c : d.crossings()) {
    int under = d.component_of(c.arcs[0]);
    int over = d.component_of(c.arcs[1]);
    if (under == over) continue;
    twice[under][over] += c.sign;
    twice[over][under] += c.sign;
  }
  for (auto& row : twice)
    for (auto& v : row) v /= 2;
  return twice;
}

inline int writhe(const LinkDiagram& d) {
  int w = 0;
  for (const auto& c : d.crossings()) w += c.sign;
  return w;
}

}  // namespace knotrec
