#pragma once

// Reidemeister moves on PD diagrams.
//
// A move's site refers to the crossing indices and slots of the diagram it
// was enumerated on. apply_move returns the result in canonical form.

#include "knotrec/diagram.hpp"

#include <set>
#include <string>
#include <vector>

namespace knotrec {

enum class MoveKind { R1Plus, R1Minus, R2Plus, R2Minus, R3 };

inline const char* move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::R1Plus: return "R1+";
    case MoveKind::R1Minus: return "R1-";
    case MoveKind::R2Plus: return "R2+";
    case MoveKind::R2Minus: return "R2-";
    case MoveKind::R3: return "R3";
  }
  return "?";
}

/// Site encodings:
///   R1+  {edge label (0 for a free loop), variant 0..3}
///   R1-  {crossing}
///   R2+  {crossing1, slot1, crossing2, slot2, first_goes_over}  (two darts of one face)
///   R2-  {crossing1, crossing2}
///   R3   {crossing, slot}  (a dart of the triangular face)
struct ReidemeisterMove {
  MoveKind kind{};
  std::vector<int> site;

  int crossing_delta() const {
    switch (kind) {
      case MoveKind::R1Plus: return 1;
      case MoveKind::R1Minus: return -1;
      case MoveKind::R2Plus: return 2;
      case MoveKind::R2Minus: return -2;
      case MoveKind::R3: return 0;
    }
    return 0;
  }

  friend bool operator==(const ReidemeisterMove&, const ReidemeisterMove&) = default;
  friend auto operator<=>(const ReidemeisterMove&, const ReidemeisterMove&) = default;
};

namespace detail {

// Mutable crossing soup used while editing a diagram.
struct Workspace {
  std::vector<Crossing> cs;
  std::vector<bool> alive;
  int free_loops = 0;
  int next_label = 1;

  explicit Workspace(const LinkDiagram& d)
      : cs(d.crossings()), alive(d.crossings().size(), true), free_loops(d.free_loops()) {
    for (const auto& c : cs)
      for (int a : c.arcs) next_label = std::max(next_label, a + 1);
  }

  int fresh() { return next_label++; }

  // The incoming slot of `label`, skipping the consumed slots of crossing x.
  Slot head_of(int label, int x, const std::array<bool, 4>& consumed) const {
    for (int i = 0; i < static_cast<int>(cs.size()); ++i) {
      if (!alive[i]) continue;
      for (int p = 0; p < 4; ++p)
        if (cs[i].arcs[p] == label && cs[i].incoming(p) && !(i == x && consumed[p]))
          return {i, p};
    }
    throw StructureError("dangling edge while splicing");
  }

  // Delete a crossing and splice each strand through it.
  void remove(int x) {
    auto strand_ends = [&](bool under) {
      if (under) return std::pair{0, 2};
      return cs[x].sign > 0 ? std::pair{3, 1} : std::pair{1, 3};
    };
    std::array<bool, 4> consumed{false, false, false, false};
    for (bool under : {true, false}) {
      auto [in_pos, out_pos] = strand_ends(under);
      int in_label = cs[x].arcs[in_pos];
      int out_label = cs[x].arcs[out_pos];
      consumed[in_pos] = consumed[out_pos] = true;
      if (in_label == out_label) {
        ++free_loops;
        continue;
      }
      Slot h = head_of(out_label, x, consumed);
      cs[h.crossing].arcs[h.pos] = in_label;
    }
    alive[x] = false;
  }

  LinkDiagram finish() const {
    std::vector<Crossing> out;
    for (std::size_t i = 0; i < cs.size(); ++i)
      if (alive[i]) out.push_back(cs[i]);
    return canonical(LinkDiagram(std::move(out), free_loops));
  }
};

// Crossing from the labels at compass points E, N, W, S (counterclockwise)
// and the compass indices where the under- and over-strands enter.
inline Crossing make_crossing(const std::array<int, 4>& compass, int under_in, int over_in) {
  Crossing c;
  for (int k = 0; k < 4; ++k) c.arcs[k] = compass[(under_in + k) % 4];
  int rel = ((over_in - under_in) % 4 + 4) % 4;
  c.sign = rel == 3 ? 1 : -1;
  return c;
}

inline bool is_r1_face(const std::vector<Dart>& f) { return f.size() == 1; }

inline bool is_r2_face(const LinkDiagram& d, const std::vector<Dart>& f) {
  if (f.size() != 2 || f[0].crossing == f[1].crossing) return false;
  // the edge leaving f[0] must be over at both of its ends (or under at both)
  Slot far = d.mate(f[0]);
  const auto& c0 = d.crossings()[f[0].crossing];
  const auto& c1 = d.crossings()[far.crossing];
  return c0.over_slot(f[0].pos) == c1.over_slot(far.pos);
}

inline bool is_r3_face(const LinkDiagram& d, const std::vector<Dart>& f) {
  if (f.size() != 3) return false;
  std::set<int> xs, labels;
  for (const auto& dart : f) {
    xs.insert(dart.crossing);
    labels.insert(d.label_at(dart));
  }
  if (xs.size() != 3 || labels.size() != 3) return false;
  for (const auto& dart : f) {
    Slot far = d.mate(dart);
    if (d.crossings()[dart.crossing].over_slot(dart.pos) ==
        d.crossings()[far.crossing].over_slot(far.pos))
      return true;
  }
  return false;
}

inline const std::vector<Dart>* face_with_dart(const LinkDiagram& d, Dart dart) {
  for (const auto& f : d.faces())
    for (const auto& x : f)
      if (x == dart) return &f;
  return nullptr;
}

}  // namespace detail

/// All applicable moves whose result has at most `crossing_bound` crossings,
/// in a fixed order: R1-, R2-, R3, R1+, R2+.
inline std::vector<ReidemeisterMove> enumerate_moves(const LinkDiagram& d, int crossing_bound) {
  std::vector<ReidemeisterMove> out;
  const int n = d.crossing_count();
  if (n - 1 <= crossing_bound) {
    std::set<int> seen;
    for (const auto& f : d.faces())
      if (detail::is_r1_face(f) && seen.insert(f[0].crossing).second)
        out.push_back({MoveKind::R1Minus, {f[0].crossing}});
  }
  if (n - 2 <= crossing_bound) {
    std::set<std::pair<int, int>> seen;
    for (const auto& f : d.faces()) {
      if (!detail::is_r2_face(d, f)) continue;
      auto key = std::minmax(f[0].crossing, f[1].crossing);
      if (seen.insert(key).second)
        out.push_back({MoveKind::R2Minus, {key.first, key.second}});
    }
  }
  if (n <= crossing_bound) {
    for (const auto& f : d.faces())
      if (detail::is_r3_face(d, f)) {
        Dart first = *std::min_element(f.begin(), f.end());
        out.push_back({MoveKind::R3, {first.crossing, first.pos}});
      }
  }
  if (n + 1 <= crossing_bound) {
    if (d.free_loops() > 0)
      for (int v = 0; v < 4; ++v) out.push_back({MoveKind::R1Plus, {0, v}});
    for (int label = 1; label <= d.arc_count(); ++label)
      for (int v = 0; v < 4; ++v) out.push_back({MoveKind::R1Plus, {label, v}});
  }
  if (n + 2 <= crossing_bound) {
    for (const auto& f : d.faces())
      for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) {
          if (d.label_at(f[i]) == d.label_at(f[j])) continue;
          for (int over = 0; over < 2; ++over)
            out.push_back({MoveKind::R2Plus,
                           {f[i].crossing, f[i].pos, f[j].crossing, f[j].pos, over}});
        }
  }
  return out;
}

/// Apply `m` to `d`. Throws PatternMismatch if the site does not fit.
inline LinkDiagram apply_move(const LinkDiagram& d, const ReidemeisterMove& m) {
  const int n = d.crossing_count();
  auto mismatch = [&](const std::string& why) {
    return PatternMismatch(std::string(move_kind_name(m.kind)) + ": " + why);
  };
  auto valid_crossing = [&](int c) { return c >= 0 && c < n; };
  auto valid_slot = [&](int c, int p) { return valid_crossing(c) && p >= 0 && p < 4; };
  detail::Workspace w(d);

  switch (m.kind) {
    case MoveKind::R1Plus: {
      if (m.site.size() != 2 || m.site[1] < 0 || m.site[1] > 3) throw mismatch("bad site");
      int e = m.site[0];
      int e1, e2;
      if (e == 0) {
        if (d.free_loops() == 0) throw mismatch("no free loop");
        --w.free_loops;
        e1 = e2 = w.fresh();
      } else {
        if (e < 1 || e > d.arc_count()) throw mismatch("no such edge");
        Slot h = d.head(e);
        e1 = e;
        e2 = w.fresh();
        w.cs[h.crossing].arcs[h.pos] = e2;
      }
      int l = w.fresh();
      static constexpr int kSign[4] = {1, -1, 1, -1};
      std::array<int, 4> arcs;
      switch (m.site[1]) {
        case 0: arcs = {e1, e2, l, l}; break;
        case 1: arcs = {e1, l, l, e2}; break;
        case 2: arcs = {l, l, e2, e1}; break;
        default: arcs = {l, e1, e2, l}; break;
      }
      w.cs.push_back({arcs, kSign[m.site[1]]});
      w.alive.push_back(true);
      return w.finish();
    }
    case MoveKind::R1Minus: {
      if (m.site.size() != 1 || !valid_crossing(m.site[0])) throw mismatch("bad site");
      int x = m.site[0];
      bool kink = false;
      for (const auto& f : d.faces())
        if (detail::is_r1_face(f) && f[0].crossing == x) kink = true;
      if (!kink) throw mismatch("crossing is not a kink");
      w.remove(x);
      return w.finish();
    }
    case MoveKind::R2Minus: {
      if (m.site.size() != 2 || !valid_crossing(m.site[0]) || !valid_crossing(m.site[1]))
        throw mismatch("bad site");
      bool ok = false;
      for (const auto& f : d.faces())
        if (detail::is_r2_face(d, f) &&
            std::minmax(f[0].crossing, f[1].crossing) == std::minmax(m.site[0], m.site[1]))
          ok = true;
      if (!ok) throw mismatch("crossings do not bound a removable bigon");
      w.remove(m.site[0]);
      w.remove(m.site[1]);
      return w.finish();
    }
    case MoveKind::R3: {
      if (m.site.size() != 2 || !valid_slot(m.site[0], m.site[1])) throw mismatch("bad site");
      const auto* f = detail::face_with_dart(d, {m.site[0], m.site[1]});
      if (f == nullptr || !detail::is_r3_face(d, *f)) throw mismatch("not a movable triangle");
      struct Write {
        Slot s;
        int label;
      };
      std::vector<Write> writes;
      for (const auto& dart : *f) {
        Slot a = dart, b = d.mate(dart);
        Slot a_opp{a.crossing, (a.pos + 2) % 4}, b_opp{b.crossing, (b.pos + 2) % 4};
        int outer_a = d.label_at(a_opp), outer_b = d.label_at(b_opp);
        int fresh = w.fresh();
        writes.push_back({a, outer_b});
        writes.push_back({b, outer_a});
        writes.push_back({a_opp, fresh});
        writes.push_back({b_opp, fresh});
      }
      for (const auto& wr : writes) w.cs[wr.s.crossing].arcs[wr.s.pos] = wr.label;
      return w.finish();
    }
    case MoveKind::R2Plus: {
      if (m.site.size() != 5 || !valid_slot(m.site[0], m.site[1]) ||
          !valid_slot(m.site[2], m.site[3]) || (m.site[4] != 0 && m.site[4] != 1))
        throw mismatch("bad site");
      Dart de{m.site[0], m.site[1]}, df{m.site[2], m.site[3]};
      const auto* f = detail::face_with_dart(d, de);
      if (f == nullptr || std::find(f->begin(), f->end(), df) == f->end())
        throw mismatch("darts do not share a face");
      int e = d.label_at(de), g = d.label_at(df);
      if (e == g) throw mismatch("a strand cannot be pushed across itself");
      bool e_over = m.site[4] == 1;
      // +1 when the face boundary runs along the strand's orientation
      int se = d.crossings()[de.crossing].incoming(de.pos) ? -1 : 1;
      int sf = d.crossings()[df.crossing].incoming(df.pos) ? -1 : 1;

      int eA = w.fresh(), eM = w.fresh(), eB = w.fresh();
      int fA = w.fresh(), fM = w.fresh(), fB = w.fresh();
      auto relink = [&](int label, int first, int last) {
        Slot t = d.tail(label), h = d.head(label);
        w.cs[t.crossing].arcs[t.pos] = first;
        w.cs[h.crossing].arcs[h.pos] = last;
      };
      if (se > 0) relink(e, eA, eB); else relink(e, eB, eA);
      if (sf > 0) relink(g, fA, fB); else relink(g, fB, fA);

      // Compass indices: E=0, N=1, W=2, S=3. The finger of e rises through
      // the left crossing and comes back down through the right one; g runs
      // right to left along the face boundary.
      int e_in_left = se > 0 ? 3 : 1, e_in_right = se > 0 ? 1 : 3;
      int g_in = sf > 0 ? 0 : 2;
      std::array<int, 4> left{fM, eM, fB, eA}, right{fA, eM, fM, eB};
      auto build = [&](const std::array<int, 4>& compass, int e_in) {
        return e_over ? detail::make_crossing(compass, g_in, e_in)
                      : detail::make_crossing(compass, e_in, g_in);
      };
      w.cs.push_back(build(left, e_in_left));
      w.cs.push_back(build(right, e_in_right));
      w.alive.push_back(true);
      w.alive.push_back(true);
      return w.finish();
    }
  }
  throw mismatch("unknown move");
}

inline std::string describe(const ReidemeisterMove& m) {
  std::string s = move_kind_name(m.kind);
  s += "(";
  for (std::size_t i = 0; i < m.site.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(m.site[i]);
  }
  return s + ")";
}

}  // namespace knotrec
