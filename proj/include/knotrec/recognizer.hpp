#pragma once

// Recognition of two-bridge and three-tangle Montesinos knots from a diagram:
// finite-quotient separation dovetailed with a Reidemeister move search.

#include "knotrec/covers.hpp"
#include "knotrec/diagram.hpp"
#include "knotrec/errors.hpp"
#include "knotrec/montesinos.hpp"
#include "knotrec/moves.hpp"
#include "knotrec/quotients.hpp"
#include "knotrec/smith.hpp"
#include "knotrec/twobridge.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <tuple>
#include <unordered_map>
#include <variant>
#include <vector>

namespace knotrec {

using KnotSpec = std::variant<SchubertForm, MontesinosForm>;

inline std::string to_string(const KnotSpec& s) {
  return std::visit([](const auto& f) { return to_string(f); }, s);
}

/// "b(3,1)" or "M(1/3,-1/3,1/2)".
inline KnotSpec parse_knot_spec(const std::string& text) {
  auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == 'M') return parse_montesinos(text);
  return parse_schubert(text);
}

/// Cached hom/epi counts of a fixed presentation, filled on demand.
class CountCache {
 public:
  explicit CountCache(GroupPresentation p) : p_(simplify(p)) {}
  const GroupPresentation& presentation() const { return p_; }

  /// nullopt when the search ceiling is hit.
  std::optional<HomCount> get(const CatalogEntry& e, double ceiling) {
    auto it = counts_.find(e.id());
    if (it != counts_.end()) return it->second;
    std::optional<HomCount> c;
    try {
      c = count_homs(p_, e.group(), ceiling);
    } catch (const SearchCeilingExceeded&) {
    }
    counts_.emplace(e.id(), c);
    return c;
  }

 private:
  GroupPresentation p_;
  std::map<std::string, std::optional<HomCount>> counts_;
};

struct ReferenceKnot {
  KnotSpec spec;
  LinkDiagram diagram;
  LinkDiagram mirror_diagram;
  bool amphichiral = false;
  AbelianInvariants double_cover;
  std::shared_ptr<CountCache> counts;
};

inline constexpr int kReferenceFingerprintBound = 24;

inline ReferenceKnot build_reference(const KnotSpec& spec) {
  ReferenceKnot r{spec, {}, {}, false, {}, nullptr};
  if (const auto* s = std::get_if<SchubertForm>(&spec)) {
    if (s->components() != 1) throw NotAKnot(to_string(*s) + " has two components");
    r.diagram = tb_diagram(*s);
    r.amphichiral = tb_equivalent(*s, tb_mirror(*s), false);
  } else {
    const auto& f = std::get<MontesinosForm>(spec);
    if (f.size() != 3) throw InvalidForm("a Montesinos reference needs exactly three tangles");
    r.diagram = mont_diagram(f);
    if (r.diagram.component_count() != 1) throw NotAKnot(to_string(f) + " is a link");
    r.amphichiral = mont_equivalent(f, mont_mirror(f));
  }
  r.mirror_diagram = canonical(mirror_diagram(r.diagram));
  r.double_cover = cover_homology(CoverSpec::branched2(wirtinger(r.diagram)));
  r.counts = std::make_shared<CountCache>(wirtinger(r.diagram));
  for (const auto& e : group_catalog()) {
    if (e.order() > kReferenceFingerprintBound) break;
    r.counts->get(e, kDefaultSearchCeiling);
  }
  return r;
}

struct Budget {
  int first_stage = 0;
  int max_stage = 12;
  int order_base = 6;
  int order_step = 2;
  int crossing_step = 1;
  /// Diagrams expanded per stage by the move search.
  std::size_t max_nodes = 200000;
  std::optional<double> max_seconds;
  double search_ceiling = kDefaultSearchCeiling;

  int order_bound(int stage) const { return order_base + order_step * stage; }
  int crossing_bound(int stage, int crossings) const { return crossings + crossing_step * stage; }
};

enum class VerdictKind { RepresentsK, RepresentsMirrorOnly, DoesNotRepresent, Inconclusive };

inline std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::RepresentsK: return "RepresentsK";
    case VerdictKind::RepresentsMirrorOnly: return "RepresentsMirrorOnly";
    case VerdictKind::DoesNotRepresent: return "DoesNotRepresent";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// Moves that take canonical(d) to the target diagram, one after another.
struct Certificate {
  std::string target;  // "reference", "reversed reference", "mirror", "reversed mirror"
  LinkDiagram target_diagram;
  std::vector<ReidemeisterMove> moves;
};

struct Witness {
  std::string kind;  // "group" or "invariant"
  std::string name;  // catalog id, or the invariant's name
  std::string diagram_value;
  std::string reference_value;
  std::optional<HomCount> diagram_counts, reference_counts;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::optional<Certificate> certificate;
  std::optional<Witness> witness;
  int stages = 0;        // stages completed; resume with first_stage = stages
  std::size_t nodes = 0;  // diagrams expanded in total
  int order_bound = 0;    // largest group order compared
  int crossing_bound = 0;
};

namespace detail {

struct SearchResult {
  std::optional<Certificate> certificate;
  std::size_t expanded = 0;
  bool timed_out = false;
};

/// Best-first search from `start`: fewest crossings first, then depth, then
/// discovery order. Visited diagrams are keyed by canonical form.
inline SearchResult move_search(const LinkDiagram& start,
                                const std::vector<std::pair<std::string, LinkDiagram>>& targets,
                                int crossing_bound, std::size_t max_nodes,
                                const std::function<bool()>& out_of_time) {
  SearchResult result;
  std::unordered_map<std::string, int> target_of;
  for (std::size_t i = 0; i < targets.size(); ++i)
    target_of.emplace(diagram_key(targets[i].second), static_cast<int>(i));

  struct Node {
    LinkDiagram d;
    int parent;
    ReidemeisterMove move;
    int depth;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, int> seen;
  using Entry = std::tuple<int, int, int>;  // crossings, depth, node
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  auto finish = [&](int node, int target) {
    Certificate c{targets[target].first, targets[target].second, {}};
    for (int v = node; nodes[v].parent >= 0; v = nodes[v].parent) c.moves.push_back(nodes[v].move);
    std::reverse(c.moves.begin(), c.moves.end());
    result.certificate = std::move(c);
  };

  LinkDiagram root = canonical(start);
  nodes.push_back({root, -1, {}, 0});
  seen.emplace(diagram_key(root), 0);
  if (auto it = target_of.find(diagram_key(root)); it != target_of.end()) {
    finish(0, it->second);
    return result;
  }
  open.emplace(root.crossing_count(), 0, 0);
  while (!open.empty() && result.expanded < max_nodes) {
    if ((result.expanded & 63) == 0 && out_of_time()) {
      result.timed_out = true;
      break;
    }
    auto [crossings, depth, id] = open.top();
    open.pop();
    ++result.expanded;
    const LinkDiagram current = nodes[id].d;
    for (const auto& m : enumerate_moves(current, crossing_bound)) {
      LinkDiagram next;
      try {
        next = apply_move(current, m);
      } catch (const PatternMismatch&) {
        continue;
      }
      std::string key = diagram_key(next);
      if (seen.contains(key)) continue;
      int child = static_cast<int>(nodes.size());
      nodes.push_back({next, id, m, depth + 1});
      seen.emplace(std::move(key), child);
      if (auto it = target_of.find(diagram_key(next)); it != target_of.end()) {
        finish(child, it->second);
        return result;
      }
      open.emplace(next.crossing_count(), depth + 1, child);
    }
  }
  return result;
}

}  // namespace detail

/// Decide whether `d` represents the reference knot, its mirror image only,
/// or neither, within the budget.
inline Verdict recognize(const LinkDiagram& d, const ReferenceKnot& ref, const Budget& budget = {}) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  auto out_of_time = [&] {
    return budget.max_seconds &&
           std::chrono::duration<double>(clock::now() - t0).count() > *budget.max_seconds;
  };
  Verdict v;
  auto reject = [&](Witness w) {
    v.kind = VerdictKind::DoesNotRepresent;
    v.witness = std::move(w);
    return v;
  };

  // Pre-filters.
  if (d.component_count() != 1)
    return reject({"invariant", "component count", std::to_string(d.component_count()), "1", {}, {}});
  GroupPresentation group = wirtinger(d);
  auto h1 = abelian_invariants(group);
  if (!(h1.free_rank == 1 && h1.torsion.empty()))
    return reject({"invariant", "abelianization", to_string(h1), "Z", {}, {}});
  std::optional<Witness> invariant_witness;
  auto cover = cover_homology(CoverSpec::branched2(group));
  if (!(cover == ref.double_cover))
    invariant_witness = Witness{"invariant", "double-cover homology", to_string(cover),
                                to_string(ref.double_cover), {}, {}};

  CountCache mine(group);
  std::size_t compared = 0;  // catalog entries compared so far
  const auto& catalog = group_catalog();
  std::vector<std::pair<std::string, LinkDiagram>> targets = {
      {"reference", ref.diagram},
      {"reversed reference", canonical(reverse_diagram(ref.diagram))},
      {"mirror", ref.mirror_diagram},
      {"reversed mirror", canonical(reverse_diagram(ref.mirror_diagram))},
  };

  for (int stage = budget.first_stage; stage <= budget.max_stage; ++stage) {
    if (out_of_time()) break;
    // (a) separation by finite quotients
    v.order_bound = budget.order_bound(stage);
    for (; compared < catalog.size() && catalog[compared].order() <= v.order_bound; ++compared) {
      const auto& e = catalog[compared];
      auto a = mine.get(e, budget.search_ceiling);
      auto b = ref.counts->get(e, budget.search_ceiling);
      if (a && b && *a != *b) return reject({"group", e.id(), "", "", a, b});
    }
    // a failed cheap invariant is reported once the quick group checks are done
    if (invariant_witness) return reject(*invariant_witness);

    // (b) certification by Reidemeister moves
    v.crossing_bound = budget.crossing_bound(stage, std::max(d.crossing_count(), ref.diagram.crossing_count()));
    auto found = detail::move_search(d, targets, v.crossing_bound, budget.max_nodes, out_of_time);
    v.nodes += found.expanded;
    if (found.certificate) {
      bool mirror_side = found.certificate->target.find("mirror") != std::string::npos;
      v.kind = mirror_side && !ref.amphichiral ? VerdictKind::RepresentsMirrorOnly
                                               : VerdictKind::RepresentsK;
      v.certificate = std::move(found.certificate);
      v.stages = stage + 1;
      return v;
    }
    v.stages = stage + 1;
    if (found.timed_out) break;
  }
  v.kind = VerdictKind::Inconclusive;
  return v;
}

/// Apply a certificate's moves to d; true iff the result is its target.
inline bool replay(const LinkDiagram& d, const Certificate& c) {
  LinkDiagram cur = canonical(d);
  try {
    for (const auto& m : c.moves) cur = apply_move(cur, m);
  } catch (const PatternMismatch&) {
    return false;
  }
  return cur == canonical(c.target_diagram);
}

struct Distinguished {
  std::string group;
  HomCount first, second;
};

struct PairInconclusive {
  int order_bound;
};

using PairVerdict = std::variant<Distinguished, PairInconclusive>;

/// The separation half of recognize on its own.
inline PairVerdict recognize_pair(const GroupPresentation& p1, const GroupPresentation& p2,
                                  const Budget& budget = {}) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  CountCache a(p1), b(p2);
  const int bound = budget.order_bound(budget.max_stage);
  for (const auto& e : group_catalog()) {
    if (e.order() > bound) break;
    if (budget.max_seconds &&
        std::chrono::duration<double>(clock::now() - t0).count() > *budget.max_seconds)
      return PairInconclusive{e.order() - 1};
    auto x = a.get(e, budget.search_ceiling), y = b.get(e, budget.search_ceiling);
    if (x && y && *x != *y) return Distinguished{e.id(), *x, *y};
  }
  return PairInconclusive{bound};
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json(const ReidemeisterMove& m) {
  return {{"kind", move_kind_name(m.kind)}, {"site", m.site}};
}

inline nlohmann::json to_json(const HomCount& c) { return {{"hom", c.hom}, {"epi", c.epi}}; }

inline nlohmann::json to_json(const Verdict& v) {
  nlohmann::json j = {{"verdict", to_string(v.kind)},
                      {"stages", v.stages},
                      {"nodes", v.nodes},
                      {"order_bound", v.order_bound},
                      {"crossing_bound", v.crossing_bound}};
  if (v.certificate) {
    nlohmann::json moves = nlohmann::json::array();
    for (const auto& m : v.certificate->moves) moves.push_back(to_json(m));
    j["certificate"] = {{"target", v.certificate->target}, {"moves", moves}};
  }
  if (v.witness) {
    const auto& w = *v.witness;
    nlohmann::json wj = {{"kind", w.kind}, {"name", w.name}};
    if (w.diagram_counts) {
      wj["diagram"] = to_json(*w.diagram_counts);
      wj["reference"] = to_json(*w.reference_counts);
    } else {
      wj["diagram"] = w.diagram_value;
      wj["reference"] = w.reference_value;
    }
    j["witness"] = wj;
  }
  return j;
}

inline nlohmann::json to_json(const PairVerdict& v) {
  if (const auto* d = std::get_if<Distinguished>(&v))
    return {{"verdict", "Distinguished"},
            {"group", d->group},
            {"first", to_json(d->first)},
            {"second", to_json(d->second)}};
  return {{"verdict", "Inconclusive"}, {"order_bound", std::get<PairInconclusive>(v).order_bound}};
}

}  // namespace knotrec
