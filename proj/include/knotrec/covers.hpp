#pragma once

// Cyclic covers of link complements and the branched covers obtained by
// filling them, as presentations of the corresponding subgroups.

#include "knotrec/arith.hpp"
#include "knotrec/coset.hpp"
#include "knotrec/errors.hpp"
#include "knotrec/presentation.hpp"
#include "knotrec/smith.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace knotrec {

enum class CoverKind { Balanced2, Cyclic, Branched2, BranchedCyclic };

struct CoverSpec {
  CoverKind kind = CoverKind::Branched2;
  int degree = 2;  // r for the cyclic kinds; always 2 otherwise
  GroupPresentation source;

  static CoverSpec balanced2(GroupPresentation p) { return {CoverKind::Balanced2, 2, std::move(p)}; }
  static CoverSpec branched2(GroupPresentation p) { return {CoverKind::Branched2, 2, std::move(p)}; }
  static CoverSpec cyclic(int r, GroupPresentation p) { return {CoverKind::Cyclic, r, std::move(p)}; }
  static CoverSpec branched_cyclic(int r, GroupPresentation p) {
    return {CoverKind::BranchedCyclic, r, std::move(p)};
  }
};

namespace detail {

/// Images mod r of the generators under the homomorphism sending every
/// marked meridian to 1, found by backtracking; relators are checked as
/// soon as all their generators are assigned.
inline std::optional<std::vector<int>> meridian_character(const GroupPresentation& p, int r) {
  const int k = p.generator_count;
  struct Constraint {
    std::vector<int> exponent;  // per generator, 1-based
    int target;
  };
  std::vector<std::vector<Constraint>> at(k + 1);
  auto add = [&](const Word& w, int target) {
    Constraint c{std::vector<int>(k + 1, 0), target};
    int top = 0;
    for (int x : w) {
      c.exponent[std::abs(x)] += x > 0 ? 1 : -1;
      top = std::max(top, std::abs(x));
    }
    at[top].push_back(std::move(c));
  };
  for (const auto& rel : p.relators) add(rel, 0);
  for (const auto& m : *p.meridian_marks) add(m, 1);
  for (const auto& c : at[0])
    if (mod(c.target, r) != 0) return std::nullopt;

  std::vector<int> v(k + 1, 0);
  auto holds = [&](int depth) {
    for (const auto& c : at[depth]) {
      std::int64_t s = 0;
      for (int g = 1; g <= depth; ++g) s += static_cast<std::int64_t>(c.exponent[g]) * v[g];
      if (mod(s - c.target, r) != 0) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, int depth) -> bool {
    if (depth > k) return true;
    for (int x = 0; x < r; ++x) {
      v[depth] = x;
      if (holds(depth) && self(self, depth + 1)) return true;
    }
    return false;
  };
  if (!search(search, 1)) return std::nullopt;
  return std::vector<int>(v.begin() + 1, v.end());
}

inline CosetTable cyclic_table(int generators, const std::vector<int>& images, int r) {
  CosetTable t{generators, std::vector<std::vector<int>>(r, std::vector<int>(2 * generators))};
  for (int c = 0; c < r; ++c)
    for (int g = 0; g < generators; ++g) {
      t.table[c][2 * g] = static_cast<int>(mod(c + images[g], r));
      t.table[c][2 * g + 1] = static_cast<int>(mod(c - images[g], r));
    }
  return t;
}

}  // namespace detail

/// Presentation of the cover's fundamental group. The unbranched kinds are
/// the kernel of the map to Z/r sending each meridian to 1; the branched
/// kinds also kill the lift of each meridian's r-th power. The meridian
/// marks of the result are those lifts.
inline GroupPresentation cover_group(const CoverSpec& spec) {
  if (!spec.source.meridian_marks) throw MissingMeridians("cover needs meridian marks on the source");
  const bool cyclic = spec.kind == CoverKind::Cyclic || spec.kind == CoverKind::BranchedCyclic;
  const int r = cyclic ? spec.degree : 2;
  if (r < 2) throw InvalidForm("cover degree must be at least 2");
  if (cyclic && spec.source.meridian_marks->size() != 1)
    throw MultiComponentCyclic("r-fold cyclic covers are defined here for knots only, got " +
                               std::to_string(spec.source.meridian_marks->size()) + " components");

  GroupPresentation p = simplify(spec.source);
  auto images = detail::meridian_character(p, r);
  if (!images) throw StructureError("meridians do not define a map onto Z/" + std::to_string(r));
  SchreierRewriter rs(p, detail::cyclic_table(p.generator_count, *images, r));
  GroupPresentation sub = rs.presentation();

  std::vector<Word> lifts;
  for (const auto& m : *p.meridian_marks) lifts.push_back(rs.rewrite(power(m, r)));
  const bool branched = spec.kind == CoverKind::Branched2 || spec.kind == CoverKind::BranchedCyclic;
  if (branched)
    for (const auto& l : lifts) sub.relators.push_back(l);
  return simplify(GroupPresentation(sub.generator_count, std::move(sub.relators), std::move(lifts)));
}

inline AbelianInvariants cover_homology(const CoverSpec& spec) {
  return abelian_invariants(cover_group(spec));
}

inline std::string to_string(CoverKind k) {
  switch (k) {
    case CoverKind::Balanced2: return "balanced2";
    case CoverKind::Cyclic: return "cyclic";
    case CoverKind::Branched2: return "branched2";
    case CoverKind::BranchedCyclic: return "branched-cyclic";
  }
  return "?";
}

}  // namespace knotrec
