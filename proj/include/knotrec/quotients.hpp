#pragma once

// Finite-quotient fingerprints: exact counts of homomorphisms and
// epimorphisms from a finitely presented group into catalog groups.

#include "knotrec/errors.hpp"
#include "knotrec/finite_group.hpp"
#include "knotrec/presentation.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace knotrec {

struct HomCount {
  std::uint64_t hom = 0;
  std::uint64_t epi = 0;
  bool operator==(const HomCount&) const = default;
};

/// Default bound on the number of candidate image tuples examined.
inline constexpr double kDefaultSearchCeiling = 2e8;

namespace detail {

class HomSearch {
 public:
  HomSearch(const GroupPresentation& p, const FiniteGroup& g)
      : p_(p), g_(g), image_(p.generator_count + 1, 0), by_depth_(p.generator_count + 1) {
    for (const auto& r : p.relators) {
      int top = 0;
      for (int x : r) top = std::max(top, std::abs(x));
      by_depth_[top].push_back(&r);
    }
  }

  HomCount run() {
    const int k = p_.generator_count;
    if (k == 0) {
      // only relators without generators: empty words
      return {1, g_.order() == 1 ? 1u : 0u};
    }
    HomCount total;
    // Conjugating a homomorphism permutes the image of x1 within its class.
    for (auto [rep, size] : g_.classes()) {
      image_[1] = rep;
      current_ = {};
      if (relators_hold(1)) descend(2);
      total.hom += current_.hom * static_cast<std::uint64_t>(size);
      total.epi += current_.epi * static_cast<std::uint64_t>(size);
    }
    return total;
  }

 private:
  int evaluate(const Word& w) const {
    int acc = 0;
    for (int x : w) acc = g_.mul(acc, x > 0 ? image_[x] : g_.inv(image_[-x]));
    return acc;
  }

  bool relators_hold(int depth) const {
    for (const Word* r : by_depth_[depth])
      if (evaluate(*r) != 0) return false;
    return true;
  }

  void descend(int depth) {
    if (depth > p_.generator_count) {
      ++current_.hom;
      std::vector<int> gens(image_.begin() + 1, image_.end());
      if (g_.generates(gens)) ++current_.epi;
      return;
    }
    for (int e = 0; e < g_.order(); ++e) {
      image_[depth] = e;
      if (relators_hold(depth)) descend(depth + 1);
    }
  }

  const GroupPresentation& p_;
  const FiniteGroup& g_;
  std::vector<int> image_;
  std::vector<std::vector<const Word*>> by_depth_;
  HomCount current_;
};

}  // namespace detail

/// Exact numbers of homomorphisms and surjections p -> g. Throws
/// SearchCeilingExceeded when the worst-case number of image tuples
/// (class count times |g|^(generators - 1)) exceeds `ceiling`.
inline HomCount count_homs(const GroupPresentation& p, const FiniteGroup& g,
                           double ceiling = kDefaultSearchCeiling) {
  if (p.generator_count > 0) {
    double work = static_cast<double>(g.classes().size()) *
                  std::pow(static_cast<double>(g.order()), p.generator_count - 1);
    if (work > ceiling)
      throw SearchCeilingExceeded("hom search into " + g.id() + " over " +
                                  std::to_string(p.generator_count) + " generators");
  }
  return detail::HomSearch(p, g).run();
}

struct FingerprintEntry {
  std::string group;
  std::optional<HomCount> counts;  // empty when the search ceiling was hit
};

struct QuotientFingerprint {
  int bound = 0;
  std::vector<FingerprintEntry> entries;
};

/// Hom/epi counts into every catalog group of order <= order_bound, in
/// catalog order. The presentation is simplified first.
inline QuotientFingerprint fingerprint(const GroupPresentation& p, int order_bound,
                                       double ceiling = kDefaultSearchCeiling) {
  GroupPresentation s = simplify(p);
  QuotientFingerprint f{order_bound, {}};
  for (const auto& e : group_catalog()) {
    if (e.order() > order_bound) break;
    FingerprintEntry entry{e.id(), std::nullopt};
    try {
      entry.counts = count_homs(s, e.group(), ceiling);
    } catch (const SearchCeilingExceeded&) {
    }
    f.entries.push_back(std::move(entry));
  }
  return f;
}

inline nlohmann::json to_json(const QuotientFingerprint& f) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : f.entries) {
    if (e.counts)
      entries.push_back({{"group", e.group}, {"hom", e.counts->hom}, {"epi", e.counts->epi}});
    else
      entries.push_back({{"group", e.group}, {"unknown", true}});
  }
  return {{"bound", f.bound}, {"entries", entries}};
}

struct NotFoundWithin {
  int bound;
};

using Separation = std::variant<std::string, NotFoundWithin>;

/// The first catalog group (by order, dihedral first) whose counts differ,
/// searching groups of order <= bound. Entries whose search hit the ceiling
/// on either side are skipped, so a returned group always separates.
inline Separation first_distinguishing_group(const GroupPresentation& p1,
                                             const GroupPresentation& p2, int bound,
                                             double ceiling = kDefaultSearchCeiling) {
  GroupPresentation a = simplify(p1), b = simplify(p2);
  for (const auto& e : group_catalog()) {
    if (e.order() > bound) break;
    try {
      if (count_homs(a, e.group(), ceiling) != count_homs(b, e.group(), ceiling)) return e.id();
    } catch (const SearchCeilingExceeded&) {
    }
  }
  return NotFoundWithin{bound};
}

}  // namespace knotrec
