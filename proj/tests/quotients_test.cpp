#include "knotrec/moves.hpp"
#include "knotrec/quotients.hpp"
#include "test_diagrams.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

namespace knotrec {
namespace {

using testing::figure_eight;
using testing::hopf;
using testing::trefoil;
using testing::whitehead;

// Brute-force oracle working directly on permutations: every tuple of images
// is tried, with no conjugacy reduction and no multiplication table.
using Perm = std::vector<int>;

Perm compose(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
  return r;
}

Perm invert(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
  return r;
}

std::set<Perm> closure(const std::vector<Perm>& gens, int degree) {
  Perm e(degree);
  std::iota(e.begin(), e.end(), 0);
  std::set<Perm> seen{e};
  std::vector<Perm> todo{e};
  while (!todo.empty()) {
    Perm x = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      Perm y = compose(x, g);
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen;
}

HomCount brute_force(const GroupPresentation& p, const std::vector<Perm>& gens, int degree) {
  auto group = closure(gens, degree);
  std::vector<Perm> elems(group.begin(), group.end());
  Perm e(degree);
  std::iota(e.begin(), e.end(), 0);
  HomCount c;
  std::vector<std::size_t> idx(p.generator_count, 0);
  for (;;) {
    bool ok = true;
    for (const auto& r : p.relators) {
      Perm acc = e;
      for (int x : r) {
        const Perm& g = elems[idx[std::abs(x) - 1]];
        acc = compose(acc, x > 0 ? g : invert(g));
      }
      if (acc != e) ok = false;
    }
    if (ok) {
      ++c.hom;
      std::vector<Perm> images;
      for (auto i : idx) images.push_back(elems[i]);
      if (closure(images, degree).size() == elems.size()) ++c.epi;
    }
    int k = 0;
    while (k < p.generator_count && ++idx[k] == elems.size()) idx[k++] = 0;
    if (k == p.generator_count) break;
  }
  return c;
}

const std::vector<Perm> kS3 = {{1, 0, 2}, {1, 2, 0}};
const std::vector<Perm> kA4 = {{1, 2, 0, 3}, {1, 3, 2, 0}};
const std::vector<Perm> kD10 = {{1, 2, 3, 4, 0}, {0, 4, 3, 2, 1}};

GroupPresentation group_of(const LinkDiagram& d) { return simplify(wirtinger(d)); }

TEST(Catalog, OrdersAndCanonicalOrder) {
  const auto& cat = group_catalog();
  int last_order = 0;
  std::set<std::string> ids;
  for (const auto& e : cat) {
    EXPECT_GE(e.order(), last_order);
    last_order = e.order();
    EXPECT_TRUE(ids.insert(e.id()).second) << e.id();
    EXPECT_EQ(e.group().order(), e.order()) << e.id();
  }
  EXPECT_EQ(cat.front().id(), "Z2");
  EXPECT_EQ(catalog_entry("PSL(2,7)").group().order(), 168);
  EXPECT_EQ(catalog_entry("PSL(2,8)").group().order(), 504);
  EXPECT_EQ(catalog_entry("PSL(2,11)").group().order(), 660);
  EXPECT_EQ(catalog_entry("PSL(2,13)").group().order(), 1092);
  // dihedral first within an order
  for (std::size_t i = 0; i < cat.size(); ++i)
    if (cat[i].id() == "D12") {
      EXPECT_EQ(cat[i + 1].id(), "Z12");
    }
  EXPECT_THROW(catalog_entry("Q8"), std::out_of_range);
}

TEST(Catalog, ClassSizesSumToOrderAndTablesAreGroups) {
  for (const auto& id : {"S3", "D8", "A4", "S4", "A5", "Z7", "PSL(2,7)"}) {
    const auto& g = catalog_entry(id).group();
    int total = 0;
    for (auto [rep, size] : g.classes()) total += size;
    EXPECT_EQ(total, g.order()) << id;
    for (int a = 0; a < g.order(); a += 7)
      for (int b = 0; b < g.order(); b += 5)
        for (int c = 0; c < g.order(); c += 3)
          ASSERT_EQ(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c))) << id;
  }
  EXPECT_EQ(catalog_entry("A5").group().classes().size(), 5u);
  EXPECT_EQ(catalog_entry("PSL(2,7)").group().classes().size(), 6u);
}

TEST(CountHoms, DocumentedValues) {
  const auto& s3 = catalog_entry("S3").group();
  EXPECT_EQ(count_homs(wirtinger(LinkDiagram::unknot()), s3), (HomCount{6, 0}));
  EXPECT_EQ(count_homs(group_of(trefoil()), s3), (HomCount{12, 6}));
  EXPECT_EQ(count_homs(group_of(figure_eight()), s3), (HomCount{6, 0}));
  EXPECT_EQ(count_homs(parse_presentation("< | >"), s3), (HomCount{1, 0}));
}

TEST(CountHoms, AgreesWithBruteForceOracle) {
  for (const auto& d : {trefoil(), figure_eight(), hopf(), whitehead()}) {
    auto p = group_of(d);
    ASSERT_LE(p.generator_count, 3);
    EXPECT_EQ(count_homs(p, catalog_entry("S3").group()), brute_force(p, kS3, 3));
    EXPECT_EQ(count_homs(p, catalog_entry("A4").group()), brute_force(p, kA4, 4));
    EXPECT_EQ(count_homs(p, catalog_entry("D10").group()), brute_force(p, kD10, 5));
  }
  // unsimplified Wirtinger presentation as well
  auto w = wirtinger(figure_eight());
  EXPECT_EQ(count_homs(w, catalog_entry("D10").group()), brute_force(w, kD10, 5));
}

TEST(CountHoms, KnotGroupsIntoCyclicGroups) {
  for (const auto& d : {trefoil(), figure_eight()}) {
    auto p = group_of(d);
    for (int n = 2; n <= 12; ++n) {
      auto c = count_homs(p, catalog_entry("Z" + std::to_string(n)).group());
      EXPECT_EQ(c.hom, static_cast<std::uint64_t>(n));
      // surjective iff the meridian maps to a generator: Euler phi(n)
      int phi = 0;
      for (int k = 1; k <= n; ++k) phi += std::gcd(k, n) == 1;
      EXPECT_EQ(c.epi, static_cast<std::uint64_t>(phi));
    }
  }
}

TEST(CountHoms, SearchCeiling) {
  auto p = wirtinger(whitehead());
  EXPECT_THROW(count_homs(p, catalog_entry("A5").group(), 1e3), SearchCeilingExceeded);
  auto f = fingerprint(p, 60, 1e3);
  bool unknown = false;
  for (const auto& e : f.entries) unknown |= !e.counts.has_value();
  EXPECT_TRUE(unknown);
}

TEST(Fingerprint, JsonAndSeparation) {
  auto f = fingerprint(wirtinger(LinkDiagram::unknot()), 6);
  for (const auto& e : f.entries) EXPECT_EQ(e.counts->epi > 0, e.group.starts_with("Z"));
  auto j = to_json(fingerprint(group_of(trefoil()), 6));
  EXPECT_EQ(j["bound"], 6);
  bool found = false;
  for (const auto& e : j["entries"])
    if (e["group"] == "S3") {
      found = true;
      EXPECT_EQ(e["hom"], 12);
      EXPECT_EQ(e["epi"], 6);
    }
  EXPECT_TRUE(found);

  auto t = group_of(trefoil()), e8 = group_of(figure_eight());
  EXPECT_EQ(std::get<std::string>(first_distinguishing_group(t, e8, 60)), "S3");
  EXPECT_EQ(std::get<NotFoundWithin>(first_distinguishing_group(t, t, 24)).bound, 24);
  auto vs_unknot = first_distinguishing_group(t, wirtinger(LinkDiagram::unknot()), 60);
  EXPECT_EQ(std::get<std::string>(vs_unknot), "S3");
}

TEST(Fingerprint, InvariantUnderReidemeisterMoves) {
  std::mt19937 rng(77);
  for (const auto& base : {trefoil(), figure_eight(), whitehead()}) {
    auto reference = to_json(fingerprint(wirtinger(base), 12));
    for (int variant = 0; variant < 20; ++variant) {
      LinkDiagram d = canonical(base);
      for (int step = 0; step < 12; ++step) {
        auto moves = enumerate_moves(d, base.crossing_count() + 4);
        if (moves.empty()) break;
        d = apply_move(d, moves[rng() % moves.size()]);
      }
      EXPECT_EQ(to_json(fingerprint(wirtinger(d), 12)), reference);
    }
  }
}

}  // namespace
}  // namespace knotrec
