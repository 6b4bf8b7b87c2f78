#include "knotrec/covers.hpp"
#include "knotrec/montesinos.hpp"
#include "knotrec/quotients.hpp"
#include "knotrec/twobridge.hpp"

#include <gtest/gtest.h>

#include <random>

namespace knotrec {
namespace {

MontesinosForm mf(std::initializer_list<Rational> ts) { return MontesinosForm{ts}; }

// Brute force: some rotation or reversal g of b differs from a by integers
// summing to zero.
bool brute_equivalent(const MontesinosForm& a, const MontesinosForm& b) {
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> images;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<Rational> fwd, bwd;
    for (std::size_t i = 0; i < n; ++i) {
      fwd.push_back(b.tangles[(s + i) % n]);
      bwd.push_back(b.tangles[(s + n - i) % n]);
    }
    images.push_back(fwd);
    images.push_back(bwd);
  }
  for (const auto& g : images) {
    Rational total(0);
    bool integral = true;
    for (std::size_t i = 0; i < n; ++i) {
      Rational d = a.tangles[i] - g[i];
      integral &= d.denominator() == 1;
      total += d;
    }
    if (integral && total.numerator() == 0) return true;
  }
  return false;
}

// Crossings of the alternating rational tangle: sum of the Euclidean quotients.
std::int64_t digit_sum(std::int64_t p, std::int64_t q) {
  p = std::llabs(p);
  q = std::llabs(q);
  std::int64_t total = 0;
  while (p && q) {
    if (p >= q) {
      total += p / q;
      p %= q;
    } else {
      total += q / p;
      q %= p;
    }
  }
  return total;
}

std::vector<MontesinosForm> three_tangle_sample() {
  std::vector<MontesinosForm> out;
  const std::vector<Rational> pool = {{1, 2},  {-1, 2}, {1, 3}, {-1, 3}, {2, 3},
                                      {-2, 3}, {3, 2},  {1, 4}, {-3, 4}, {2, 5}};
  std::mt19937 rng(5);
  for (int i = 0; i < 24; ++i)
    out.push_back(mf({pool[rng() % pool.size()], pool[rng() % pool.size()], pool[rng() % pool.size()]}));
  for (auto f : {mf({{3, 2}, {-2, 3}, {1, 4}}), mf({{-1, 2}, {1, 3}, {1, 5}}),
                 mf({{2, 3}, {-1, 3}, {-1, 3}}), mf({{-1, 2}, {1, 2}, {1, 3}}),
                 mf({{1, 2}, {-1, 4}, {-1, 4}})})
    out.push_back(f);
  return out;
}

TEST(Normalize, Examples) {
  EXPECT_EQ(mont_normalize(std::vector<Slope>{{3, 2}, {-2, 3}, {1, 4}}), mf({{3, 2}, {-2, 3}, {1, 4}}));
  EXPECT_EQ(mont_normalize(std::vector<Slope>{{1, 2}, {0, 1}, {-1, 3}}), mf({{1, 2}, {-1, 3}}));
  EXPECT_EQ(mont_normalize(std::vector<Slope>{{2, 1}, {1, 3}}), mf({{7, 3}}));
  // the last tangle folds into the first
  EXPECT_EQ(mont_normalize(std::vector<Slope>{{1, 2}, {1, 3}, {-1, 1}}), mf({{-1, 2}, {1, 3}}));
  EXPECT_EQ(mont_normalize(std::vector<Slope>{{3, 1}}), mf({{3, 1}}));
  EXPECT_THROW(mont_normalize(std::vector<Slope>{{1, 2}, {1, 0}}), InfinitySlope);
  EXPECT_THROW(mont_normalize(std::vector<Slope>{{0, 1}}), EmptyForm);
  EXPECT_THROW(mont_normalize(std::vector<Slope>{{1, 1}, {-1, 1}}), EmptyForm);
  EXPECT_THROW(mont_normalize(std::vector<Slope>{}), EmptyForm);
}

TEST(Normalize, MergeKeepsTheLink) {
  // diagrams built from the unmerged list and the merged form agree
  auto raw = mf({{2, 1}, {1, 3}});
  auto merged = mont_normalize(raw.tangles);
  auto a = wirtinger(mont_diagram(raw)), b = wirtinger(mont_diagram(merged));
  EXPECT_EQ(to_json(fingerprint(a, 24)), to_json(fingerprint(b, 24)));
  auto raw3 = mf({{1, 2}, {2, 1}, {-1, 3}, {1, 3}});
  auto merged3 = mont_normalize(raw3.tangles);
  EXPECT_EQ(merged3, mf({{1, 2}, {5, 3}, {1, 3}}));
  EXPECT_EQ(to_json(fingerprint(wirtinger(mont_diagram(raw3)), 12)),
            to_json(fingerprint(wirtinger(mont_diagram(merged3)), 12)));
}

TEST(Mirror, NegatesEverything) {
  auto f = mf({{2, 3}, {-1, 3}, {-1, 3}});
  EXPECT_EQ(mont_mirror(f), mf({{-2, 3}, {1, 3}, {1, 3}}));
  EXPECT_EQ(mont_mirror(mont_mirror(f)), f);
  EXPECT_EQ(mont_mirror(f).sum(), -f.sum());
}

TEST(Equivalent, Examples) {
  EXPECT_TRUE(mont_equivalent(mf({{-2, 3}, {1, 3}, {1, 3}}), mf({{1, 3}, {1, 3}, {-2, 3}})));
  EXPECT_FALSE(mont_equivalent(mf({{2, 3}, {-1, 3}, {-1, 3}}), mf({{-2, 3}, {1, 3}, {1, 3}})));
  EXPECT_TRUE(mont_equivalent(mf({{1, 2}, {-1, 3}, {-1, 6}}), mf({{-1, 2}, {2, 3}, {-1, 6}})));
  EXPECT_THROW(mont_equivalent(mf({{1, 3}}), mf({{1, 3}})), TooFewTangles);
}

TEST(Equivalent, AgreesWithBruteForce) {
  const std::vector<Rational> pool = {{1, 2}, {-1, 2}, {1, 3}, {2, 3}, {-1, 3}, {4, 3}, {1, 4}, {-3, 4}};
  std::mt19937 rng(11);
  for (int trial = 0; trial < 3000; ++trial) {
    std::size_t n = 2 + rng() % 3;
    MontesinosForm a, b;
    for (std::size_t i = 0; i < n; ++i) a.tangles.push_back(pool[rng() % pool.size()]);
    if (trial % 2) {
      // a shuffled, integrally shifted copy: often equivalent
      b = a;
      std::rotate(b.tangles.begin(), b.tangles.begin() + rng() % n, b.tangles.end());
      if (rng() % 2) std::reverse(b.tangles.begin(), b.tangles.end());
      std::size_t i = rng() % n, j = rng() % n;
      b.tangles[i] += 1;
      b.tangles[j] -= 1;
      if (rng() % 4 == 0) std::swap(b.tangles[0], b.tangles[n - 1]);
    } else {
      for (std::size_t i = 0; i < n; ++i) b.tangles.push_back(pool[rng() % pool.size()]);
    }
    ASSERT_EQ(mont_equivalent(a, b), brute_equivalent(a, b)) << to_string(a) << " " << to_string(b);
    ASSERT_EQ(mont_equivalent(a, b), mont_equivalent(b, a));
  }
}

TEST(GeomType, Examples) {
  EXPECT_EQ(mont_geom_type(mf({{1, 2}, {-1, 4}, {-1, 4}})), GeomType::Graph);
  EXPECT_EQ(mont_geom_type(mf({{-1, 2}, {1, 2}, {1, 7}})), GeomType::Seifert);
  EXPECT_EQ(mont_geom_type(mf({{3, 2}, {-2, 3}, {1, 4}})), GeomType::Hyperbolic);
  EXPECT_EQ(mont_geom_type(mf({{1, 2}, {1, 2}, {-1, 2}, {-1, 2}})), GeomType::Graph);
  EXPECT_EQ(mont_geom_type(mf({{1, 2}, {-1, 3}, {-1, 5}})), GeomType::Seifert);  // mirror
  EXPECT_EQ(mont_geom_type(mf({{-1, 2}, {3, 2}, {-6, 7}})), GeomType::Seifert);
  EXPECT_EQ(mont_geom_type(mf({{-1, 2}, {1, 3}, {1, 7}})), GeomType::Hyperbolic);
  EXPECT_THROW(mont_geom_type(mf({{1, 2}, {1, 3}})), TooFewTangles);
}

TEST(GeomType, SeifertFamilyMatchesEnumeration) {
  // symbolic family test against explicit members with |p| <= 60
  const std::vector<Rational> pool = {{1, 2}, {-1, 2}, {3, 2}, {1, 3}, {-1, 3}, {1, 5},
                                      {-1, 7}, {6, 7}, {-1, 9}, {1, 11}, {-12, 11}};
  for (const auto& x : pool)
    for (const auto& y : pool)
      for (const auto& z : pool) {
        auto f = mf({x, y, z});
        bool listed = false;
        for (int p = -60; p <= 60 && !listed; ++p) {
          if (p == 0) continue;
          auto g = mf({{-1, 2}, {1, 2}, {1, p}});
          listed = brute_equivalent(f, g) || brute_equivalent(mont_mirror(f), g);
        }
        for (auto g : {mf({{-1, 2}, {1, 3}, {1, 3}}), mf({{-1, 2}, {1, 3}, {1, 4}}),
                       mf({{-1, 2}, {1, 3}, {1, 5}})})
          listed |= brute_equivalent(f, g) || brute_equivalent(mont_mirror(f), g);
        bool graph = false;
        for (auto g : {mf({{2, 3}, {-1, 3}, {-1, 3}}), mf({{1, 2}, {-1, 4}, {-1, 4}}),
                       mf({{1, 2}, {-1, 3}, {-1, 6}})})
          graph |= brute_equivalent(f, g) || brute_equivalent(mont_mirror(f), g);
        GeomType want = graph ? GeomType::Graph : listed ? GeomType::Seifert : GeomType::Hyperbolic;
        ASSERT_EQ(mont_geom_type(f), want) << to_string(f);
      }
}

TEST(GeomType, InvariantUnderEquivalenceAndMirror) {
  for (const auto& f : three_tangle_sample()) {
    auto t = mont_geom_type(f);
    EXPECT_EQ(mont_geom_type(mont_mirror(f)), t);
    auto g = f;
    std::rotate(g.tangles.begin(), g.tangles.begin() + 1, g.tangles.end());
    g.tangles[0] += 2;
    g.tangles[1] -= 2;
    EXPECT_EQ(mont_geom_type(g), t);
    std::reverse(g.tangles.begin(), g.tangles.end());
    EXPECT_EQ(mont_geom_type(g), t);
  }
}

TEST(FiberIntersection, Values) {
  EXPECT_EQ(fiber_intersection_number(mf({{2, 3}, {-1, 3}, {-1, 3}})), 3);
  EXPECT_EQ(fiber_intersection_number(mf({{-2, 3}, {1, 3}, {1, 3}})), 3);
  EXPECT_EQ(fiber_intersection_number(mf({{1, 2}, {-1, 3}, {-1, 6}})), 1);
  EXPECT_EQ(fiber_intersection_number(mf({{1, 2}, {-1, 4}, {-1, 4}})), 1);
  EXPECT_EQ(fiber_intersection_number(mf({{1, 2}, {1, 2}, {-1, 2}, {-1, 2}})), 1);
  EXPECT_THROW(fiber_intersection_number(mf({{3, 2}, {-2, 3}, {1, 4}})), NotGraphType);
  EXPECT_THROW(fiber_intersection_number(mf({{1, 2}, {1, 3}})), NotGraphType);
}

TEST(DoubleCover, Examples) {
  auto s = mont_double_cover(mf({{3, 2}, {-2, 3}, {1, 4}}));
  EXPECT_EQ(to_string(s), "(0,0; 3/2,-2/3,1/4)");
  auto p = mont_double_cover(mf({{-1, 2}, {1, 3}, {1, 5}}));
  EXPECT_EQ(p.euler(), Rational(1, 30));
  EXPECT_EQ(p.h1_order(), 1);
  auto g = mont_double_cover(mf({{2, 3}, {-1, 3}, {-1, 3}}));
  EXPECT_EQ(g.euler(), Rational(0));
  EXPECT_EQ(g.h1_order(), 0);
  for (const auto& f : three_tangle_sample()) {
    auto m = mont_double_cover(mont_mirror(f));
    EXPECT_EQ(m.euler(), -mont_double_cover(f).euler());
    EXPECT_EQ(m.h1_order(), mont_double_cover(f).h1_order());
  }
}

TEST(Diagram, CrossingCountAndComponents) {
  for (const auto& f : three_tangle_sample()) {
    auto d = mont_diagram(f);
    std::int64_t want = 0;
    for (const auto& t : f.tangles) want += digit_sum(t.numerator(), t.denominator());
    EXPECT_EQ(d.crossing_count(), want) << to_string(f);
    // knots have odd determinant, links even (or zero)
    BigInt det = mont_double_cover(f).h1_order();
    EXPECT_EQ(d.component_count() == 1, det % 2 == 1) << to_string(f);
  }
}

TEST(Diagram, SingleTangles) {
  auto trefoil = wirtinger(tb_diagram(SchubertForm::make(3, 1)));
  EXPECT_EQ(to_json(fingerprint(wirtinger(mont_diagram(mf({{3, 1}}))), 24)),
            to_json(fingerprint(trefoil, 24)));
  // 1/3 is three vertical twists: its numerator closure is unknotted
  auto unknot = wirtinger(LinkDiagram::unknot());
  EXPECT_EQ(to_json(fingerprint(wirtinger(mont_diagram(mf({{1, 3}}))), 24)),
            to_json(fingerprint(unknot, 24)));
  // a single rational tangle closes to the two-bridge link of the same fraction
  EXPECT_EQ(mont_diagram(mf({{7, 3}})), tb_diagram(SchubertForm::make(7, 3)));
}

TEST(Diagram, DoubleCoverHomologyMatchesSeifertData) {
  auto check = [](const MontesinosForm& f) {
    auto h = cover_homology(CoverSpec::branched2(wirtinger(mont_diagram(f))));
    BigInt want = mont_double_cover(f).h1_order();
    EXPECT_EQ(h.order(), want) << to_string(f);
    EXPECT_EQ(want == 0, h.free_rank > 0) << to_string(f);
    return h;
  };
  for (const auto& f : three_tangle_sample()) check(f);
  auto h = check(mf({{-1, 2}, {1, 2}, {1, 3}}));
  // Seifert relations 2c1 = h, 2c2 = -h, 3c3 = -h, c1 + c2 + c3 = 0 give c1 = -3c2, 4c2 = 0
  EXPECT_EQ(to_string(h), "Z/4");
}

TEST(TextAndJson, RoundTrip) {
  auto f = parse_montesinos("M(3/2,-2/3,1/4)");
  EXPECT_EQ(f, mf({{3, 2}, {-2, 3}, {1, 4}}));
  EXPECT_EQ(to_string(f), "M(3/2,-2/3,1/4)");
  EXPECT_EQ(to_json(f), nlohmann::json::parse(R"({"tangles":[[3,2],[-2,3],[1,4]]})"));
  EXPECT_EQ(montesinos_from_json(to_json(f)), f);
  EXPECT_EQ(parse_montesinos(" M( 2 , 1/3 ) "), mf({{7, 3}}));
  EXPECT_THROW(parse_montesinos("M(1/2,x)"), SyntaxError);
  EXPECT_THROW(parse_montesinos("N(1/2)"), SyntaxError);
  EXPECT_THROW(parse_montesinos("M(1/2,1/0)"), InfinitySlope);
}

}  // namespace
}  // namespace knotrec
