// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status
// 1 if any criterion fails.

#include "knotrec/knotrec.hpp"
#include "oracles.hpp"
#include "test_diagrams.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace knotrec {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failures of a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (failures_++ < 5) notes_ << (failures_ > 1 ? "; " : "") << what;
  }
  Outcome done(const std::string& summary) const {
    if (failures_ == 0) return {true, summary + ", " + std::to_string(checks_) + " checks"};
    return {false, std::to_string(failures_) + "/" + std::to_string(checks_) + " failed: " + notes_.str()};
  }

 private:
  int checks_ = 0, failures_ = 0;
  std::ostringstream notes_;
};

SchubertForm b(std::int64_t alpha, std::int64_t beta) { return SchubertForm::make(alpha, beta); }

MontesinosForm M(const std::string& s) { return parse_montesinos(s); }

bool valid_beta(std::int64_t alpha, std::int64_t beta) {
  return std::gcd(alpha, beta) == 1 && (alpha % 2 == 1 || beta % 2 != 0);
}

// ---------------------------------------------------------------------------

Outcome schubert_classification() {
  Check c;
  for (std::int64_t alpha = 2; alpha <= 30; ++alpha)
    for (std::int64_t x = -alpha + 1; x < alpha; ++x) {
      if (!valid_beta(alpha, x)) continue;
      // for odd alpha the oriented class lives among odd lifts mod 2 alpha
      auto lift = [&](std::int64_t v) { return alpha % 2 == 1 && v % 2 == 0 ? v + alpha : v; };
      auto unoriented = testing::inverse_orbit(x, alpha);
      auto oriented = testing::inverse_orbit(lift(x), 2 * alpha);
      for (std::int64_t y = -alpha + 1; y < alpha; ++y) {
        if (!valid_beta(alpha, y)) continue;
        std::string tag = "b(" + std::to_string(alpha) + "," + std::to_string(x) + ") ~ b(" +
                          std::to_string(alpha) + "," + std::to_string(y) + ")";
        c.expect(tb_equivalent(b(alpha, x), b(alpha, y), false) == unoriented.contains(mod(y, alpha)),
                 tag + " unoriented");
        c.expect(tb_equivalent(b(alpha, x), b(alpha, y), true) == oriented.contains(mod(lift(y), 2 * alpha)),
                 tag + " oriented");
      }
    }
  return c.done("alpha <= 30, both orientations");
}

Outcome dihedral_orbifolds() {
  Check c;
  int forms = 0;
  for (std::int64_t alpha : {3, 5, 7, 9, 11})
    for (std::int64_t beta = 1; beta < alpha; ++beta) {
      if (!valid_beta(alpha, beta)) continue;
      auto orb = orbifold_group(wirtinger(tb_diagram(b(alpha, beta))), 2);
      auto r = coset_enumeration(orb, {});
      const auto* t = std::get_if<CosetTable>(&r);
      c.expect(t && t->index() == 2 * alpha,
               to_string(b(alpha, beta)) + " order " + (t ? std::to_string(t->index()) : "?"));
      ++forms;
    }
  return c.done(std::to_string(forms) + " knots, order 2 alpha");
}

Outcome lens_homology() {
  Check c;
  const std::vector<std::pair<int, int>> cases{{3, 1}, {5, 3}, {7, 3}, {8, 3}, {9, 5}, {11, 3}};
  for (auto [alpha, beta] : cases) {
    auto h = cover_homology(CoverSpec::branched2(wirtinger(tb_diagram(b(alpha, beta)))));
    c.expect(h.free_rank == 0 && h.torsion == std::vector<BigInt>{alpha},
             to_string(b(alpha, beta)) + " gave " + to_string(h));
  }
  return c.done("six lens spaces");
}

AbelianInvariants branched2_homology(const MontesinosForm& f) {
  return cover_homology(CoverSpec::branched2(wirtinger(mont_diagram(f))));
}

Outcome montesinos_double_covers() {
  Check c;
  auto poincare = M("M(-1/2,1/3,1/5)");
  c.expect(branched2_homology(poincare).order() == 1, "M(-1/2,1/3,1/5) not a homology sphere");
  c.expect(mont_double_cover(poincare).h1_order() == 1, "M(-1/2,1/3,1/5) formula");
  for (const char* s : {"M(2/3,-1/3,-1/3)", "M(1/2,-1/4,-1/4)", "M(1/2,-1/3,-1/6)", "M(1/2,1/2,-1/2,-1/2)"}) {
    auto f = M(s);
    c.expect(branched2_homology(f).free_rank >= 1, std::string(s) + " finite H1");
    c.expect(euler_number(mont_double_cover(f)) == Rational(0), std::string(s) + " nonzero Euler number");
  }
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> num(-9, 9), den(2, 9);
  for (int k = 0; k < 20; ++k) {
    std::vector<Rational> ts;
    BigInt prod = 1;
    Rational sum(0);
    while (ts.size() < 3) {
      int p = num(rng), q = den(rng);
      if (p == 0 || std::gcd(p, q) != 1) continue;
      ts.emplace_back(p, q);
      prod *= q;
      sum += Rational(p, q);
    }
    BigInt want = prod * sum.numerator() / sum.denominator();
    if (want < 0) want = -want;
    auto f = mont_normalize(ts);
    auto h = branched2_homology(f);
    c.expect(h.order() == want && (want == 0) == (h.free_rank > 0), to_string(f) + " gave " + to_string(h));
  }
  return c.done("Poincare sphere, four Euler-zero forms, 20 random forms");
}

// ---------------------------------------------------------------------------

// All rotations and reversals of a form, with and without mirroring.
std::vector<std::vector<Rational>> arrangements(const MontesinosForm& f) {
  std::vector<std::vector<Rational>> out;
  const std::size_t n = f.size();
  for (int sign : {1, -1})
    for (int dir : {1, -1})
      for (std::size_t s = 0; s < n; ++s) {
        std::vector<Rational> v;
        for (std::size_t i = 0; i < n; ++i)
          v.push_back(Rational(sign) * f.tangles[dir > 0 ? (s + i) % n : (s + n - i) % n]);
        out.push_back(v);
      }
  return out;
}

// Same link: same length, sum and residues mod 1 position by position.
bool same_form(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) return false;
  Rational sa(0), sb(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational d = a[i] - b[i];
    if (d.denominator() != 1) return false;
    sa += a[i];
    sb += b[i];
  }
  return sa == sb;
}

bool listed(const MontesinosForm& f, const std::vector<MontesinosForm>& list) {
  for (const auto& v : arrangements(f))
    for (const auto& g : list)
      if (same_form(v, g.tangles)) return true;
  return false;
}

std::vector<MontesinosForm> forms(std::initializer_list<const char*> names) {
  std::vector<MontesinosForm> out;
  for (const char* s : names) out.push_back(M(s));
  return out;
}

// Moves the same form around: shifts integers between tangles, permutes
// dihedrally and mirrors.
std::vector<MontesinosForm> disguises(const MontesinosForm& f) {
  std::vector<MontesinosForm> out;
  for (auto v : arrangements(f)) {
    v[0] += 1;
    v[1] -= 1;
    out.push_back(mont_normalize(v));
  }
  return out;
}

Outcome geometrization_tables() {
  Check c;
  auto graph = forms({"M(2/3,-1/3,-1/3)", "M(1/2,-1/4,-1/4)", "M(1/2,-1/3,-1/6)", "M(1/2,1/2,-1/2,-1/2)"});
  auto seifert = forms({"M(-1/2,1/3,1/3)", "M(-1/2,1/3,1/4)", "M(-1/2,1/3,1/5)"});
  std::vector<MontesinosForm> family;
  for (int p = -1000; p <= 1000; ++p)
    if (std::abs(p) >= 2) family.push_back(mont_normalize(std::vector<Rational>{{-1, 2}, {1, 2}, {1, p}}));

  for (std::size_t i = 0; i < graph.size(); ++i)
    for (const auto& g : disguises(graph[i])) {
      c.expect(mont_geom_type(g) == GeomType::Graph, to_string(g) + " not graph");
      c.expect(fiber_intersection_number(g) == (i == 0 ? 3 : 1), to_string(g) + " fiber number");
    }
  for (const auto& s : seifert)
    for (const auto& g : disguises(s)) c.expect(mont_geom_type(g) == GeomType::Seifert, to_string(g) + " not seifert");
  for (std::size_t k = 0; k < family.size(); k += 37)
    for (const auto& g : disguises(family[k]))
      c.expect(mont_geom_type(g) == GeomType::Seifert, to_string(g) + " not seifert");

  std::mt19937 rng(77);
  std::uniform_int_distribution<int> num(-9, 9), den(2, 9), len(3, 4);
  int hyperbolic = 0;
  while (hyperbolic < 50) {
    std::vector<Rational> ts;
    const int n = len(rng);
    while (static_cast<int>(ts.size()) < n) {
      int p = num(rng), q = den(rng);
      if (p != 0 && std::gcd(p, q) == 1) ts.emplace_back(p, q);
    }
    auto f = mont_normalize(ts);
    if (f.size() < 3 || listed(f, graph) || listed(f, seifert) || (f.size() == 3 && listed(f, family))) continue;
    c.expect(mont_geom_type(f) == GeomType::Hyperbolic, to_string(f) + " not hyperbolic");
    bool threw = false;
    try {
      fiber_intersection_number(f);
    } catch (const NotGraphType&) {
      threw = true;
    }
    c.expect(threw, to_string(f) + " has a fiber number");
    ++hyperbolic;
  }
  return c.done("listed forms in disguise, 50 random hyperbolic forms");
}

Outcome gluing_normalization() {
  Check c;
  std::mt19937_64 rng(1000);
  const std::int64_t ns[] = {1, 2, 3, 4, 6};
  std::uniform_int_distribution<std::int64_t> coef(-60, 60), shift(-5, 5);
  for (int k = 0; k < 1000; ++k) {
    const std::int64_t n = ns[k % 5];
    const std::int64_t cc = rng() % 2 ? n : -n;
    std::int64_t a = coef(rng);
    while (std::gcd(a, cc) != 1) a = coef(rng);
    // a d - b c = +-1, solved by brute force over the small residue range
    const std::int64_t det = rng() % 2 ? 1 : -1;
    std::int64_t d = 0;
    while (mod(a * d - det, cc) != 0) ++d;
    d += shift(rng) * cc;
    const std::int64_t bb = (a * d - det) / cc;
    GluingMatrix m{a, bb, cc, d};
    auto [q1, q2] = normalize_gluing(m, n);
    auto unit = [](const UpperUnit& q) { return std::abs(q.x) == 1 && std::abs(q.y) == 1; };
    GluingMatrix l1 = q1.matrix(), l2 = q2.matrix();
    // product written out by hand
    std::int64_t t00 = l2.a * m.a + l2.b * m.c, t01 = l2.a * m.b + l2.b * m.d;
    std::int64_t t10 = l2.c * m.a + l2.d * m.c, t11 = l2.c * m.b + l2.d * m.d;
    std::int64_t p00 = t00 * l1.a + t01 * l1.c, p01 = t00 * l1.b + t01 * l1.d;
    std::int64_t p10 = t10 * l1.a + t11 * l1.c, p11 = t10 * l1.b + t11 * l1.d;
    c.expect(unit(q1) && unit(q2) && l1.c == 0 && l2.c == 0 && p00 == 1 && p01 == 0 && p10 == n && p11 == 1,
             to_json(m).dump() + " n=" + std::to_string(n));
  }
  return c.done("1000 matrices");
}

Outcome fingerprint_invariance() {
  Check c;
  const std::vector<std::pair<std::string, LinkDiagram>> bases{
      {"unknot", LinkDiagram::unknot()},
      {"trefoil", testing::trefoil()},
      {"figure-eight", testing::figure_eight()},
      {"b(7,3)", tb_diagram(b(7, 3))},
      {"M(1/3,-1/3,1/2)", mont_diagram(M("M(1/3,-1/3,1/2)"))},
  };
  int changed = 0;
  for (const auto& [name, base] : bases) {
    const auto want = to_json(fingerprint(wirtinger(base), 12));
    const auto start = diagram_to_json(canonical(base));
    const int bound = base.crossing_count() + 4;
    for (unsigned seed = 0; seed < 100; ++seed) {
      auto d = testing::scramble(base, 7919 * seed + 1, 4 + seed % 12, bound);
      changed += diagram_to_json(d) != start;
      c.expect(to_json(fingerprint(wirtinger(d), 12)) == want, name + " seed " + std::to_string(seed));
    }
  }
  // a walk that never leaves its start would prove nothing
  c.expect(changed >= 450, "only " + std::to_string(changed) + " scrambles moved");
  return c.done("5 bases x 100 scrambles (" + std::to_string(changed) + " moved), order <= 12");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome recognition() {
  Check c;
  Budget budget;
  budget.max_seconds = 60;
  const auto trefoil = build_reference(b(3, 1));

  for (unsigned seed = 1; seed <= 5; ++seed) {
    auto d = testing::scramble(testing::trefoil(), seed, 8, 9);
    auto t0 = std::chrono::steady_clock::now();
    auto v = recognize(d, trefoil, budget);
    double secs = seconds_since(t0);
    c.expect(v.kind == VerdictKind::RepresentsK && v.certificate && replay(d, *v.certificate) && secs < 60,
             "scramble " + std::to_string(seed) + ": " + to_string(v.kind));
  }

  auto t0 = std::chrono::steady_clock::now();
  auto v = recognize(testing::figure_eight(), trefoil, budget);
  double secs = seconds_since(t0);
  c.expect(v.kind == VerdictKind::DoesNotRepresent && v.witness && v.witness->name == "S3" &&
               v.witness->diagram_counts && v.witness->reference_counts && v.witness->diagram_counts->epi == 0 &&
               v.witness->reference_counts->epi == 6 && secs < 10,
           "figure-eight: " + to_json(v).dump());

  auto m = recognize(mirror_diagram(testing::trefoil()), trefoil, budget);
  c.expect(m.kind == VerdictKind::RepresentsMirrorOnly, "mirror trefoil: " + to_string(m.kind));

  auto fig8 = build_reference(b(5, 3));
  auto a = recognize(mirror_diagram(testing::figure_eight()), fig8, budget);
  c.expect(a.kind == VerdictKind::RepresentsK, "mirrored figure-eight: " + to_string(a.kind));
  return c.done("trefoil scrambles, S3 witness, mirror, amphichiral");
}

Outcome cyclic_branched_covers() {
  Check c;
  auto tref = wirtinger(testing::trefoil());
  auto fig8 = wirtinger(testing::figure_eight());
  c.expect(cover_homology(CoverSpec::branched_cyclic(2, tref)).torsion == std::vector<BigInt>{3}, "trefoil r=2");
  auto t3 = cover_homology(CoverSpec::branched_cyclic(3, tref));
  c.expect(t3.free_rank == 0 && t3.torsion == std::vector<BigInt>{2, 2}, "trefoil r=3 gave " + to_string(t3));
  c.expect(cover_homology(CoverSpec::branched_cyclic(2, fig8)).torsion == std::vector<BigInt>{5}, "figure-eight r=2");
  int compared = 0;
  for (const auto& [name, d] : testing::small_knots()) {
    if (d.crossing_count() > 8) continue;
    for (int r = 2; r <= 5; ++r) {
      BigInt want = testing::fox_branched_order(d, r);
      if (want == 0) continue;
      auto h = cover_homology(CoverSpec::branched_cyclic(r, wirtinger(d)));
      c.expect(h.order() == want, name + " r=" + std::to_string(r) + " gave " + to_string(h));
      ++compared;
    }
  }
  return c.done(std::to_string(compared) + " Fox-oracle comparisons");
}

struct Criterion {
  int id;
  std::string name;
  double limit;  // seconds; 0 for none
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace knotrec

int main() {
  using namespace knotrec;
  const std::vector<Criterion> criteria{
      {1, "two-bridge classification vs orbit closure", 10, schubert_classification},
      {2, "dihedral orbifold orders", 60, dihedral_orbifolds},
      {3, "lens-space homology", 120, lens_homology},
      {4, "Montesinos double covers", 0, montesinos_double_covers},
      {5, "geometrization tables", 0, geometrization_tables},
      {6, "gluing normalization", 1, gluing_normalization},
      {7, "fingerprint invariance", 600, fingerprint_invariance},
      {8, "recognition end to end", 0, recognition},
      {9, "cyclic branched covers vs Fox oracle", 0, cyclic_branched_covers},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = seconds_since(t0);
    if (o.pass && c.limit > 0 && secs > c.limit) {
      o.pass = false;
      o.detail += ", over the " + std::to_string(static_cast<int>(c.limit)) + " s limit";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << " (" << o.detail << "; "
              << timing << ")" << std::endl;
    failed += !o.pass;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
