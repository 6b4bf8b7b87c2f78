#pragma once

// Montesinos links M(p1/q1, ..., pn/qn): the numerator closure of a sum of
// rational tangles.

#include "knotrec/arith.hpp"
#include "knotrec/errors.hpp"
#include "knotrec/seifert.hpp"
#include "knotrec/tangle.hpp"
#include "knotrec/twobridge.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <regex>
#include <string>
#include <utility>
#include <vector>

namespace knotrec {

/// Nonzero reduced fractions; with two or more tangles none is an integer.
struct MontesinosForm {
  std::vector<Rational> tangles;

  std::size_t size() const { return tangles.size(); }
  Rational sum() const {
    Rational s(0);
    for (const auto& t : tangles) s += t;
    return s;
  }
  bool operator==(const MontesinosForm&) const = default;
};

/// Slopes as (p, q) pairs so that q = 0 can be reported.
using Slope = std::pair<std::int64_t, std::int64_t>;

/// Drop zero tangles, then fold each integral tangle into its right
/// neighbour (cyclically) until none is left or only one tangle remains.
inline MontesinosForm mont_normalize(const std::vector<Slope>& slopes) {
  std::vector<Rational> ts;
  for (auto [p, q] : slopes) {
    if (q == 0) throw InfinitySlope(std::to_string(p) + "/0 makes a connected sum");
    ts.emplace_back(p, q);
  }
  for (;;) {
    std::erase(ts, Rational(0));
    if (ts.size() < 2) break;
    auto it = std::find_if(ts.begin(), ts.end(), [](const Rational& r) { return is_integer(r); });
    if (it == ts.end()) break;
    std::size_t i = it - ts.begin();
    ts[(i + 1) % ts.size()] += ts[i];
    ts.erase(ts.begin() + i);
  }
  if (ts.empty()) throw EmptyForm("no nonzero tangles");
  return {ts};
}

inline MontesinosForm mont_normalize(const std::vector<Rational>& fs) {
  std::vector<Slope> slopes;
  for (const auto& f : fs) slopes.emplace_back(f.numerator(), f.denominator());
  return mont_normalize(slopes);
}

inline MontesinosForm mont_mirror(const MontesinosForm& f) {
  MontesinosForm m = f;
  for (auto& t : m.tangles) t = -t;
  return m;
}

/// Same length, same sum, and the residues mod 1 agree after a rotation,
/// possibly combined with a reversal.
inline bool mont_equivalent(const MontesinosForm& a, const MontesinosForm& b) {
  if (a.size() < 2 || b.size() < 2)
    throw TooFewTangles("equivalence needs two or more tangles; use the two-bridge classification");
  if (a.size() != b.size() || a.sum() != b.sum()) return false;
  const std::size_t n = a.size();
  for (int dir : {1, -1})
    for (std::size_t shift = 0; shift < n; ++shift) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        std::size_t j = dir > 0 ? (shift + i) % n : (shift + n - i) % n;
        ok = frac_part(a.tangles[i]) == frac_part(b.tangles[j]);
      }
      if (ok) return true;
    }
  return false;
}

namespace detail {

inline MontesinosForm mform(std::initializer_list<Rational> ts) { return {ts}; }

inline const std::vector<MontesinosForm>& graph_forms() {
  static const std::vector<MontesinosForm> forms = {
      mform({{2, 3}, {-1, 3}, {-1, 3}}),
      mform({{1, 2}, {-1, 4}, {-1, 4}}),
      mform({{1, 2}, {-1, 3}, {-1, 6}}),
      mform({{1, 2}, {1, 2}, {-1, 2}, {-1, 2}}),
  };
  return forms;
}

inline const std::vector<MontesinosForm>& seifert_forms() {
  static const std::vector<MontesinosForm> forms = {
      mform({{-1, 2}, {1, 3}, {1, 3}}),
      mform({{-1, 2}, {1, 3}, {1, 4}}),
      mform({{-1, 2}, {1, 3}, {1, 5}}),
  };
  return forms;
}

inline bool matches_up_to_mirror(const MontesinosForm& f, const MontesinosForm& g) {
  return f.size() == g.size() && (mont_equivalent(f, g) || mont_equivalent(mont_mirror(f), g));
}

/// M(-1/2, 1/2, 1/p) for some p != 0. With three tangles every ordering is
/// a rotation or reversal, so the test is on the sum and the residues.
/// The family is closed under mirror image.
inline bool in_seifert_family(const MontesinosForm& f) {
  if (f.size() != 3) return false;
  Rational s = f.sum();
  if (s.numerator() != 1 && s.numerator() != -1) return false;
  std::vector<Rational> res, want{{1, 2}, {1, 2}, frac_part(s)};
  for (const auto& t : f.tangles) res.push_back(frac_part(t));
  std::sort(res.begin(), res.end());
  std::sort(want.begin(), want.end());
  return res == want;
}

}  // namespace detail

inline GeomType mont_geom_type(const MontesinosForm& f) {
  if (f.size() < 3) throw TooFewTangles("geometric type of a two-bridge link; use tb_geom_type");
  for (const auto& g : detail::graph_forms())
    if (detail::matches_up_to_mirror(f, g)) return GeomType::Graph;
  if (detail::in_seifert_family(f)) return GeomType::Seifert;
  for (const auto& g : detail::seifert_forms())
    if (detail::matches_up_to_mirror(f, g)) return GeomType::Seifert;
  return GeomType::Hyperbolic;
}

/// The double branched cover is Seifert fibered over the sphere with the
/// tangle fractions as fiber invariants.
inline SeifertInvariants mont_double_cover(const MontesinosForm& f) {
  return SeifertInvariants(f.tangles);
}

/// Intersection number of the fibers of the two Seifert pieces in the
/// double cover of a graph-type form.
inline int fiber_intersection_number(const MontesinosForm& f) {
  if (f.size() < 3 || mont_geom_type(f) != GeomType::Graph)
    throw NotGraphType("form is not one of the graph-manifold exceptions");
  return detail::matches_up_to_mirror(f, detail::graph_forms()[0]) ? 3 : 1;
}

inline LinkDiagram mont_diagram(const MontesinosForm& f) {
  if (f.tangles.empty()) throw EmptyForm("no tangles");
  Tangle t = rational_tangle(f.tangles[0].numerator(), f.tangles[0].denominator());
  for (std::size_t i = 1; i < f.size(); ++i)
    t = tangle_sum(t, rational_tangle(f.tangles[i].numerator(), f.tangles[i].denominator()));
  return canonical(numerator_closure(t));
}

// ---------------------------------------------------------------------------
// Text and JSON

inline std::string to_string(const MontesinosForm& f) {
  std::string out = "M(";
  for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + to_string(f.tangles[i]);
  return out + ")";
}

/// "M(3/2,-2/3,1/4)"; the result is normalized.
inline MontesinosForm parse_montesinos(const std::string& text) {
  static const std::regex outer(R"(\s*M\s*\((.*)\)\s*)");
  static const std::regex item(R"(\s*(-?\d+)\s*(?:/\s*(-?\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, outer)) throw SyntaxError("expected M(p/q,...), got '" + text + "'");
  std::vector<Slope> slopes;
  std::string body = m[1].str();
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = body.find(',', start);
    std::string piece = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::smatch im;
    if (!std::regex_match(piece, im, item)) throw SyntaxError("bad tangle fraction '" + piece + "'");
    slopes.emplace_back(std::stoll(im[1].str()), im[2].matched ? std::stoll(im[2].str()) : 1);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return mont_normalize(slopes);
}

inline nlohmann::json to_json(const MontesinosForm& f) {
  nlohmann::json ts = nlohmann::json::array();
  for (const auto& t : f.tangles) ts.push_back({t.numerator(), t.denominator()});
  return {{"tangles", ts}};
}

inline MontesinosForm montesinos_from_json(const nlohmann::json& j) {
  try {
    std::vector<Slope> slopes;
    for (const auto& t : j.at("tangles"))
      slopes.emplace_back(t.at(0).get<std::int64_t>(), t.at(1).get<std::int64_t>());
    return mont_normalize(slopes);
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError(std::string("malformed Montesinos JSON: ") + e.what());
  }
}

}  // namespace knotrec
