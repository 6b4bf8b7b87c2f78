#pragma once

// Two-bridge links b(alpha, beta) in Schubert normal form, and lens spaces.

#include "knotrec/arith.hpp"
#include "knotrec/errors.hpp"
#include "knotrec/tangle.hpp"

#include <nlohmann/json.hpp>

#include <numeric>
#include <regex>
#include <string>

namespace knotrec {

enum class GeomType { Seifert, Hyperbolic, Graph };

inline std::string to_string(GeomType g) {
  switch (g) {
    case GeomType::Seifert: return "Seifert";
    case GeomType::Hyperbolic: return "Hyperbolic";
    case GeomType::Graph: return "Graph";
  }
  return "?";
}

/// b(alpha, beta) with alpha >= 2, beta odd, -alpha < beta < alpha,
/// gcd(alpha, beta) = 1. A knot when alpha is odd, two components otherwise.
struct SchubertForm {
  std::int64_t alpha = 0;
  std::int64_t beta = 0;

  /// Validate and bring beta into range without changing the oriented
  /// class: beta is taken mod 2 alpha (for odd alpha, mod alpha).
  static SchubertForm make(std::int64_t alpha, std::int64_t beta) {
    if (alpha < 2) throw InvalidForm("alpha must be at least 2");
    if (std::gcd(alpha, beta) != 1) throw InvalidForm("alpha and beta must be coprime");
    if (alpha % 2 == 0 && beta % 2 == 0) throw InvalidForm("beta must be odd");
    std::int64_t r = mod(beta, 2 * alpha);
    if (r % 2 == 0)
      r -= alpha;
    else if (r > alpha)
      r -= 2 * alpha;
    return {alpha, r};
  }

  int components() const { return alpha % 2 ? 1 : 2; }
  bool operator==(const SchubertForm&) const = default;
};

/// L(p, q) with p >= 1, 0 <= q < p, gcd(p, q) = 1; L(1, 0) is the 3-sphere.
struct LensSpace {
  std::int64_t p = 1;
  std::int64_t q = 0;
  bool oriented = true;

  static LensSpace make(std::int64_t p, std::int64_t q, bool oriented = true) {
    if (p < 1) throw InvalidForm("lens space needs p >= 1");
    std::int64_t r = mod(q, p);
    if (std::gcd(p, r) != 1) throw InvalidForm("lens space needs gcd(p, q) = 1");
    return {p, r, oriented};
  }
  bool operator==(const LensSpace&) const = default;
};

namespace detail {
inline bool inverse_class(std::int64_t a, std::int64_t b, std::int64_t m) {
  if (m == 1) return true;
  if (mod(a - b, m) == 0) return true;
  auto inv = mod_inverse(a, m);
  return inv && mod(*inv - b, m) == 0;
}
}  // namespace detail

/// Oriented: beta' = beta^{+-1} mod 2 alpha. Unoriented: mod alpha.
inline bool tb_equivalent(const SchubertForm& a, const SchubertForm& b, bool oriented) {
  if (a.alpha != b.alpha) return false;
  return detail::inverse_class(a.beta, b.beta, oriented ? 2 * a.alpha : a.alpha);
}

inline SchubertForm tb_mirror(const SchubertForm& s) { return SchubertForm::make(s.alpha, -s.beta); }

/// Reverse the orientation of one component of a two-component link.
inline SchubertForm tb_reverse_component(const SchubertForm& s) {
  if (s.alpha % 2) throw NotALink("b(" + std::to_string(s.alpha) + "," + std::to_string(s.beta) +
                                  ") is a knot");
  return SchubertForm::make(s.alpha, s.beta + s.alpha);
}

inline LensSpace tb_double_cover(const SchubertForm& s) {
  return LensSpace::make(s.alpha, s.beta, true);
}

/// Oriented: q' = q^{+-1} mod p. Unoriented also allows q' = -q^{+-1}.
inline bool lens_equivalent(const LensSpace& a, const LensSpace& b, bool oriented) {
  if (a.p != b.p) return false;
  if (detail::inverse_class(a.q, b.q, a.p)) return true;
  return !oriented && detail::inverse_class(a.q, -b.q, a.p);
}

/// Orientation reverse: -L(p, q) = L(p, -q).
inline LensSpace lens_reverse(const LensSpace& l) { return LensSpace::make(l.p, -l.q, l.oriented); }

/// Torus links b(alpha, +-1) are Seifert fibered; all others are hyperbolic.
inline GeomType tb_geom_type(const SchubertForm& s) {
  return mod(s.beta - 1, s.alpha) == 0 || mod(s.beta + 1, s.alpha) == 0 ? GeomType::Seifert
                                                                          : GeomType::Hyperbolic;
}

/// Display representative: the odd beta of least absolute value in the
/// oriented (or unoriented) class, positive on ties.
inline SchubertForm tb_normalize(const SchubertForm& s, bool oriented) {
  SchubertForm best = s;
  for (std::int64_t b = -s.alpha + 1; b < s.alpha; ++b) {
    if (std::gcd(b, s.alpha) != 1 || (b % 2 == 0 && s.alpha % 2 == 0)) continue;
    SchubertForm c = SchubertForm::make(s.alpha, b);
    if (!tb_equivalent(c, s, oriented)) continue;
    auto key = [](const SchubertForm& x) { return std::pair{std::llabs(x.beta), x.beta < 0}; };
    if (key(c) < key(best)) best = c;
  }
  return best;
}

/// Standard diagram: numerator closure of the rational tangle alpha/beta,
/// which is alternating with the minimal crossing number.
inline LinkDiagram tb_diagram(const SchubertForm& s) {
  return canonical(numerator_closure(rational_tangle(s.alpha, s.beta)));
}

// ---------------------------------------------------------------------------
// Text and JSON

inline std::string to_string(const SchubertForm& s) {
  return "b(" + std::to_string(s.alpha) + "," + std::to_string(s.beta) + ")";
}

inline std::string to_string(const LensSpace& l) {
  return "L(" + std::to_string(l.p) + "," + std::to_string(l.q) + ")";
}

inline SchubertForm parse_schubert(const std::string& text) {
  static const std::regex re(R"(\s*b\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw SyntaxError("expected b(alpha,beta), got '" + text + "'");
  return SchubertForm::make(std::stoll(m[1].str()), std::stoll(m[2].str()));
}

inline nlohmann::json to_json(const SchubertForm& s) { return {{"alpha", s.alpha}, {"beta", s.beta}}; }

inline SchubertForm schubert_from_json(const nlohmann::json& j) {
  try {
    return SchubertForm::make(j.at("alpha").get<std::int64_t>(), j.at("beta").get<std::int64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError(std::string("malformed two-bridge JSON: ") + e.what());
  }
}

inline nlohmann::json to_json(const LensSpace& l) {
  return {{"p", l.p}, {"q", l.q}, {"oriented", l.oriented}};
}

}  // namespace knotrec
