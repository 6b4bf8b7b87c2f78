#pragma once

// Seifert fibered spaces over the 2-sphere, and the normal form of a torus
// gluing matrix with prescribed fiber intersection number.

#include "knotrec/arith.hpp"
#include "knotrec/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

namespace knotrec {

/// (0,0; b1/a1, ..., bn/an): orientable base sphere, one reduced fraction
/// per fiber. The Euler number is the exact sum of the fractions.
class SeifertInvariants {
 public:
  SeifertInvariants() = default;
  explicit SeifertInvariants(std::vector<Rational> pairs) : pairs_(std::move(pairs)) {
    for (const auto& r : pairs_) euler_ += r;
  }

  const std::vector<Rational>& pairs() const { return pairs_; }
  Rational euler() const { return euler_; }

  /// Fibers with non-integral invariant.
  int exceptional_count() const {
    return static_cast<int>(std::count_if(pairs_.begin(), pairs_.end(),
                                          [](const Rational& r) { return !is_integer(r); }));
  }

  /// Order of H1; 0 when H1 is infinite.
  BigInt h1_order() const {
    BigInt prod = 1;
    for (const auto& r : pairs_) prod *= r.denominator();
    BigInt n = prod / euler_.denominator() * euler_.numerator();
    return n < 0 ? BigInt(-n) : n;
  }

  bool operator==(const SeifertInvariants& o) const { return pairs_ == o.pairs_; }

 private:
  std::vector<Rational> pairs_;
  Rational euler_{0};
};

inline Rational euler_number(const SeifertInvariants& s) { return s.euler(); }

inline SeifertInvariants sfs_negate(const SeifertInvariants& s) {
  std::vector<Rational> neg;
  for (const auto& r : s.pairs()) neg.push_back(-r);
  return SeifertInvariants(std::move(neg));
}

enum class SfsRelation { OrientPreserving, OrientReversing, NotHomeo };

inline std::string to_string(SfsRelation r) {
  switch (r) {
    case SfsRelation::OrientPreserving: return "OrientPreserving";
    case SfsRelation::OrientReversing: return "OrientReversing";
    case SfsRelation::NotHomeo: return "NotHomeo";
  }
  return "?";
}

namespace detail {
inline std::vector<Rational> residues(const SeifertInvariants& s) {
  std::vector<Rational> out;
  for (const auto& r : s.pairs())
    if (!is_integer(r)) out.push_back(frac_part(r));
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace detail

/// Equal Euler numbers and equal multisets of exceptional residues mod 1,
/// after negating one side if necessary. Fewer than three exceptional
/// fibers are lens spaces and are rejected.
inline SfsRelation sfs_equivalent(const SeifertInvariants& a, const SeifertInvariants& b) {
  for (const auto* s : {&a, &b})
    if (s->exceptional_count() < 3)
      throw DegenerateFibration("need at least three exceptional fibers, got " +
                                std::to_string(s->exceptional_count()));
  if (a.euler() == b.euler() && detail::residues(a) == detail::residues(b))
    return SfsRelation::OrientPreserving;
  SeifertInvariants nb = sfs_negate(b);
  if (a.euler() == nb.euler() && detail::residues(a) == detail::residues(nb))
    return SfsRelation::OrientReversing;
  return SfsRelation::NotHomeo;
}

inline std::string to_string(const SeifertInvariants& s) {
  std::string out = "(0,0;";
  for (std::size_t i = 0; i < s.pairs().size(); ++i)
    out += (i ? "," : " ") + to_string(s.pairs()[i]);
  return out + ")";
}

inline nlohmann::json to_json(const SeifertInvariants& s) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& r : s.pairs()) pairs.push_back({r.numerator(), r.denominator()});
  return {{"pairs", pairs}, {"euler", to_string(s.euler())}};
}

inline SeifertInvariants seifert_from_json(const nlohmann::json& j) {
  try {
    std::vector<Rational> pairs;
    for (const auto& p : j.at("pairs")) {
      auto num = p.at(0).get<std::int64_t>(), den = p.at(1).get<std::int64_t>();
      if (den == 0) throw SyntaxError("zero denominator in Seifert pair");
      pairs.emplace_back(num, den);
    }
    return SeifertInvariants(std::move(pairs));
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError(std::string("malformed Seifert JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Gluing matrices

/// (a b; c d) with determinant +-1.
struct GluingMatrix {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  std::int64_t det() const { return a * d - b * c; }
  GluingMatrix operator*(const GluingMatrix& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  bool operator==(const GluingMatrix&) const = default;
};

/// (x z; 0 y) with x, y = +-1.
struct UpperUnit {
  int x = 1, y = 1;
  std::int64_t z = 0;

  GluingMatrix matrix() const { return {x, z, 0, y}; }
  bool operator==(const UpperUnit&) const = default;
};

/// Upper units q1, q2 with q2 * m * q1 = (1 0; n 1), where n = |c| is the
/// intersection number of the fibers on the gluing torus.
inline std::pair<UpperUnit, UpperUnit> normalize_gluing(const GluingMatrix& m, std::int64_t n) {
  static constexpr std::array<std::int64_t, 5> kAllowed{1, 2, 3, 4, 6};
  if (std::find(kAllowed.begin(), kAllowed.end(), n) == kAllowed.end())
    throw UnsupportedIntersectionNumber("n = " + std::to_string(n));
  if (std::llabs(m.c) != n)
    throw IntersectionMismatch("|c| = " + std::to_string(std::llabs(m.c)) + ", n = " + std::to_string(n));
  const std::int64_t det = m.det();
  if (det != 1 && det != -1) throw NotUnimodular("determinant " + std::to_string(det));

  // a is a unit mod n, and every unit mod n in {1,2,3,4,6} is +-1
  const int x2 = mod(m.a - 1, n) == 0 ? 1 : -1;
  const int y2 = static_cast<int>(n / m.c);
  const int y1 = static_cast<int>(y2 * x2 * det);
  const std::int64_t z1 = (1 - y1 * y2 * m.d) / n;
  const std::int64_t z2 = y2 * (1 - x2 * m.a) / n;
  UpperUnit q1{1, y1, z1}, q2{x2, y2, z2};
  if (q2.matrix() * m * q1.matrix() != GluingMatrix{1, 0, n, 1})
    throw NotUnimodular("normalization failed");  // unreachable for valid input
  return {q1, q2};
}

inline nlohmann::json to_json(const GluingMatrix& m) {
  return nlohmann::json::array({{m.a, m.b}, {m.c, m.d}});
}

inline GluingMatrix gluing_from_json(const nlohmann::json& j) {
  try {
    return {j.at(0).at(0).get<std::int64_t>(), j.at(0).at(1).get<std::int64_t>(),
            j.at(1).at(0).get<std::int64_t>(), j.at(1).at(1).get<std::int64_t>()};
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError(std::string("malformed matrix JSON: ") + e.what());
  }
}

}  // namespace knotrec
