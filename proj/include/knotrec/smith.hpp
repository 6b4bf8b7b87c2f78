#pragma once

// Abelianization via Smith normal form over arbitrary-precision integers.

#include "knotrec/arith.hpp"
#include "knotrec/presentation.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace knotrec {

using IntMatrix = std::vector<std::vector<BigInt>>;

/// Z^free_rank + sum Z/t_i with 1 < t_1 | t_2 | ...
struct AbelianInvariants {
  int free_rank = 0;
  std::vector<BigInt> torsion;

  bool operator==(const AbelianInvariants&) const = default;

  bool finite() const { return free_rank == 0; }
  /// Order of the group; 0 stands for infinity.
  BigInt order() const {
    if (free_rank) return 0;
    BigInt n = 1;
    for (const auto& t : torsion) n *= t;
    return n;
  }
};

/// Invariant factors (with zeros for free summands) of an integer matrix,
/// in divisibility order. Units are included as 1.
inline std::vector<BigInt> smith_diagonal(IntMatrix a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<BigInt> diag;
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    for (;;) {
      // smallest nonzero entry in the lower-right block
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
            pr = i;
            pc = j;
          }
      if (pr == rows) {
        t = rows;  // remaining block is zero
        break;
      }
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        BigInt q = a[i][t] / a[t][t];
        if (q != 0)
          for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        BigInt q = a[t][j] / a[t][t];
        if (q != 0)
          for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (clean) break;
    }
    if (t == rows) break;
    diag.push_back(abs(a[t][t]));
  }
  // Enforce divisibility: replace (a, b) by (gcd, lcm).
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      BigInt g = gcd(diag[i], diag[j]);
      BigInt l = g == 0 ? BigInt(0) : diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  return diag;
}

inline AbelianInvariants abelian_invariants_of_matrix(const IntMatrix& m, int columns) {
  AbelianInvariants inv;
  int nonzero = 0;
  for (const auto& t : smith_diagonal(m)) {
    if (t == 0) continue;
    ++nonzero;
    if (t != 1) inv.torsion.push_back(t);
  }
  std::sort(inv.torsion.begin(), inv.torsion.end());
  inv.free_rank = columns - nonzero;
  return inv;
}

/// Relation matrix: one row per relator, one column per generator, entries
/// the exponent sums.
inline IntMatrix relation_matrix(const GroupPresentation& p) {
  IntMatrix m;
  for (const auto& r : p.relators) {
    std::vector<BigInt> row(p.generator_count, 0);
    for (int x : r) row[std::abs(x) - 1] += x > 0 ? 1 : -1;
    m.push_back(std::move(row));
  }
  return m;
}

inline AbelianInvariants abelian_invariants(const GroupPresentation& p) {
  return abelian_invariants_of_matrix(relation_matrix(p), p.generator_count);
}

inline std::string to_string(const AbelianInvariants& a) {
  std::vector<std::string> parts;
  if (a.free_rank == 1) parts.push_back("Z");
  if (a.free_rank > 1) parts.push_back("Z^" + std::to_string(a.free_rank));
  for (const auto& t : a.torsion) parts.push_back("Z/" + t.str());
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
  return s;
}

inline nlohmann::json to_json(const AbelianInvariants& a) {
  nlohmann::json t = nlohmann::json::array();
  for (const auto& x : a.torsion) {
    if (x <= BigInt(INT64_MAX))
      t.push_back(static_cast<std::int64_t>(x));
    else
      t.push_back(x.str());
  }
  return {{"free_rank", a.free_rank}, {"torsion", t}};
}

}  // namespace knotrec
