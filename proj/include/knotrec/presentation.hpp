#pragma once

// Finitely presented groups.
//
// A word is a sequence of signed 1-based generator indices: +i is x_i and
// -i is x_i^-1. Relators are kept freely reduced.

#include "knotrec/diagram.hpp"
#include "knotrec/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace knotrec {

using Word = std::vector<int>;

inline Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

inline Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(out);
}

inline Word power(const Word& w, int n) {
  Word base = n < 0 ? inverse(w) : w;
  Word out;
  for (int i = 0; i < std::abs(n); ++i) out.insert(out.end(), base.begin(), base.end());
  return free_reduce(out);
}

inline Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t i = 0, j = r.size();
  while (j - i >= 2 && r[i] == -r[j - 1]) {
    ++i;
    --j;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(i), r.begin() + static_cast<std::ptrdiff_t>(j));
}

/// Representative of a cyclically reduced word up to rotation and inversion.
inline Word cyclic_class_key(const Word& w) {
  Word best = w;
  for (const Word& v : {w, inverse(w)}) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      Word rot(v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
      rot.insert(rot.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
      if (rot < best) best = rot;
    }
  }
  return best;
}

struct GroupPresentation {
  int generator_count = 0;
  std::vector<Word> relators;
  /// One word per link component designating its meridian, when known.
  std::optional<std::vector<Word>> meridian_marks;

  GroupPresentation() = default;
  GroupPresentation(int gens, std::vector<Word> rels,
                    std::optional<std::vector<Word>> meridians = std::nullopt)
      : generator_count(gens), relators(std::move(rels)), meridian_marks(std::move(meridians)) {
    if (gens < 0) throw StructureError("negative generator count");
    for (auto& r : relators) {
      check_word(r);
      r = free_reduce(r);
    }
    if (meridian_marks)
      for (auto& m : *meridian_marks) {
        check_word(m);
        m = free_reduce(m);
      }
  }

  std::size_t total_length() const {
    std::size_t n = 0;
    for (const auto& r : relators) n += r.size();
    return n;
  }

  /// (generators, total relator length); simplification never increases it.
  std::pair<int, std::size_t> score() const { return {generator_count, total_length()}; }

 private:
  void check_word(const Word& w) const {
    for (int x : w)
      if (x == 0 || std::abs(x) > generator_count)
        throw StructureError("generator index " + std::to_string(x) + " out of range");
  }
};

// ---------------------------------------------------------------------------
// Text and JSON forms: "< x1, x2 | x1 x2 x1 x2^-1 x1^-1 x2^-1 >"

inline std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += "x" + std::to_string(std::abs(w[i]));
    if (w[i] < 0) s += "^-1";
  }
  return s;
}

inline Word parse_word(const std::string& text) {
  static const std::regex token(R"(\s*x(\d+)(?:\^(-?\d+))?\s*|\s*1\s*)");
  Word w;
  std::string rest = text;
  std::smatch m;
  while (!rest.empty()) {
    if (!std::regex_search(rest, m, token, std::regex_constants::match_continuous))
      throw SyntaxError("malformed word '" + text + "'");
    if (m[1].matched) {
      int g = std::stoi(m[1].str());
      int e = m[2].matched ? std::stoi(m[2].str()) : 1;
      for (int i = 0; i < std::abs(e); ++i) w.push_back(e < 0 ? -g : g);
    }
    rest = m.suffix().str();
  }
  return free_reduce(w);
}

inline std::string to_string(const GroupPresentation& p) {
  std::string s = "< ";
  for (int g = 1; g <= p.generator_count; ++g) s += (g > 1 ? ", x" : "x") + std::to_string(g);
  s += " | ";
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    s += (i ? ", " : "") + word_to_string(p.relators[i]);
  return s + " >";
}

inline GroupPresentation parse_presentation(const std::string& text) {
  auto open = text.find('<'), bar = text.find('|'), close = text.rfind('>');
  if (open == std::string::npos || bar == std::string::npos || close == std::string::npos ||
      !(open < bar && bar < close))
    throw SyntaxError("expected '< generators | relators >'");
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
      if (item.find_first_not_of(" \t\n") != std::string::npos) parts.push_back(item);
    return parts;
  };
  auto gens = split(text.substr(open + 1, bar - open - 1));
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (parse_word(gens[i]) != Word{static_cast<int>(i) + 1})
      throw SyntaxError("generators must be listed as x1, x2, ...");
  std::vector<Word> rels;
  for (const auto& r : split(text.substr(bar + 1, close - bar - 1))) rels.push_back(parse_word(r));
  return GroupPresentation(static_cast<int>(gens.size()), std::move(rels));
}

inline nlohmann::json presentation_to_json(const GroupPresentation& p) {
  nlohmann::json j = {{"generators", p.generator_count}, {"relators", p.relators}};
  if (p.meridian_marks) j["meridians"] = *p.meridian_marks;
  return j;
}

inline GroupPresentation presentation_from_json(const nlohmann::json& j) {
  try {
    std::optional<std::vector<Word>> mer;
    if (j.contains("meridians")) mer = j.at("meridians").get<std::vector<Word>>();
    return GroupPresentation(j.at("generators").get<int>(),
                             j.at("relators").get<std::vector<Word>>(), std::move(mer));
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError(std::string("malformed presentation JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Wirtinger presentation

/// One generator per over-arc (plus one per free loop), one relator per
/// crossing: the outgoing under-arc is the incoming one conjugated by the
/// over-arc, with the side of conjugation given by the crossing sign.
inline GroupPresentation wirtinger(const LinkDiagram& d) {
  // Edges joined through over-passes form the arcs.
  std::map<int, int> parent;
  for (const auto& c : d.crossings())
    for (int a : c.arcs) parent[a] = a;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& c : d.crossings()) parent[find(c.arcs[1])] = find(c.arcs[3]);
  std::map<int, int> arc_index;
  for (const auto& [label, unused] : parent) {
    int root = find(label);
    if (!arc_index.contains(root)) {
      int next = static_cast<int>(arc_index.size()) + 1;
      arc_index[root] = next;
    }
  }
  auto gen = [&](int label) { return arc_index.at(find(label)); };

  std::vector<Word> rels;
  for (const auto& c : d.crossings()) {
    int a = gen(c.arcs[0]), b = gen(c.arcs[2]), o = gen(c.arcs[1]);
    if (c.sign > 0)
      rels.push_back(free_reduce({o, a, -o, -b}));
    else
      rels.push_back(free_reduce({-o, a, o, -b}));
  }
  int gens = static_cast<int>(arc_index.size());
  std::vector<Word> meridians;
  for (const auto& cyc : d.component_cycles()) meridians.push_back({gen(cyc.front())});
  for (int i = 0; i < d.free_loops(); ++i) meridians.push_back({++gens});
  return GroupPresentation(gens, std::move(rels), std::move(meridians));
}

// ---------------------------------------------------------------------------
// Tietze simplification

struct SimplifyBudget {
  int max_rounds = 10000;
  /// Total relator length may grow to at most this multiple of the input's
  /// (or the input's plus `slack`, whichever is larger) while eliminating.
  double growth = 8.0;
  std::size_t slack = 64;
};

namespace detail {

inline void tidy(GroupPresentation& p) {
  std::vector<Word> out;
  std::set<Word> seen;
  for (const auto& r : p.relators) {
    Word c = cyclic_reduce(r);
    if (c.empty()) continue;
    if (seen.insert(cyclic_class_key(c)).second) out.push_back(std::move(c));
  }
  p.relators = std::move(out);
}

inline Word substitute(const Word& w, int g, const Word& image) {
  Word out;
  Word inv = inverse(image);
  for (int x : w) {
    if (x == g)
      out.insert(out.end(), image.begin(), image.end());
    else if (x == -g)
      out.insert(out.end(), inv.begin(), inv.end());
    else
      out.push_back(x);
  }
  return free_reduce(out);
}

inline Word drop_generator(const Word& w, int g) {
  Word out = w;
  for (int& x : out)
    if (std::abs(x) > g) x += x > 0 ? -1 : 1;
  return out;
}

inline Word rotate(const Word& w, std::size_t k) {
  Word out(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

// Shorten some relator s using another relator r: if a cyclic rotation c of
// r or r^-1 shares a prefix u with a rotation of s, |u| > |c|/2, replace u in
// s by the inverse of the rest of c. Returns false if nothing shortens.
inline bool shorten_by_subwords(GroupPresentation& p) {
  for (std::size_t ri = 0; ri < p.relators.size(); ++ri) {
    const Word r = p.relators[ri];
    for (std::size_t si = 0; si < p.relators.size(); ++si) {
      if (si == ri || p.relators[si].size() < r.size()) continue;
      const Word& s = p.relators[si];
      for (const Word& base : {r, inverse(r)}) {
        for (std::size_t k = 0; k < base.size(); ++k) {
          Word c = rotate(base, k);
          for (std::size_t j = 0; j < s.size(); ++j) {
            std::size_t m = 0;
            while (m < c.size() && m < s.size() && s[(j + m) % s.size()] == c[m]) ++m;
            if (2 * m <= c.size()) continue;
            Word rest(c.begin() + static_cast<std::ptrdiff_t>(m), c.end());
            Word t = rotate(s, j);
            Word out = inverse(rest);
            out.insert(out.end(), t.begin() + static_cast<std::ptrdiff_t>(m), t.end());
            p.relators[si] = cyclic_reduce(out);
            return true;
          }
        }
      }
    }
  }
  return false;
}

}  // namespace detail

/// Tietze-equivalent presentation with score() no larger than the input's.
/// Generators occurring exactly once in some relator are eliminated, cheapest
/// substitution first; when none is left, relators are shortened using
/// long common subwords of other relators. Duplicate and trivial relators
/// are dropped. Meridian marks are rewritten through every elimination.
inline GroupPresentation simplify(const GroupPresentation& input, SimplifyBudget budget = {}) {
  GroupPresentation p = input;
  detail::tidy(p);
  const std::size_t cap =
      std::max(static_cast<std::size_t>(budget.growth * static_cast<double>(input.total_length())),
               input.total_length() + budget.slack);

  for (int round = 0; round < budget.max_rounds; ++round) {
    // occurrences[g] = number of letters g^{+-1} across all relators
    std::vector<std::size_t> occurrences(p.generator_count + 1, 0);
    for (const auto& r : p.relators)
      for (int x : r) ++occurrences[std::abs(x)];

    struct Choice {
      std::size_t new_length;
      std::size_t rel;
      int gen;
    };
    std::optional<Choice> best;
    for (std::size_t ri = 0; ri < p.relators.size(); ++ri) {
      const auto& r = p.relators[ri];
      std::map<int, int> count;
      for (int x : r) ++count[std::abs(x)];
      for (const auto& [g, n] : count) {
        if (n != 1) continue;
        // each other occurrence becomes a word of length |r| - 1
        std::size_t other = occurrences[g] - 1;
        std::size_t len = p.total_length() - r.size() - other + other * (r.size() - 1);
        Choice c{len, ri, g};
        if (!best || std::tie(c.new_length, c.rel, c.gen) <
                         std::tie(best->new_length, best->rel, best->gen))
          best = c;
      }
    }
    if (!best || best->new_length > cap) {
      if (detail::shorten_by_subwords(p)) {
        detail::tidy(p);
        continue;
      }
      break;
    }

    // Rotate the relator so that g^e comes last: w g^e = 1, g = (w^-1)^e.
    Word r = p.relators[best->rel];
    int g = best->gen;
    auto it = std::find_if(r.begin(), r.end(), [g](int x) { return std::abs(x) == g; });
    int e = *it > 0 ? 1 : -1;
    Word w(it + 1, r.end());
    w.insert(w.end(), r.begin(), it);
    Word image = e > 0 ? inverse(w) : w;

    std::vector<Word> rels;
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      if (i == best->rel) continue;
      rels.push_back(detail::drop_generator(detail::substitute(p.relators[i], g, image), g));
    }
    std::optional<std::vector<Word>> mer;
    if (p.meridian_marks) {
      mer.emplace();
      for (const auto& m : *p.meridian_marks)
        mer->push_back(detail::drop_generator(detail::substitute(m, g, image), g));
    }
    p = GroupPresentation(p.generator_count - 1, std::move(rels), std::move(mer));
    detail::tidy(p);
  }
  return p;
}

}  // namespace knotrec
