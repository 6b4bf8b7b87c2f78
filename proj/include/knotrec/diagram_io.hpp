#pragma once

// Reading and writing link diagrams: PD text, signed Gauss codes for knots,
// and the JSON diagram file.

#include "knotrec/diagram.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <map>
#include <regex>
#include <string>
#include <vector>

namespace knotrec {

enum class DiagramFormat { PD, Gauss };

namespace detail {

// Recover crossing signs for an unsigned PD code. Under-strands are oriented
// by the convention; over-strand directions are propagated from the other end
// of each edge, and any remaining choice (a component that never passes
// under) follows increasing labels.
inline std::vector<int> infer_signs(const std::vector<std::array<int, 4>>& pd) {
  const int n = static_cast<int>(pd.size());
  std::map<int, std::vector<Slot>> where;
  for (int i = 0; i < n; ++i)
    for (int p = 0; p < 4; ++p) where[pd[i][p]].push_back({i, p});
  for (const auto& [label, s] : where)
    if (s.size() != 2)
      throw StructureError("arc " + std::to_string(label) + " does not appear exactly twice");

  std::vector<int> sign(n, 0);
  // role: +1 incoming, -1 outgoing, 0 unknown
  auto role = [&](Slot s) -> int {
    if (s.pos == 0) return 1;
    if (s.pos == 2) return -1;
    int sg = sign[s.crossing];
    if (sg == 0) return 0;
    return (s.pos == 3) == (sg > 0) ? 1 : -1;
  };
  auto mate = [&](Slot s) {
    const auto& w = where[pd[s.crossing][s.pos]];
    return w[0] == s ? w[1] : w[0];
  };
  for (;;) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i < n; ++i) {
        if (sign[i] != 0) continue;
        int r1 = role(mate({i, 1}));
        int r3 = role(mate({i, 3}));
        // b incoming here iff its other end is outgoing
        if (r1 == -1 || r3 == 1) {
          sign[i] = -1;
          changed = true;
        } else if (r1 == 1 || r3 == -1) {
          sign[i] = 1;
          changed = true;
        }
      }
    }
    auto it = std::find(sign.begin(), sign.end(), 0);
    if (it == sign.end()) break;
    int i = static_cast<int>(it - sign.begin());
    int b = pd[i][1], d = pd[i][3];
    sign[i] = (b == d + 1 || d > b + 1) ? 1 : -1;
  }
  return sign;
}

inline std::vector<std::array<int, 4>> parse_pd_tuples(const std::string& text) {
  // Accept both "[[1,4,2,5],...]" and "PD[X[1,4,2,5], ...]".
  std::string s = std::regex_replace(text, std::regex(R"(PD\s*\[)"), "[");
  s = std::regex_replace(s, std::regex(R"(X\s*\[)"), "[");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(s);
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError(std::string("malformed PD code: ") + e.what());
  }
  if (!j.is_array()) throw SyntaxError("PD code must be a list of crossings");
  std::vector<std::array<int, 4>> out;
  for (const auto& x : j) {
    if (!x.is_array() || x.size() != 4) throw SyntaxError("each crossing needs 4 labels");
    std::array<int, 4> t{};
    for (int k = 0; k < 4; ++k) {
      if (!x[k].is_number_integer()) throw SyntaxError("arc labels must be integers");
      t[k] = x[k].get<int>();
    }
    out.push_back(t);
  }
  return out;
}

}  // namespace detail

/// Build a diagram from PD tuples with explicit signs.
inline LinkDiagram diagram_from_pd(const std::vector<std::array<int, 4>>& pd,
                                   const std::vector<int>& signs, int components) {
  if (signs.size() != pd.size())
    throw StructureError("one orientation sign per crossing is required");
  if (pd.empty()) return LinkDiagram({}, components < 0 ? 1 : components);
  std::vector<Crossing> cs;
  for (std::size_t i = 0; i < pd.size(); ++i) cs.push_back({pd[i], signs[i]});
  LinkDiagram d(cs, 0);
  if (components < 0) return d;
  int loops = components - static_cast<int>(d.component_cycles().size());
  if (loops < 0) throw StructureError("component count smaller than the crossing code implies");
  return LinkDiagram(std::move(cs), loops);
}

/// Signed Gauss code for knots: tokens O<n><sign> / U<n><sign>, e.g.
/// "O1- U2- O3- U1- O2- U3-". Each crossing appears once over, once under.
inline LinkDiagram parse_gauss(const std::string& text) {
  static const std::regex token(R"(([OUou])(\d+)([+-]))");
  std::vector<std::tuple<bool, int, int>> seq;  // over?, crossing, sign
  for (auto it = std::sregex_iterator(text.begin(), text.end(), token);
       it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    bool over = std::toupper(m[1].str()[0]) == 'O';
    seq.emplace_back(over, std::stoi(m[2].str()), m[3].str() == "+" ? 1 : -1);
  }
  // Everything that is not a token must be whitespace or a separator.
  std::string stripped = std::regex_replace(text, token, "");
  for (char c : stripped)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != ',')
      throw SyntaxError("unexpected character in Gauss code: '" + std::string(1, c) + "'");
  if (seq.empty()) return LinkDiagram::unknot();

  const int len = static_cast<int>(seq.size());
  struct Passes {
    int over = -1, under = -1, sign = 0;
  };
  std::map<int, Passes> byc;
  for (int k = 0; k < len; ++k) {
    auto [over, c, sg] = seq[k];
    auto& p = byc[c];
    int& slot = over ? p.over : p.under;
    if (slot != -1) throw StructureError("crossing " + std::to_string(c) + " repeated");
    slot = k;
    if (p.sign != 0 && p.sign != sg)
      throw StructureError("inconsistent sign at crossing " + std::to_string(c));
    p.sign = sg;
  }
  // edge k+1 leaves passage k; passage k is entered by edge k (edge len for k=0)
  auto in_edge = [&](int k) { return k == 0 ? len : k; };
  auto out_edge = [&](int k) { return k + 1; };
  std::vector<Crossing> cs;
  for (const auto& [c, p] : byc) {
    if (p.over < 0 || p.under < 0)
      throw StructureError("crossing " + std::to_string(c) + " needs one over and one under pass");
    int ui = in_edge(p.under), uo = out_edge(p.under);
    int oi = in_edge(p.over), oo = out_edge(p.over);
    if (p.sign > 0)
      cs.push_back({{ui, oo, uo, oi}, 1});
    else
      cs.push_back({{ui, oi, uo, oo}, -1});
  }
  return LinkDiagram(std::move(cs), 0);
}

/// Parse diagram text. PD input may carry no signs; they are inferred.
inline LinkDiagram parse_diagram(const std::string& text, DiagramFormat format,
                                 int components = 1) {
  if (format == DiagramFormat::Gauss) return parse_gauss(text);
  auto pd = detail::parse_pd_tuples(text);
  if (pd.empty()) return LinkDiagram({}, components);
  auto signs = detail::infer_signs(pd);
  std::vector<Crossing> cs;
  for (std::size_t i = 0; i < pd.size(); ++i) cs.push_back({pd[i], signs[i]});
  return LinkDiagram(std::move(cs), 0);
}

/// JSON diagram file: {"format":"pd","crossings":[[a,b,c,d],...],
/// "orientations":[+1/-1 per crossing],"components":k}. Serialization is
/// of the canonical form, so equal diagrams serialize identically.
inline nlohmann::json diagram_to_json(const LinkDiagram& d) {
  LinkDiagram c = canonical(d);
  nlohmann::json crossings = nlohmann::json::array();
  nlohmann::json signs = nlohmann::json::array();
  for (const auto& x : c.crossings()) {
    crossings.push_back({x.arcs[0], x.arcs[1], x.arcs[2], x.arcs[3]});
    signs.push_back(x.sign);
  }
  return {{"format", "pd"},
          {"crossings", crossings},
          {"orientations", signs},
          {"components", c.component_count()}};
}

inline LinkDiagram diagram_from_json(const nlohmann::json& j) {
  try {
    std::string fmt = j.value("format", std::string("pd"));
    if (fmt == "gauss") return parse_gauss(j.at("code").get<std::string>());
    if (fmt != "pd") throw SyntaxError("unknown diagram format '" + fmt + "'");
    std::vector<std::array<int, 4>> pd;
    for (const auto& x : j.at("crossings")) {
      if (x.size() != 4) throw SyntaxError("each crossing needs 4 labels");
      pd.push_back({x[0].get<int>(), x[1].get<int>(), x[2].get<int>(), x[3].get<int>()});
    }
    int components = j.value("components", -1);
    if (j.contains("orientations"))
      return diagram_from_pd(pd, j.at("orientations").get<std::vector<int>>(), components);
    return diagram_from_pd(pd, pd.empty() ? std::vector<int>{} : detail::infer_signs(pd),
                           components);
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError(std::string("malformed diagram JSON: ") + e.what());
  }
}

inline std::string serialize_diagram(const LinkDiagram& d) { return diagram_to_json(d).dump(); }

}  // namespace knotrec
