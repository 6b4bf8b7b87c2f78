#pragma once

// Command-line front end. run() parses arguments, dispatches to the library
// and writes to the given streams; main() is a thin wrapper around it.

#include "knotrec/knotrec.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace knotrec::cli {

inline constexpr int kSchemaVersion = 1;

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kComputationError = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kRepresentsK = 0;
inline constexpr int kMirrorOnly = 10;
inline constexpr int kNotK = 20;
inline constexpr int kInconclusive = 30;

/// Settings shared by the subcommands; a config file may set any of them,
/// and command-line flags override the file.
struct Settings {
  int fingerprint_bound = 24;
  int max_stage = 12;
  std::size_t max_nodes = 200000;
  std::optional<double> max_seconds;
  double search_ceiling = kDefaultSearchCeiling;
};

/// key = value lines; '#' starts a comment. Unknown keys are errors.
inline Settings read_config(const std::string& path, Settings s = {}) {
  std::ifstream in(path);
  if (!in) throw SyntaxError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    auto trim = [](std::string x) {
      auto a = x.find_first_not_of(" \t\r\"");
      auto b = x.find_last_not_of(" \t\r\"");
      return a == std::string::npos ? std::string() : x.substr(a, b - a + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw SyntaxError(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    try {
      if (key == "fingerprint_bound") s.fingerprint_bound = std::stoi(value);
      else if (key == "max_stage") s.max_stage = std::stoi(value);
      else if (key == "max_nodes") s.max_nodes = std::stoul(value);
      else if (key == "max_seconds") s.max_seconds = std::stod(value);
      else if (key == "search_ceiling") s.search_ceiling = std::stod(value);
      else throw SyntaxError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    } catch (const std::logic_error&) {
      throw SyntaxError(path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
    }
  }
  return s;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SyntaxError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A diagram from a file: JSON, or plain PD text such as "X[1,4,2,5] ...".
inline LinkDiagram load_diagram(const std::string& path) {
  std::string text = slurp(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return diagram_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
      throw SyntaxError(std::string("malformed JSON in '") + path + "': " + e.what());
    }
  }
  return parse_diagram(text, DiagramFormat::PD);
}

/// The group of an input named by exactly one of a diagram file, a knot or
/// link form ("b(7,3)", "M(1/2,1/3,-1/5)") or a presentation text.
struct GroupSource {
  std::string diagram, form, presentation;

  LinkDiagram to_diagram() const {
    if (!diagram.empty()) return load_diagram(diagram);
    auto first = form.find_first_not_of(" \t");
    if (first != std::string::npos && form[first] == 'M') return mont_diagram(parse_montesinos(form));
    return tb_diagram(parse_schubert(form));
  }

  GroupPresentation group() const {
    if (!presentation.empty()) return parse_presentation(presentation);
    return wirtinger(to_diagram());
  }
};

inline void add_source_options(CLI::App* app, GroupSource& src, const std::string& suffix = "") {
  auto* g = app->add_option_group("input" + suffix);
  g->add_option("--diagram" + suffix, src.diagram, "diagram file (JSON or PD text)");
  g->add_option("--form" + suffix, src.form, "two-bridge or Montesinos form, e.g. b(7,3)");
  g->add_option("--presentation" + suffix, src.presentation, "group presentation, e.g. \"< x1, x2 | x1 x2 x1^-1 x2^-1 >\"");
  g->require_option(1);
}

inline std::string lower(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

inline nlohmann::json envelope(nlohmann::json body) {
  body["schema"] = kSchemaVersion;
  return body;
}

inline std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--matrix", "expected integers a,b,c,d, got '" + text + "'");
    }
  }
  return out;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"knotrec: two-bridge and Montesinos knot recognition toolkit", "knotrec"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  std::string config_path;
  app.add_flag("--json", json, "machine-readable output");
  app.add_option("--config", config_path, "key = value settings file (also $KNOTREC_CONFIG)");

  std::optional<int> bound_flag, stage_flag;
  std::optional<std::size_t> nodes_flag;
  std::optional<double> seconds_flag;

  // classify-tb
  auto* ctb = app.add_subcommand("classify-tb", "compare two Schubert forms");
  std::string tb1, tb2;
  bool oriented = false;
  ctb->add_option("first", tb1, "b(alpha,beta)")->required();
  ctb->add_option("second", tb2, "b(alpha,beta)")->required();
  ctb->add_flag("--oriented", oriented, "oriented classification (default: unoriented)");

  // classify-mont
  auto* cm = app.add_subcommand("classify-mont", "compare two Montesinos forms");
  std::string m1, m2;
  cm->add_option("first", m1, "M(p1/q1,...)")->required();
  cm->add_option("second", m2, "M(p1/q1,...)")->required();

  // geom-type
  auto* gt = app.add_subcommand("geom-type", "geometric type of the link complement");
  std::string gt_form;
  gt->add_option("form", gt_form, "b(alpha,beta) or M(...)")->required();

  // double-cover
  auto* dc = app.add_subcommand("double-cover", "double branched cover from the normal form");
  std::string dc_form;
  dc->add_option("form", dc_form, "b(alpha,beta) or M(...)")->required();

  // covers
  auto* cv = app.add_subcommand("covers", "cyclic and branched covers");
  GroupSource cv_src;
  std::string kind = "branched2";
  int degree = 2;
  bool homology = false;
  cv->add_option("--kind", kind, "balanced2 | cyclic | branched2 | branched-cyclic")
      ->check(CLI::IsMember({"balanced2", "cyclic", "branched2", "branched-cyclic"}));
  cv->add_option("--degree,-r", degree, "r for the cyclic kinds")->check(CLI::Range(2, 64));
  cv->add_flag("--homology", homology, "print abelian invariants instead of the presentation");
  add_source_options(cv, cv_src);

  // fingerprint
  auto* fp = app.add_subcommand("fingerprint", "hom/epi counts into small finite groups");
  GroupSource fp_src;
  fp->add_option("--bound", bound_flag, "largest group order")->check(CLI::Range(1, 10000));
  add_source_options(fp, fp_src);

  // distinguish
  auto* ds = app.add_subcommand("distinguish", "first finite group separating two groups");
  GroupSource ds_a, ds_b;
  ds->add_option("--bound", bound_flag, "largest group order")->check(CLI::Range(1, 10000));
  add_source_options(ds, ds_a, "-a");
  add_source_options(ds, ds_b, "-b");

  // recognize
  auto* rc = app.add_subcommand("recognize", "does a diagram represent the reference knot?");
  std::string reference, rc_diagram;
  rc->add_option("--reference", reference, "b(alpha,beta) or M(p1/q1,p2/q2,p3/q3)")->required();
  rc->add_option("--diagram", rc_diagram, "diagram file (JSON or PD text)")->required();
  rc->add_option("--max-seconds", seconds_flag, "wall-clock limit")->check(CLI::PositiveNumber);
  rc->add_option("--max-stage", stage_flag, "last dovetailing stage")->check(CLI::NonNegativeNumber);
  rc->add_option("--max-nodes", nodes_flag, "move-search nodes per stage")->check(CLI::PositiveNumber);

  // normalize-gluing
  auto* ng = app.add_subcommand("normalize-gluing", "upper-unit normal form of a gluing matrix");
  std::string matrix_text;
  std::int64_t n = 0;
  ng->add_option("--matrix", matrix_text, "a,b,c,d for (a b; c d)")->required();
  ng->add_option("--n", n, "fiber intersection number")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    Settings s;
    if (config_path.empty())
      if (const char* env = std::getenv("KNOTREC_CONFIG")) config_path = env;
    if (!config_path.empty()) s = read_config(config_path);
    if (bound_flag) s.fingerprint_bound = *bound_flag;
    if (stage_flag) s.max_stage = *stage_flag;
    if (nodes_flag) s.max_nodes = *nodes_flag;
    if (seconds_flag) s.max_seconds = *seconds_flag;

    if (*ctb) {
      auto a = parse_schubert(tb1), b = parse_schubert(tb2);
      bool eq = tb_equivalent(a, b, oriented);
      if (json)
        out << envelope({{"equivalent", eq}, {"oriented", oriented}, {"first", to_json(a)}, {"second", to_json(b)}})
            << "\n";
      else
        out << (eq ? "equivalent" : "not equivalent") << "\n";
      return kOk;
    }
    if (*cm) {
      auto a = parse_montesinos(m1), b = parse_montesinos(m2);
      std::string rel = mont_equivalent(a, b)                ? "equivalent"
                        : mont_equivalent(a, mont_mirror(b)) ? "mirror"
                                                             : "not equivalent";
      if (json)
        out << envelope({{"relation", rel}, {"first", to_json(a)}, {"second", to_json(b)}}) << "\n";
      else
        out << rel << "\n";
      return kOk;
    }
    if (*gt) {
      auto spec = parse_knot_spec(gt_form);
      GeomType g = std::holds_alternative<SchubertForm>(spec) ? tb_geom_type(std::get<SchubertForm>(spec))
                                                              : mont_geom_type(std::get<MontesinosForm>(spec));
      if (json)
        out << envelope({{"form", to_string(spec)}, {"geom_type", lower(to_string(g))}}) << "\n";
      else
        out << lower(to_string(g)) << "\n";
      return kOk;
    }
    if (*dc) {
      auto spec = parse_knot_spec(dc_form);
      if (const auto* tb = std::get_if<SchubertForm>(&spec)) {
        auto l = tb_double_cover(*tb);
        if (json)
          out << envelope({{"lens_space", to_json(l)}}) << "\n";
        else
          out << to_string(l) << "\n";
      } else {
        auto sfs = mont_double_cover(std::get<MontesinosForm>(spec));
        std::string h1 = sfs.h1_order() == 0 ? "infinite" : sfs.h1_order().str();
        if (json) {
          auto j = to_json(sfs);
          j["h1_order"] = h1;
          out << envelope({{"seifert", j}}) << "\n";
        } else {
          out << to_string(sfs) << "  e = " << to_string(sfs.euler()) << "  |H1| = " << h1 << "\n";
        }
      }
      return kOk;
    }
    if (*cv) {
      CoverKind k = kind == "balanced2"   ? CoverKind::Balanced2
                    : kind == "cyclic"    ? CoverKind::Cyclic
                    : kind == "branched2" ? CoverKind::Branched2
                                          : CoverKind::BranchedCyclic;
      CoverSpec spec{k, degree, cv_src.group()};
      auto g = cover_group(spec);
      if (homology) {
        auto h = abelian_invariants(g);
        if (json)
          out << envelope({{"kind", kind}, {"homology", to_json(h)}}) << "\n";
        else
          out << to_string(h) << "\n";
      } else if (json) {
        out << envelope({{"kind", kind}, {"presentation", presentation_to_json(g)}}) << "\n";
      } else {
        out << to_string(g) << "\n";
      }
      return kOk;
    }
    if (*fp) {
      auto f = fingerprint(fp_src.group(), s.fingerprint_bound, s.search_ceiling);
      if (json) {
        out << envelope(to_json(f)) << "\n";
      } else {
        for (const auto& e : f.entries) {
          out << e.group << "\t";
          if (e.counts)
            out << e.counts->hom << "\t" << e.counts->epi << "\n";
          else
            out << "unknown\n";
        }
      }
      return kOk;
    }
    if (*ds) {
      Budget b;
      b.order_base = s.fingerprint_bound;
      b.max_stage = 0;
      b.search_ceiling = s.search_ceiling;
      b.max_seconds = s.max_seconds;
      auto v = recognize_pair(ds_a.group(), ds_b.group(), b);
      if (json)
        out << envelope(to_json(v)) << "\n";
      else if (const auto* d = std::get_if<Distinguished>(&v))
        out << "distinguished by " << d->group << " (hom/epi " << d->first.hom << "/" << d->first.epi
            << " vs " << d->second.hom << "/" << d->second.epi << ")\n";
      else
        out << "no separating group of order <= " << std::get<PairInconclusive>(v).order_bound << "\n";
      return kOk;
    }
    if (*rc) {
      auto ref = build_reference(parse_knot_spec(reference));
      Budget b;
      b.max_stage = s.max_stage;
      b.max_nodes = s.max_nodes;
      b.max_seconds = s.max_seconds;
      b.search_ceiling = s.search_ceiling;
      auto d = load_diagram(rc_diagram);
      auto v = recognize(d, ref, b);
      if (json) {
        out << envelope(to_json(v)) << "\n";
      } else {
        out << to_string(v.kind);
        if (v.witness) {
          const auto& w = *v.witness;
          out << ": " << w.name;
          if (w.diagram_counts)
            out << " (epi " << w.diagram_counts->epi << " vs " << w.reference_counts->epi << ")";
          else
            out << " (" << w.diagram_value << " vs " << w.reference_value << ")";
        }
        if (v.certificate) {
          out << ": " << v.certificate->moves.size() << " moves to the " << v.certificate->target << "\n";
          for (const auto& m : v.certificate->moves) out << "  " << describe(m) << "\n";
        } else {
          out << "\n";
        }
      }
      switch (v.kind) {
        case VerdictKind::RepresentsK: return kRepresentsK;
        case VerdictKind::RepresentsMirrorOnly: return kMirrorOnly;
        case VerdictKind::DoesNotRepresent: return kNotK;
        case VerdictKind::Inconclusive: return kInconclusive;
      }
    }
    if (*ng) {
      auto v = parse_int_list(matrix_text);
      if (v.size() != 4) throw CLI::ValidationError("--matrix", "expected four integers a,b,c,d");
      GluingMatrix m{v[0], v[1], v[2], v[3]};
      auto [q1, q2] = normalize_gluing(m, n);
      auto product = q2.matrix() * m * q1.matrix();
      if (json) {
        out << envelope({{"q1", to_json(q1.matrix())}, {"q2", to_json(q2.matrix())}, {"product", to_json(product)}})
            << "\n";
      } else {
        auto show = [](const GluingMatrix& g) {
          return "(" + std::to_string(g.a) + " " + std::to_string(g.b) + "; " + std::to_string(g.c) + " " +
                 std::to_string(g.d) + ")";
        };
        out << "Q1 = " << show(q1.matrix()) << "\nQ2 = " << show(q2.matrix()) << "\nQ2 M Q1 = " << show(product)
            << "\n";
      }
      return kOk;
    }
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return kUsageError;
  } catch (const SyntaxError& e) {
    err << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kComputationError;
  }
  return kUsageError;
}

}  // namespace knotrec::cli
