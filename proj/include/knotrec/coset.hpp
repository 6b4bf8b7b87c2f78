#pragma once

// Todd-Coxeter coset enumeration (HLT strategy) and Reidemeister-Schreier
// rewriting for finite-index subgroups.

#include "knotrec/presentation.hpp"

#include <deque>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace knotrec {

/// Column of letter x: generator g gives 2(g-1), its inverse 2(g-1)+1.
inline int letter_column(int x) { return 2 * (std::abs(x) - 1) + (x < 0 ? 1 : 0); }

/// Complete coset table; table[c][letter_column(x)] is the coset c·x.
struct CosetTable {
  int generator_count = 0;
  std::vector<std::vector<int>> table;

  int index() const { return static_cast<int>(table.size()); }
  int act(int coset, int letter) const { return table[coset][letter_column(letter)]; }
  int act(int coset, const Word& w) const {
    for (int x : w) coset = act(coset, x);
    return coset;
  }
};

struct Exhausted {
  int coset_limit;
};

using CosetResult = std::variant<CosetTable, Exhausted>;

namespace detail {

class ToddCoxeter {
 public:
  ToddCoxeter(const GroupPresentation& p, int limit)
      : p_(p), cols_(2 * p.generator_count), limit_(limit) {
    new_coset();
  }

  bool run(const std::vector<Word>& subgroup) {
    for (const auto& w : subgroup)
      if (!scan_and_fill(0, w)) return false;
    for (int a = 0; a < static_cast<int>(table_.size()); ++a) {
      for (const auto& r : p_.relators) {
        if (!live(a)) break;
        if (!scan_and_fill(a, r)) return false;
      }
      for (int x = 0; x < cols_ && live(a); ++x)
        if (table_[a][x] < 0 && !define(a, x)) return false;
    }
    return true;
  }

  CosetTable compact() const {
    std::vector<int> index(table_.size(), -1);
    int n = 0;
    for (std::size_t c = 0; c < table_.size(); ++c)
      if (parent_[c] == static_cast<int>(c)) index[c] = n++;
    CosetTable t{p_.generator_count, {}};
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (index[c] < 0) continue;
      std::vector<int> row(cols_);
      for (int x = 0; x < cols_; ++x) row[x] = index[rep(table_[c][x])];
      t.table.push_back(std::move(row));
    }
    return t;
  }

 private:
  static int inv(int col) { return col ^ 1; }
  bool live(int c) const { return parent_[c] == c; }

  int rep(int c) const {
    while (parent_[c] != c) c = parent_[c];
    return c;
  }
  int rep_compress(int c) {
    int r = rep(c);
    while (parent_[c] != r) {
      int next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void new_coset() {
    table_.emplace_back(cols_, -1);
    parent_.push_back(static_cast<int>(parent_.size()));
  }

  bool define(int c, int x) {
    if (static_cast<int>(table_.size()) >= limit_) return false;
    int d = static_cast<int>(table_.size());
    new_coset();
    table_[c][x] = d;
    table_[d][inv(x)] = c;
    return true;
  }

  bool scan_and_fill(int c, const Word& w) {
    const int len = static_cast<int>(w.size());
    if (len == 0) return true;
    int f = c, b = c, i = 0, j = len - 1;
    for (;;) {
      while (i <= j && table_[f][letter_column(w[i])] >= 0) f = table_[f][letter_column(w[i++])];
      if (i > j) {
        if (f != b) coincidence(f, b);
        return true;
      }
      while (j >= i && table_[b][inv(letter_column(w[j]))] >= 0)
        b = table_[b][inv(letter_column(w[j--]))];
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        int x = letter_column(w[i]);
        table_[f][x] = b;
        table_[b][inv(x)] = f;
        return true;
      }
      if (!define(f, letter_column(w[i]))) return false;
    }
  }

  void merge(int k, int l, std::deque<int>& queue) {
    int a = rep_compress(k), b = rep_compress(l);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    queue.push_back(b);
  }

  void coincidence(int a, int b) {
    std::deque<int> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      int g = queue.front();
      queue.pop_front();
      for (int x = 0; x < cols_; ++x) {
        int d = table_[g][x];
        if (d < 0) continue;
        table_[d][inv(x)] = -1;
        int m = rep_compress(g), n = rep_compress(d);
        if (table_[m][x] >= 0)
          merge(n, table_[m][x], queue);
        else if (table_[n][inv(x)] >= 0)
          merge(m, table_[n][inv(x)], queue);
        else {
          table_[m][x] = n;
          table_[n][inv(x)] = m;
        }
      }
    }
  }

  const GroupPresentation& p_;
  int cols_;
  int limit_;
  std::vector<std::vector<int>> table_;
  std::vector<int> parent_;
};

}  // namespace detail

/// Enumerate the cosets of the subgroup generated by `subgroup`. Gives up
/// with Exhausted once `coset_limit` cosets have been defined.
inline CosetResult coset_enumeration(const GroupPresentation& p, const std::vector<Word>& subgroup,
                                     int coset_limit = 1 << 20) {
  detail::ToddCoxeter tc(p, coset_limit);
  if (!tc.run(subgroup)) return Exhausted{coset_limit};
  return tc.compact();
}

/// Check that `t` is a complete, consistent coset table for `p`: inverse
/// columns agree and every relator closes up at every coset.
inline void validate_coset_table(const GroupPresentation& p, const CosetTable& t) {
  if (t.generator_count != p.generator_count)
    throw InconsistentTable("generator count differs from the presentation");
  const int n = t.index(), cols = 2 * p.generator_count;
  if (n == 0) throw InconsistentTable("empty coset table");
  for (int c = 0; c < n; ++c) {
    if (static_cast<int>(t.table[c].size()) != cols) throw InconsistentTable("ragged coset table");
    for (int x = 0; x < cols; ++x) {
      int d = t.table[c][x];
      if (d < 0 || d >= n) throw InconsistentTable("undefined coset table entry");
      if (t.table[d][x ^ 1] != c) throw InconsistentTable("inverse columns disagree");
    }
    for (const auto& r : p.relators)
      if (t.act(c, r) != c)
        throw InconsistentTable("relator does not close at coset " + std::to_string(c));
  }
}

/// Reidemeister-Schreier rewriting relative to a Schreier transversal chosen
/// by breadth-first search in column order from coset 0.
class SchreierRewriter {
 public:
  SchreierRewriter(const GroupPresentation& p, CosetTable t) : p_(p), t_(std::move(t)) {
    validate_coset_table(p_, t_);
    const int n = t_.index(), k = p_.generator_count;
    std::vector<std::pair<int, int>> tree_in(n, {-1, -1});  // (coset, column) reaching it
    std::vector<bool> seen(n, false);
    std::deque<int> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
      int c = queue.front();
      queue.pop_front();
      for (int x = 0; x < 2 * k; ++x) {
        int d = t_.table[c][x];
        if (seen[d]) continue;
        seen[d] = true;
        tree_in[d] = {c, x};
        queue.push_back(d);
      }
    }
    // Generator (c, g) is trivial iff the edge c --g--> c·g is a tree edge
    // in either direction.
    gen_id_.assign(n, std::vector<int>(k, 0));
    for (int c = 0; c < n; ++c)
      for (int g = 1; g <= k; ++g) {
        int col = letter_column(g), d = t_.table[c][col];
        bool tree = tree_in[d] == std::pair{c, col} || tree_in[c] == std::pair{d, col ^ 1};
        if (!tree) gen_id_[c][g - 1] = ++count_;
      }
  }

  int generator_count() const { return count_; }
  const CosetTable& table() const { return t_; }

  /// Rewrite a word read from coset `start` as a word in the Schreier
  /// generators. Closed loops give elements of the subgroup.
  Word rewrite(const Word& w, int start = 0) const {
    Word out;
    int cur = start;
    for (int x : w) {
      int g = std::abs(x);
      if (x > 0) {
        if (int id = gen_id_[cur][g - 1]) out.push_back(id);
        cur = t_.act(cur, x);
      } else {
        int prev = t_.act(cur, x);
        if (int id = gen_id_[prev][g - 1]) out.push_back(-id);
        cur = prev;
      }
    }
    return free_reduce(out);
  }

  /// Presentation of the subgroup: every relator rewritten from every coset.
  GroupPresentation presentation() const {
    std::vector<Word> rels;
    for (int c = 0; c < t_.index(); ++c)
      for (const auto& r : p_.relators) rels.push_back(rewrite(r, c));
    return GroupPresentation(count_, std::move(rels));
  }

 private:
  GroupPresentation p_;
  CosetTable t_;
  std::vector<std::vector<int>> gen_id_;
  int count_ = 0;
};

inline GroupPresentation reidemeister_schreier(const GroupPresentation& p, const CosetTable& t) {
  return SchreierRewriter(p, t).presentation();
}

/// Quotient by the r-th powers of the meridians: the pi-orbifold group when
/// r = 2 and p is a link group with meridians marked.
inline GroupPresentation orbifold_group(const GroupPresentation& p, int r) {
  if (!p.meridian_marks) throw MissingMeridians("presentation carries no meridian marks");
  std::vector<Word> rels = p.relators;
  for (const auto& m : *p.meridian_marks) rels.push_back(power(m, r));
  return GroupPresentation(p.generator_count, std::move(rels), p.meridian_marks);
}

}  // namespace knotrec
