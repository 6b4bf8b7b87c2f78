#pragma once

// Catalog of small finite groups, each realized as a permutation group and
// stored as a full multiplication table.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace knotrec {

using Permutation = std::vector<std::uint8_t>;

class FiniteGroup {
 public:
  enum class Family { Cyclic, Dihedral, Symmetric, Alternating, ProjectiveLinear };

  /// Closure of the given permutations; element 0 is the identity.
  FiniteGroup(std::string id, Family family, int degree, const std::vector<Permutation>& gens)
      : id_(std::move(id)), family_(family) {
    Permutation e(degree);
    std::iota(e.begin(), e.end(), 0);
    std::map<Permutation, int> index{{e, 0}};
    std::vector<Permutation> elems{e};
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (const auto& g : gens) {
        Permutation p = compose(elems[i], g);
        if (index.emplace(p, static_cast<int>(elems.size())).second) elems.push_back(p);
      }
    n_ = static_cast<int>(elems.size());
    mul_.resize(static_cast<std::size_t>(n_) * n_);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) mul_[a * n_ + b] = index.at(compose(elems[a], elems[b]));
    inv_.resize(n_);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (mul_[a * n_ + b] == 0) inv_[a] = b;
    compute_classes();
  }

  const std::string& id() const { return id_; }
  Family family() const { return family_; }
  int order() const { return n_; }
  int mul(int a, int b) const { return mul_[a * n_ + b]; }
  int inv(int a) const { return inv_[a]; }

  /// One representative per conjugacy class with the class size.
  const std::vector<std::pair<int, int>>& classes() const { return classes_; }

  /// Whether the elements generate the whole group.
  bool generates(const std::vector<int>& gens) const {
    std::vector<char> in(n_, 0);
    std::vector<int> stack{0};
    in[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int g : gens) {
        int y = mul(x, g);
        if (!in[y]) {
          in[y] = 1;
          ++count;
          stack.push_back(y);
        }
      }
    }
    return count == n_;
  }

 private:
  // (p*q)(i) = q(p(i)): apply p first.
  static Permutation compose(const Permutation& p, const Permutation& q) {
    Permutation r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
    return r;
  }

  void compute_classes() {
    std::vector<char> seen(n_, 0);
    for (int x = 0; x < n_; ++x) {
      if (seen[x]) continue;
      int size = 0;
      for (int g = 0; g < n_; ++g) {
        int y = mul(mul(g, x), inv_[g]);
        if (!seen[y]) {
          seen[y] = 1;
          ++size;
        }
      }
      classes_.emplace_back(x, size);
    }
  }

  std::string id_;
  Family family_;
  int n_ = 0;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::vector<std::pair<int, int>> classes_;
};

namespace detail {

inline Permutation cycle_perm(int degree, const std::vector<int>& cycle) {
  Permutation p(degree);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = 0; i < cycle.size(); ++i) p[cycle[i]] = cycle[(i + 1) % cycle.size()];
  return p;
}

inline std::vector<int> range(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

inline FiniteGroup make_cyclic(int n) {
  return FiniteGroup("Z" + std::to_string(n), FiniteGroup::Family::Cyclic, n,
                     {cycle_perm(n, range(n))});
}

/// Dihedral group of order 2n; the order-6 one is named S3.
inline FiniteGroup make_dihedral(int n) {
  std::string id = n == 3 ? "S3" : "D" + std::to_string(2 * n);
  if (n == 2)
    return FiniteGroup(id, FiniteGroup::Family::Dihedral, 4, {{1, 0, 3, 2}, {2, 3, 0, 1}});
  Permutation flip(n);
  for (int i = 0; i < n; ++i) flip[i] = static_cast<std::uint8_t>((n - i) % n);
  return FiniteGroup(id, FiniteGroup::Family::Dihedral, n, {cycle_perm(n, range(n)), flip});
}

inline FiniteGroup make_symmetric(int n) {
  return FiniteGroup("S" + std::to_string(n), FiniteGroup::Family::Symmetric, n,
                     {cycle_perm(n, {0, 1}), cycle_perm(n, range(n))});
}

inline FiniteGroup make_alternating(int n) {
  std::vector<Permutation> gens;
  for (int i = 2; i < n; ++i) gens.push_back(cycle_perm(n, {0, 1, i}));
  return FiniteGroup("A" + std::to_string(n), FiniteGroup::Family::Alternating, n, gens);
}

/// Arithmetic in GF(p) for prime p, or GF(8) = GF(2)[w]/(w^3 + w + 1).
struct SmallField {
  int q;
  bool binary() const { return q == 8; }
  int add(int a, int b) const { return binary() ? a ^ b : (a + b) % q; }
  int neg(int a) const { return binary() ? a : (q - a) % q; }
  int mul(int a, int b) const {
    if (!binary()) return a * b % q;
    int r = 0;
    for (int i = 0; i < 3; ++i)
      if (b >> i & 1) r ^= a << i;
    for (int i = 4; i >= 3; --i)
      if (r >> i & 1) r ^= 0b1011 << (i - 3);
    return r;
  }
  int inv(int a) const {
    for (int b = 1; b < q; ++b)
      if (mul(a, b) == 1) return b;
    throw std::logic_error("zero has no inverse");
  }
  int primitive() const {
    for (int g = 2; g < q; ++g) {
      int x = g, k = 1;
      while (x != 1) {
        x = mul(x, g);
        ++k;
      }
      if (k == q - 1) return g;
    }
    return 1;
  }
};

/// PSL(2, q) acting on the projective line {0..q-1, infinity = q}.
inline FiniteGroup make_psl2(int q) {
  SmallField f{q};
  const int inf = q;
  auto moebius = [&](int a, int b, int c, int d) {
    Permutation p(q + 1);
    for (int x = 0; x <= q; ++x) {
      int num, den;
      if (x == inf) {
        num = a;
        den = c;
      } else {
        num = f.add(f.mul(a, x), b);
        den = f.add(f.mul(c, x), d);
      }
      p[x] = static_cast<std::uint8_t>(den == 0 ? inf : f.mul(num, f.inv(den)));
    }
    return p;
  };
  int s = f.primitive();
  return FiniteGroup("PSL(2," + std::to_string(q) + ")", FiniteGroup::Family::ProjectiveLinear,
                     q + 1,
                     {moebius(1, 1, 0, 1), moebius(s, 0, 0, f.inv(s)), moebius(0, f.neg(1), 1, 0)});
}

}  // namespace detail

/// Catalog entry, constructed on first use and then shared read-only.
class CatalogEntry {
 public:
  CatalogEntry(std::string id, int order, int rank, std::function<FiniteGroup()> make)
      : id_(std::move(id)), order_(order), rank_(rank), make_(std::move(make)) {}
  const std::string& id() const { return id_; }
  int order() const { return order_; }
  const FiniteGroup& group() const {
    std::call_once(state_->once, [this] { state_->group = std::make_unique<FiniteGroup>(make_()); });
    return *state_->group;
  }

  /// rank orders groups of equal order: dihedral first.
  int rank() const { return rank_; }

 private:
  std::string id_;
  int order_;
  int rank_;
  std::function<FiniteGroup()> make_;
  struct State {
    std::once_flag once;
    std::unique_ptr<FiniteGroup> group;
  };
  std::shared_ptr<State> state_ = std::make_shared<State>();
};

/// All catalog groups in canonical order: by order, dihedral first, then
/// cyclic, then the rest. Isomorphic duplicates (e.g. PSL(2,5) = A5) and the
/// trivial group are omitted.
inline const std::vector<CatalogEntry>& group_catalog() {
  static const std::vector<CatalogEntry> catalog = [] {
    std::vector<CatalogEntry> c;
    for (int n = 2; n <= 30; ++n) {
      c.emplace_back(n == 3 ? "S3" : "D" + std::to_string(2 * n), 2 * n, 0,
                     [n] { return detail::make_dihedral(n); });
      c.emplace_back("Z" + std::to_string(n), n, 1, [n] { return detail::make_cyclic(n); });
    }
    c.emplace_back("A4", 12, 2, [] { return detail::make_alternating(4); });
    c.emplace_back("S4", 24, 2, [] { return detail::make_symmetric(4); });
    c.emplace_back("A5", 60, 2, [] { return detail::make_alternating(5); });
    c.emplace_back("S5", 120, 2, [] { return detail::make_symmetric(5); });
    c.emplace_back("A6", 360, 2, [] { return detail::make_alternating(6); });
    c.emplace_back("S6", 720, 2, [] { return detail::make_symmetric(6); });
    for (int q : {7, 8, 11, 13}) {
      int order = q == 8 ? 504 : q * (q * q - 1) / 2;
      c.emplace_back("PSL(2," + std::to_string(q) + ")", order, 3,
                     [q] { return detail::make_psl2(q); });
    }
    std::stable_sort(c.begin(), c.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
      return std::pair{a.order(), a.rank()} < std::pair{b.order(), b.rank()};
    });
    return c;
  }();
  return catalog;
}

inline const CatalogEntry& catalog_entry(const std::string& id) {
  for (const auto& e : group_catalog())
    if (e.id() == id) return e;
  throw std::out_of_range("no catalog group named '" + id + "'");
}

}  // namespace knotrec
