#pragma once

// Coxeter-element context for the dual structure: the X / Xi residue
// bipartition, classification of the reflections dividing c, elementary
// divisors, annular block partitions and the crossing predicate.

#include <cassert>
#include <optional>
#include <set>

#include "garside/periodic_perm.hpp"

namespace garside {

namespace detail {

/// Smallest element of R + nZ strictly above z (R: sorted residues in [1,n]).
inline Int next_in_classes(const std::vector<Int>& residues, Int n, Int z) {
  for (Int y = z + 1; y <= z + n; ++y) {
    if (std::binary_search(residues.begin(), residues.end(), residue(y, n))) return y;
  }
  throw DomainError("empty residue set");
}

/// Largest element of R + nZ strictly below z.
inline Int prev_in_classes(const std::vector<Int>& residues, Int n, Int z) {
  for (Int y = z - 1; y >= z - n; --y) {
    if (std::binary_search(residues.begin(), residues.end(), residue(y, n))) return y;
  }
  throw DomainError("empty residue set");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// CoxeterSystem

/// A Coxeter element c together with its two-cycle form: c translates the
/// class set X + nZ one position up and Xi + nZ one position down.
class CoxeterSystem {
public:
  CoxeterSystem(Int n, PeriodicPermutation c, std::vector<Int> word)
      : n_(n), c_(std::move(c)), c_inv_(inverse(c_)), word_(std::move(word)) {
    OrbitDecomposition dec = orbit_decomposition(c_);
    if (dec.orbits.size() != 2) throw DomainError("Coxeter element must have exactly two orbit classes");
    for (const Orbit& orb : dec.orbits) {
      if (orb.shift == 1)
        x_ = orb.residues;
      else if (orb.shift == -1)
        xi_ = orb.residues;
      else
        throw DomainError("Coxeter element orbit shifts must be +1 and -1");
    }
    if (x_.empty() || xi_.empty()) throw DomainError("Coxeter element orbit shifts must be +1 and -1");
    for (Int r : x_) {
      if (c_.apply(r) != detail::next_in_classes(x_, n_, r))
        throw DomainError("Coxeter element does not act as successor on X");
    }
    for (Int r : xi_) {
      if (c_.apply(r) != detail::prev_in_classes(xi_, n_, r))
        throw DomainError("Coxeter element does not act as predecessor on Xi");
    }
    in_x_.assign(static_cast<std::size_t>(n_), 0);
    for (Int r : x_) in_x_[static_cast<std::size_t>(r - 1)] = 1;
  }

  Int n() const { return n_; }
  const PeriodicPermutation& c() const { return c_; }
  const PeriodicPermutation& c_inverse() const { return c_inv_; }
  const std::vector<Int>& x_residues() const { return x_; }
  const std::vector<Int>& xi_residues() const { return xi_; }
  const std::vector<Int>& word() const { return word_; }

  bool in_x(Int z) const { return in_x_[static_cast<std::size_t>(residue(z, n_) - 1)] != 0; }
  bool in_xi(Int z) const { return !in_x(z); }

  /// Both sides of the bipartition have at least two classes; lattice
  /// structure fails exactly then.
  bool two_sided() const { return x_.size() >= 2 && xi_.size() >= 2; }

private:
  Int n_;
  PeriodicPermutation c_;
  PeriodicPermutation c_inv_;
  std::vector<Int> word_;
  std::vector<Int> x_, xi_;  // sorted residues in [1, n]
  std::vector<char> in_x_;
};

/// Product of the generators s_i = (i, i+1) in the given order (each of
/// 1..n exactly once); rightmost factor acts first.
inline CoxeterSystem coxeter_from_word(Int n, const std::vector<Int>& order) {
  if (n < 2) throw DomainError("rank must be at least 2");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  if (static_cast<Int>(order.size()) != n) throw DomainError("order must list each generator once");
  for (Int i : order) {
    if (i < 1 || i > n || seen[static_cast<std::size_t>(i - 1)])
      throw DomainError("order must list each generator once");
    seen[static_cast<std::size_t>(i - 1)] = 1;
  }
  PeriodicPermutation c = PeriodicPermutation::identity(n);
  for (Int i : order) c = compose(c, PeriodicPermutation::reflection(n, i, i + 1));
  return CoxeterSystem(n, std::move(c), order);
}

/// The distinguished element c0 = s_1 s_2 ... s_n, with Xi = {1}.
inline CoxeterSystem standard_coxeter(Int n) {
  std::vector<Int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Int{1});
  return coxeter_from_word(n, order);
}

/// Searches the n! generator orders for one whose element realizes the given
/// X-residue set.  Every bipartition into two nonempty parts is realized.
inline CoxeterSystem coxeter_from_bipartition(Int n, const std::vector<Int>& x_set) {
  std::vector<Int> want(x_set);
  std::sort(want.begin(), want.end());
  std::vector<Int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Int{1});
  do {
    CoxeterSystem sys = coxeter_from_word(n, order);
    if (sys.x_residues() == want) return sys;
  } while (std::next_permutation(order.begin(), order.end()));
  throw DomainError("no generator order realizes the requested bipartition");
}

// ---------------------------------------------------------------------------
// Atoms

enum class AtomKind { NotAtom, Mixed, BothX, BothXi };

/// Which reflections (x, y) divide c: mixed pairs always do, same-side pairs
/// exactly when the gap is less than one period.  Pairs with x = y mod n are
/// not reflections and classify as NotAtom.
inline AtomKind classify_atom(const CoxeterSystem& sys, Int x, Int y) {
  if (residue(x, sys.n()) == residue(y, sys.n())) return AtomKind::NotAtom;
  bool xx = sys.in_x(x), yx = sys.in_x(y);
  if (xx != yx) return AtomKind::Mixed;
  Int gap = y > x ? y - x : x - y;
  if (gap >= sys.n()) return AtomKind::NotAtom;
  return xx ? AtomKind::BothX : AtomKind::BothXi;
}

struct Atom {
  Int x, y;
  AtomKind kind;

  PeriodicPermutation perm(const CoxeterSystem& sys) const {
    return PeriodicPermutation::reflection(sys.n(), x, y);
  }
};

/// All atoms (x, y) with x in [1, n] and x < y <= hi, y >= lo; this
/// normalization lists every atom at most once up to simultaneous
/// translation.
inline std::vector<Atom> atoms_in_window(const CoxeterSystem& sys, Int lo, Int hi) {
  if (lo >= hi) throw DomainError("empty atom window");
  std::vector<Atom> out;
  for (Int x = 1; x <= sys.n(); ++x) {
    for (Int y = std::max(lo, x + 1); y <= hi; ++y) {
      AtomKind k = classify_atom(sys, x, y);
      if (k != AtomKind::NotAtom) out.push_back({x, y, k});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Annular block partitions

/// One block of a periodic partition of the integers.  A finite block stores
/// one representative orbit (distinct residues; all n-translates are implied
/// as separate parts).  A periodic block stores a residue class set and is a
/// single translation-invariant part.
struct Block {
  bool periodic = false;
  std::vector<Int> points;  // finite: sorted integers; periodic: sorted residues in [1, n]

  friend bool operator==(const Block& a, const Block& b) {
    return a.periodic == b.periodic && a.points == b.points;
  }
};

/// Canonical representative: translate a finite block so its minimum lies in
/// [1, n].
inline Block canonical_block(const Block& b, Int n) {
  if (b.periodic || b.points.empty()) return b;
  Block out = b;
  Int lo = out.points.front();
  Int adj = residue(lo, n) - lo;
  for (Int& p : out.points) p += adj;
  return out;
}

struct AnnularPartition {
  Int n = 0;
  std::vector<Block> blocks;
};

namespace detail {

// Cyclic boundary order of the compactified strip: X-points by increasing
// value, then Xi-points by decreasing value.
struct CirclePos {
  Int side;  // 0 = X boundary, 1 = Xi boundary
  Int key;

  friend bool operator<(const CirclePos& a, const CirclePos& b) {
    if (a.side != b.side) return a.side < b.side;
    return a.key < b.key;
  }
  friend bool operator==(const CirclePos& a, const CirclePos& b) {
    return a.side == b.side && a.key == b.key;
  }
};

inline CirclePos circle_pos(const CoxeterSystem& sys, Int z) {
  return sys.in_x(z) ? CirclePos{0, z} : CirclePos{1, -z};
}

inline bool in_open_arc(const CirclePos& a, const CirclePos& b, const CirclePos& z) {
  if (a < b) return a < z && z < b;
  return a < z || z < b;
}

/// Two chords {x,y} and {z,t} interleave on the circle.
inline bool chords_interleave(const CoxeterSystem& sys, Int x, Int y, Int z, Int t) {
  CirclePos px = circle_pos(sys, x), py = circle_pos(sys, y);
  CirclePos pz = circle_pos(sys, z), pt = circle_pos(sys, t);
  return in_open_arc(px, py, pz) != in_open_arc(px, py, pt);
}

/// Some chord of P interleaves some chord of Q, or the point sets meet.
inline bool point_sets_cross(const CoxeterSystem& sys, const std::vector<Int>& p,
                             const std::vector<Int>& q) {
  for (Int a : p)
    for (Int b : q)
      if (a == b) return true;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      for (std::size_t k = 0; k < q.size(); ++k)
        for (std::size_t l = k + 1; l < q.size(); ++l)
          if (chords_interleave(sys, p[i], p[j], q[k], q[l])) return true;
  return false;
}

inline std::vector<Int> periodic_points_in(const std::vector<Int>& residues, Int n, Int lo, Int hi) {
  std::vector<Int> pts;
  for (Int z = lo; z <= hi; ++z)
    if (std::binary_search(residues.begin(), residues.end(), residue(z, n))) pts.push_back(z);
  return pts;
}

}  // namespace detail

/// Whether two blocks of a periodic partition cross: they interleave in the
/// cyclic boundary order of the strip compactified to a disk, some pair of
/// their parts shares a point, or both are periodic and distinct (two loops
/// around the annulus always intersect).  A block never crosses itself.
inline bool blocks_cross(const CoxeterSystem& sys, const Block& a, const Block& b) {
  Int n = sys.n();
  Block ca = canonical_block(a, n), cb = canonical_block(b, n);
  if (ca.periodic && cb.periodic) return !(ca.points == cb.points);
  if (ca.periodic || cb.periodic) {
    const Block& fin = ca.periodic ? cb : ca;
    const Block& per = ca.periodic ? ca : cb;
    if (fin.points.empty()) return false;
    for (Int p : fin.points)
      if (std::binary_search(per.points.begin(), per.points.end(), residue(p, n))) return true;
    std::vector<Int> q = detail::periodic_points_in(per.points, n, fin.points.front() - 2 * n,
                                                    fin.points.back() + 2 * n);
    return detail::point_sets_cross(sys, fin.points, q);
  }
  if (ca.points.empty() || cb.points.empty()) return false;
  // Finite against finite: slide one block over every translate whose extent
  // touches the other's.
  Int a_lo = ca.points.front(), a_hi = ca.points.back();
  Int b_lo = cb.points.front(), b_hi = cb.points.back();
  Int k_min = (a_lo - b_hi) / n - 2, k_max = (a_hi - b_lo) / n + 2;
  for (Int k = k_min; k <= k_max; ++k) {
    std::vector<Int> q(cb.points);
    for (Int& z : q) z += k * n;
    if (q == ca.points) continue;  // identical part
    if (q.back() < a_lo || q.front() > a_hi) continue;
    if (detail::point_sets_cross(sys, ca.points, q)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Elementary divisors

/// A one-block divisor of c: either a finite cycle visiting an increasing
/// X-run then a decreasing Xi-run, or the pair of infinite cycles translating
/// a class set one step up along X and one step down along Xi.
struct ElementaryDivisor {
  enum class Kind { Finite, InfinitePair };
  Kind kind = Kind::Finite;
  std::vector<Int> xs;   // finite: integer points; pair: residues in [1, n]; sorted
  std::vector<Int> xis;  // likewise

  Int length() const {
    Int h = static_cast<Int>(xs.size()), k = static_cast<Int>(xis.size());
    return kind == Kind::Finite ? h + k - 1 : h + k;
  }

  Block block() const {
    Block b;
    b.periodic = kind == Kind::InfinitePair;
    b.points = xs;
    b.points.insert(b.points.end(), xis.begin(), xis.end());
    std::sort(b.points.begin(), b.points.end());
    return b;
  }

  /// The underlying permutation (a_1,..,a_h,alpha_k,..,alpha_1) resp.
  /// (a_1,..,a_h)[1](alpha_k,..,alpha_1)[-1].
  PeriodicPermutation perm(const CoxeterSystem& sys) const {
    Int n = sys.n();
    if (kind == Kind::Finite) {
      Cycle cyc;
      cyc.entries = xs;
      for (auto it = xis.rbegin(); it != xis.rend(); ++it) cyc.entries.push_back(*it);
      return from_cycles(n, {cyc});
    }
    Cycle up{xs, 1};
    Cycle down;
    down.entries.assign(xis.rbegin(), xis.rend());
    down.shift = -1;
    return from_cycles(n, {up, down});
  }

  friend bool operator==(const ElementaryDivisor& a, const ElementaryDivisor& b) {
    return a.kind == b.kind && a.xs == b.xs && a.xis == b.xis;
  }
};

namespace detail {

inline std::optional<ElementaryDivisor> elementary_from_block(const CoxeterSystem& sys,
                                                              const Block& block) {
  Int n = sys.n();
  ElementaryDivisor ed;
  ed.kind = block.periodic ? ElementaryDivisor::Kind::InfinitePair : ElementaryDivisor::Kind::Finite;
  for (Int p : block.points) (sys.in_x(p) ? ed.xs : ed.xis).push_back(p);
  std::sort(ed.xs.begin(), ed.xs.end());
  std::sort(ed.xis.begin(), ed.xis.end());
  if (block.periodic) {
    if (ed.xs.empty() || ed.xis.empty()) return std::nullopt;  // must meet X and Xi
    return ed;
  }
  if (ed.xs.size() + ed.xis.size() < 2) return std::nullopt;
  // Runs must each fit within one period.
  if (!ed.xs.empty() && ed.xs.back() - ed.xs.front() >= n) return std::nullopt;
  if (!ed.xis.empty() && ed.xis.back() - ed.xis.front() >= n) return std::nullopt;
  return ed;
}

}  // namespace detail

/// Extracts the block partition of w: one finite block per finite orbit
/// class (smallest-residue representative orbit, canonically translated) and
/// one periodic block carrying the infinite orbits.  Fails when the infinite
/// orbits are not exactly a +1/-1 pair.
inline std::optional<AnnularPartition> try_annular_partition(const CoxeterSystem& sys,
                                                             const PeriodicPermutation& w) {
  Int n = sys.n();
  OrbitDecomposition dec = orbit_decomposition(w);
  AnnularPartition part;
  part.n = n;
  std::vector<Int> up, down;
  for (const Orbit& orb : dec.orbits) {
    if (orb.shift == 0) {
      Block b;
      Int x = orb.residues.front();
      for (std::size_t j = 0; j < orb.residues.size(); ++j) {
        b.points.push_back(x);
        x = w.apply(x);
      }
      std::sort(b.points.begin(), b.points.end());
      part.blocks.push_back(canonical_block(b, n));
    } else if (orb.shift == 1) {
      if (!up.empty()) return std::nullopt;
      up = orb.residues;
    } else if (orb.shift == -1) {
      if (!down.empty()) return std::nullopt;
      down = orb.residues;
    } else {
      return std::nullopt;
    }
  }
  if (up.empty() != down.empty()) return std::nullopt;
  if (!up.empty()) {
    Block b;
    b.periodic = true;
    b.points = up;
    b.points.insert(b.points.end(), down.begin(), down.end());
    std::sort(b.points.begin(), b.points.end());
    part.blocks.push_back(std::move(b));
  }
  std::sort(part.blocks.begin(), part.blocks.end(), [](const Block& a, const Block& b) {
    return std::pair(a.points.front(), !a.periodic) < std::pair(b.points.front(), !b.periodic);
  });
  return part;
}

/// Orbit partition of a divisor of c.
inline AnnularPartition partition_of_divisor(const CoxeterSystem& sys, const PeriodicPermutation& p) {
  auto part = try_annular_partition(sys, p);
  if (!part) throw DomainError("element is not a divisor of c");
  return *part;
}

namespace detail {

/// Builds the canonical permutation of a partition without validating
/// non-crossing: each finite block becomes the X-up/Xi-down cycle, the
/// periodic block the successor/predecessor pair.
inline std::optional<PeriodicPermutation> build_from_partition(const CoxeterSystem& sys,
                                                               const AnnularPartition& part) {
  Int n = sys.n();
  std::vector<Int> win(static_cast<std::size_t>(n));
  std::iota(win.begin(), win.end(), Int{1});
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  auto claim = [&](Int z) {
    Int r = residue(z, n);
    if (used[static_cast<std::size_t>(r - 1)]) throw DomainError("blocks overlap");
    used[static_cast<std::size_t>(r - 1)] = 1;
  };
  auto set_image = [&](Int from, Int to) {
    Int r = residue(from, n);
    win[static_cast<std::size_t>(r - 1)] = to + (r - from);
  };
  for (const Block& b : part.blocks) {
    for (Int p : b.points) claim(p);
    auto ed = elementary_from_block(sys, b);
    if (!ed) {
      if (!b.periodic && b.points.size() == 1) continue;  // singleton block
      return std::nullopt;
    }
    if (b.periodic) {
      std::vector<Int> xs = ed->xs, xis = ed->xis;
      for (Int r : xs) set_image(r, next_in_classes(xs, n, r));
      for (Int r : xis) set_image(r, prev_in_classes(xis, n, r));
    } else {
      const std::vector<Int>& xs = ed->xs;
      const std::vector<Int>& xis = ed->xis;
      std::vector<Int> cycle = xs;
      for (auto it = xis.rbegin(); it != xis.rend(); ++it) cycle.push_back(*it);
      for (std::size_t j = 0; j < cycle.size(); ++j)
        set_image(cycle[j], cycle[(j + 1) % cycle.size()]);
    }
  }
  return PeriodicPermutation(n, std::move(win));
}

}  // namespace detail

/// The unique divisor of c whose orbit partition is the given partition.
/// Blocks must be pairwise non-crossing (each finite block must also not
/// cross its own translates) and periodic blocks must meet X and Xi.
inline PeriodicPermutation divisor_from_partition(const CoxeterSystem& sys,
                                                  const AnnularPartition& part) {
  for (std::size_t i = 0; i < part.blocks.size(); ++i) {
    if (!part.blocks[i].periodic && blocks_cross(sys, part.blocks[i], part.blocks[i]))
      throw DomainError("block crosses its own translates");
    for (std::size_t j = i + 1; j < part.blocks.size(); ++j)
      if (blocks_cross(sys, part.blocks[i], part.blocks[j])) throw DomainError("blocks cross");
  }
  auto p = detail::build_from_partition(sys, part);
  if (!p) throw DomainError("partition has an invalid block");
  return *p;
}

/// Decomposition of a group element into elementary-divisor candidates:
/// succeeds when the orbit structure is a +1/-1 pair plus finite orbits, the
/// blocks are pairwise non-crossing, and the element equals the canonical
/// permutation rebuilt from its own partition.  Divisors of c are exactly
/// the elements for which this succeeds.
inline std::optional<std::vector<ElementaryDivisor>> try_elementary_factors(
    const CoxeterSystem& sys, const PeriodicPermutation& p) {
  auto part = try_annular_partition(sys, p);
  if (!part) return std::nullopt;
  for (std::size_t i = 0; i < part->blocks.size(); ++i) {
    if (!part->blocks[i].periodic && blocks_cross(sys, part->blocks[i], part->blocks[i]))
      return std::nullopt;
    for (std::size_t j = i + 1; j < part->blocks.size(); ++j)
      if (blocks_cross(sys, part->blocks[i], part->blocks[j])) return std::nullopt;
  }
  std::vector<ElementaryDivisor> factors;
  for (const Block& b : part->blocks) {
    if (!b.periodic && b.points.size() == 1) continue;
    auto ed = detail::elementary_from_block(sys, b);
    if (!ed) return std::nullopt;
    factors.push_back(*ed);
  }
  auto rebuilt = detail::build_from_partition(sys, *part);
  if (!rebuilt || *rebuilt != p) return std::nullopt;
  return factors;
}

/// Unique decomposition of a divisor of c into pairwise non-crossing
/// elementary divisors; factor lengths add up to the length of p.
inline std::vector<ElementaryDivisor> elementary_factors(const CoxeterSystem& sys,
                                                         const PeriodicPermutation& p) {
  if (!divides(p, sys.c())) throw DomainError("element does not divide c");
  auto factors = try_elementary_factors(sys, p);
  assert(factors);
  return *factors;
}

// ---------------------------------------------------------------------------
// Codimension-one divisors

/// Which of the three shapes a length n-1 divisor of c takes: a single full
/// cycle (1), an X-run split off the infinite pair (2), or a Xi-run split
/// off (3).  Returns 0 when none matches.
inline int codim1_form(const CoxeterSystem& sys, const PeriodicPermutation& d) {
  if (!divides(d, sys.c()) || reflection_length(d) != sys.n() - 1) return 0;
  auto factors = try_elementary_factors(sys, d);
  if (!factors) return 0;
  auto consecutive_in = [&](const std::vector<Int>& run, const std::vector<Int>& classes) {
    for (std::size_t j = 0; j + 1 < run.size(); ++j)
      if (detail::next_in_classes(classes, sys.n(), run[j]) != run[j + 1]) return false;
    return true;
  };
  if (factors->size() == 1 && (*factors)[0].kind == ElementaryDivisor::Kind::Finite) {
    const ElementaryDivisor& ed = (*factors)[0];
    if (static_cast<Int>(ed.xs.size()) == static_cast<Int>(sys.x_residues().size()) &&
        static_cast<Int>(ed.xis.size()) == static_cast<Int>(sys.xi_residues().size()) &&
        consecutive_in(ed.xs, sys.x_residues()) && consecutive_in(ed.xis, sys.xi_residues()))
      return 1;
    return 0;
  }
  // Remaining shapes: the infinite pair with one consecutive run split off
  // its X side (2) or its Xi side (3); a split-off run of length one is a
  // fixed class and contributes no finite factor.
  const ElementaryDivisor* fin = nullptr;
  const ElementaryDivisor* pair = nullptr;
  for (const ElementaryDivisor& ed : *factors) {
    auto& slot = ed.kind == ElementaryDivisor::Kind::Finite ? fin : pair;
    if (slot) return 0;
    slot = &ed;
  }
  if (!pair) return 0;
  if (pair->xis.size() == sys.xi_residues().size() &&
      (!fin || (fin->xis.empty() && consecutive_in(fin->xs, sys.x_residues()))))
    return 2;
  if (pair->xs.size() == sys.x_residues().size() &&
      (!fin || (fin->xs.empty() && consecutive_in(fin->xis, sys.xi_residues()))))
    return 3;
  return 0;
}

/// All divisors of c of length n-1 whose window entries lie in [1-n, 2n]:
/// the quotients of c by one atom.
inline std::vector<PeriodicPermutation> codim1_divisors(const CoxeterSystem& sys) {
  Int n = sys.n();
  std::set<PeriodicPermutation> out;
  for (const Atom& atom : atoms_in_window(sys, 1 - n, 2 * n)) {
    PeriodicPermutation d = compose(sys.c(), atom.perm(sys));
    bool in_window = true;
    for (Int v : d.window())
      if (v < 1 - n || v > 2 * n) in_window = false;
    if (!in_window) continue;
    assert(codim1_form(sys, d) != 0);
    out.insert(std::move(d));
  }
  return std::vector<PeriodicPermutation>(out.begin(), out.end());
}

}  // namespace garside
