#pragma once

// Exact arithmetic on n-periodic permutations of the integers: window
// representation, cycle notation, orbit/shift decomposition and the
// reflection-length formula for the affine symmetric group.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace garside {

using Int = std::int64_t;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (cycle grammar, window notation, words).
class ParseError : public Error {
public:
  using Error::Error;
};

/// A mathematical precondition was violated (period mismatch, operand
/// outside the group, repeated residue, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

class OverflowError : public Error {
public:
  using Error::Error;
};

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

/// Representative of x modulo n in [1, n].
inline Int residue(Int x, Int n) {
  Int r = x % n;
  if (r <= 0) r += n;
  return r;
}

// ---------------------------------------------------------------------------
// PeriodicPermutation

/// An n-periodic bijection w of the integers, w(x + n) = w(x) + n, stored by
/// its window w(1), ..., w(n).  Elements of the affine symmetric group are
/// exactly the permutations with shift zero; permutations with nonzero shift
/// arise as intermediate values and are representable.
class PeriodicPermutation {
public:
  PeriodicPermutation(Int n, std::vector<Int> window) : n_(n), window_(std::move(window)) {
    if (n_ < 1) throw DomainError("period must be positive");
    if (static_cast<Int>(window_.size()) != n_)
      throw DomainError("window size does not match period");
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    for (Int v : window_) {
      Int r = residue(v, n_);
      if (seen[static_cast<std::size_t>(r - 1)])
        throw DomainError("window residues are not pairwise distinct");
      seen[static_cast<std::size_t>(r - 1)] = 1;
    }
  }

  static PeriodicPermutation identity(Int n) {
    std::vector<Int> w(static_cast<std::size_t>(n));
    std::iota(w.begin(), w.end(), Int{1});
    return PeriodicPermutation(n, std::move(w));
  }

  /// The reflection exchanging x + kn and y + kn for all k.  Requires
  /// x and y distinct modulo n.
  static PeriodicPermutation reflection(Int n, Int x, Int y) {
    if (residue(x, n) == residue(y, n))
      throw DomainError("reflection endpoints must be distinct modulo n");
    std::vector<Int> w(static_cast<std::size_t>(n));
    std::iota(w.begin(), w.end(), Int{1});
    auto set = [&](Int from, Int to) {
      Int r = residue(from, n);
      w[static_cast<std::size_t>(r - 1)] = checked_add(to, r - from);
    };
    set(x, y);
    set(y, x);
    return PeriodicPermutation(n, std::move(w));
  }

  Int period() const { return n_; }
  const std::vector<Int>& window() const { return window_; }

  /// Image of an arbitrary integer.
  Int apply(Int x) const {
    Int r = residue(x, n_);
    Int q = (x - r) / n_;
    return checked_add(window_[static_cast<std::size_t>(r - 1)], checked_mul(q, n_));
  }

  /// Average displacement; integral for every periodic bijection, zero
  /// exactly on the affine symmetric group.
  Int shift() const {
    Int s = 0;
    for (Int i = 1; i <= n_; ++i) s = checked_add(s, window_[static_cast<std::size_t>(i - 1)] - i);
    return s / n_;
  }

  bool in_group() const { return shift() == 0; }

  bool is_identity() const {
    for (Int i = 1; i <= n_; ++i)
      if (window_[static_cast<std::size_t>(i - 1)] != i) return false;
    return true;
  }

  friend bool operator==(const PeriodicPermutation& a, const PeriodicPermutation& b) {
    return a.n_ == b.n_ && a.window_ == b.window_;
  }
  friend bool operator!=(const PeriodicPermutation& a, const PeriodicPermutation& b) {
    return !(a == b);
  }
  friend bool operator<(const PeriodicPermutation& a, const PeriodicPermutation& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.window_ < b.window_;
  }

private:
  Int n_;
  std::vector<Int> window_;
};

struct PermHash {
  std::size_t operator()(const PeriodicPermutation& p) const {
    std::size_t h = static_cast<std::size_t>(p.period()) * 0x9e3779b97f4a7c15ull;
    for (Int v : p.window()) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// Product vw: w acts first, so (vw)(x) = v(w(x)).
inline PeriodicPermutation compose(const PeriodicPermutation& v, const PeriodicPermutation& w) {
  if (v.period() != w.period()) throw DomainError("period mismatch in composition");
  Int n = v.period();
  std::vector<Int> win(static_cast<std::size_t>(n));
  for (Int i = 1; i <= n; ++i) win[static_cast<std::size_t>(i - 1)] = v.apply(w.apply(i));
  return PeriodicPermutation(n, std::move(win));
}

inline PeriodicPermutation inverse(const PeriodicPermutation& w) {
  Int n = w.period();
  std::vector<Int> win(static_cast<std::size_t>(n));
  for (Int i = 1; i <= n; ++i) {
    Int y = w.window()[static_cast<std::size_t>(i - 1)];
    Int r = residue(y, n);
    win[static_cast<std::size_t>(r - 1)] = checked_add(i, r - y);
  }
  return PeriodicPermutation(n, std::move(win));
}

inline PeriodicPermutation conjugate(const PeriodicPermutation& u, const PeriodicPermutation& w) {
  return compose(compose(u, w), inverse(u));
}

inline PeriodicPermutation perm_power(const PeriodicPermutation& w, Int k) {
  PeriodicPermutation base = k >= 0 ? w : inverse(w);
  Int m = k >= 0 ? k : -k;
  PeriodicPermutation acc = PeriodicPermutation::identity(w.period());
  for (Int i = 0; i < m; ++i) acc = compose(acc, base);
  return acc;
}

// ---------------------------------------------------------------------------
// Cycle notation

struct Cycle {
  std::vector<Int> entries;
  Int shift = 0;
};

using CycleExpr = std::vector<Cycle>;

/// Builds the product of the given cycles.  Each cycle (a, b, ..., l)[h]
/// sends a to b, b to c, ... and l to a + hn.  Entries must be pairwise
/// distinct modulo n across all cycles.
inline PeriodicPermutation from_cycles(Int n, const CycleExpr& expr) {
  std::vector<Int> win(static_cast<std::size_t>(n));
  std::iota(win.begin(), win.end(), Int{1});
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (const Cycle& cyc : expr) {
    if (cyc.entries.empty()) continue;
    for (std::size_t j = 0; j < cyc.entries.size(); ++j) {
      Int from = cyc.entries[j];
      Int r = residue(from, n);
      if (used[static_cast<std::size_t>(r - 1)]) throw DomainError("repeated residue in cycle expression");
      used[static_cast<std::size_t>(r - 1)] = 1;
      Int to = j + 1 < cyc.entries.size() ? cyc.entries[j + 1]
                                          : checked_add(cyc.entries[0], checked_mul(cyc.shift, n));
      win[static_cast<std::size_t>(r - 1)] = checked_add(to, r - from);
    }
  }
  return PeriodicPermutation(n, std::move(win));
}

inline PeriodicPermutation from_cycles(Int n, std::initializer_list<Cycle> expr) {
  return from_cycles(n, CycleExpr(expr));
}

// ---------------------------------------------------------------------------
// Orbits

struct Orbit {
  std::vector<Int> residues;  // sorted, in [1, n]
  Int shift = 0;

  bool trivial() const { return residues.size() == 1 && shift == 0; }
};

struct OrbitDecomposition {
  std::vector<Orbit> orbits;  // sorted by smallest residue; all of [1, n] covered

  Int total_shift() const {
    Int s = 0;
    for (const Orbit& o : orbits) s += o.shift;
    return s;
  }
};

inline OrbitDecomposition orbit_decomposition(const PeriodicPermutation& w) {
  Int n = w.period();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  OrbitDecomposition dec;
  for (Int start = 1; start <= n; ++start) {
    if (seen[static_cast<std::size_t>(start - 1)]) continue;
    Orbit orb;
    Int disp = 0;
    Int r = start;
    do {
      seen[static_cast<std::size_t>(r - 1)] = 1;
      orb.residues.push_back(r);
      Int img = w.window()[static_cast<std::size_t>(r - 1)];
      disp = checked_add(disp, img - r);
      r = residue(img, n);
    } while (r != start);
    std::sort(orb.residues.begin(), orb.residues.end());
    orb.shift = disp / n;  // displacement telescopes to shift * n over a class
    dec.orbits.push_back(std::move(orb));
  }
  return dec;
}

/// Number of orbit classes modulo n, trivial orbits included.
inline Int nu(const PeriodicPermutation& w) {
  return static_cast<Int>(orbit_decomposition(w).orbits.size());
}

namespace detail {

/// Largest number of parts in a partition of the multiset into zero-sum
/// parts.  Exhaustive over subsets, memoized.
inline Int zero_sum_max_parts(const std::vector<Int>& vals) {
  std::size_t m = vals.size();
  if (m == 0) return 0;
  if (m > 24) throw DomainError("too many nonzero orbit shifts for exhaustive search");
  std::vector<Int> subset_sum(std::size_t{1} << m, 0);
  for (std::size_t mask = 1; mask < subset_sum.size(); ++mask) {
    std::size_t low = mask & (~mask + 1);
    std::size_t idx = static_cast<std::size_t>(__builtin_ctzll(mask));
    subset_sum[mask] = subset_sum[mask ^ low] + vals[idx];
  }
  std::unordered_map<std::size_t, Int> memo;
  std::function<Int(std::size_t)> best = [&](std::size_t mask) -> Int {
    if (mask == 0) return 0;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    std::size_t low = mask & (~mask + 1);
    Int b = -1;
    // Enumerate zero-sum submasks containing the lowest set element.
    for (std::size_t sub = mask; sub != 0; sub = (sub - 1) & mask) {
      if (!(sub & low)) continue;
      if (subset_sum[sub] != 0) continue;
      Int rest = best(mask ^ sub);
      if (rest >= 0 && rest + 1 > b) b = rest + 1;
    }
    memo[mask] = b;
    return b;
  };
  Int result = best((std::size_t{1} << m) - 1);
  if (result < 0) throw DomainError("multiset of shifts has no zero-sum partition");
  return result;
}

}  // namespace detail

/// Maximal number of disjoint-support group factors: classes of shift zero
/// plus a maximal zero-sum grouping of the nonzero orbit shifts.
inline Int kappa(const PeriodicPermutation& w) {
  if (w.shift() != 0) throw DomainError("kappa requires a shift-zero permutation");
  OrbitDecomposition dec = orbit_decomposition(w);
  Int fixed = 0;
  std::vector<Int> nonzero;
  for (const Orbit& o : dec.orbits) {
    if (o.shift == 0)
      ++fixed;
    else
      nonzero.push_back(o.shift);
  }
  return fixed + detail::zero_sum_max_parts(nonzero);
}

inline Int reflection_length(const PeriodicPermutation& w) {
  if (w.shift() != 0) throw DomainError("reflection length requires a group element");
  return w.period() + nu(w) - 2 * kappa(w);
}

/// Left divisibility in the absolute order: v divides w when the lengths of
/// v and v^-1 w add up to the length of w.  Left and right versions agree.
inline bool divides(const PeriodicPermutation& v, const PeriodicPermutation& w) {
  if (v.shift() != 0 || w.shift() != 0) throw DomainError("divisibility is defined on group elements");
  return reflection_length(v) + reflection_length(compose(inverse(v), w)) == reflection_length(w);
}

inline bool divides_on_right(const PeriodicPermutation& v, const PeriodicPermutation& w) {
  if (v.shift() != 0 || w.shift() != 0) throw DomainError("divisibility is defined on group elements");
  return reflection_length(v) + reflection_length(compose(w, inverse(v))) == reflection_length(w);
}

// ---------------------------------------------------------------------------
// Text form.  Grammar:
//   EXPR   := CYCLE*
//   CYCLE  := '(' INT (',' INT)* ')' SHIFT?
//   SHIFT  := '[' INT ']'
// whitespace ignored; the empty expression is the identity.  Window notation
// 'w:[i1,...,in]' is accepted wherever a permutation is read.

namespace detail {

class TextCursor {
public:
  explicit TextCursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n')) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool consume(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!consume(c)) throw ParseError(std::string("expected '") + c + "' in \"" + std::string(s_) + "\"");
  }
  Int integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
    if (pos_ == digits) throw ParseError("expected integer in \"" + std::string(s_) + "\"");
    return std::stoll(std::string(s_.substr(start, pos_ - start)));
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline CycleExpr parse_cycles(std::string_view text) {
  detail::TextCursor cur(text);
  CycleExpr expr;
  while (!cur.at_end()) {
    cur.expect('(');
    Cycle cyc;
    if (!cur.consume(')')) {  // "()" is the empty cycle
      cyc.entries.push_back(cur.integer());
      while (cur.consume(',')) cyc.entries.push_back(cur.integer());
      cur.expect(')');
    }
    if (cur.consume('[')) {
      cyc.shift = cur.integer();
      cur.expect(']');
    }
    if (!cyc.entries.empty()) expr.push_back(std::move(cyc));
  }
  return expr;
}

inline PeriodicPermutation parse_permutation(Int n, std::string_view text) {
  detail::TextCursor probe(text);
  probe.skip_ws();
  if (probe.peek() == 'w') {
    detail::TextCursor cur(text);
    cur.expect('w');
    cur.expect(':');
    cur.expect('[');
    std::vector<Int> win;
    win.push_back(cur.integer());
    while (cur.consume(',')) win.push_back(cur.integer());
    cur.expect(']');
    if (!cur.at_end()) throw ParseError("trailing input after window notation");
    return PeriodicPermutation(n, std::move(win));
  }
  return from_cycles(n, parse_cycles(text));
}

/// Canonical cycle form: one cycle per nontrivial orbit class, translated so
/// the smallest entry lies in [1, n] and starts the cycle; zero shifts are
/// omitted.  The identity prints as "()".
inline std::string to_cycle_string(const PeriodicPermutation& w) {
  Int n = w.period();
  OrbitDecomposition dec = orbit_decomposition(w);
  std::string out;
  for (const Orbit& orb : dec.orbits) {
    if (orb.trivial()) continue;
    // One pass to locate the orbit's minimum, translated into [1, n]; the
    // printed cycle then starts there so the form is canonical.
    std::vector<Int> entries;
    Int x = orb.residues.front();
    for (std::size_t j = 0; j < orb.residues.size(); ++j) {
      entries.push_back(x);
      x = w.apply(x);
    }
    Int lo = *std::min_element(entries.begin(), entries.end());
    Int start = lo + (residue(lo, n) - lo);
    entries.clear();
    x = start;
    for (std::size_t j = 0; j < orb.residues.size(); ++j) {
      entries.push_back(x);
      x = w.apply(x);
    }
    out += '(';
    for (std::size_t j = 0; j < entries.size(); ++j) {
      if (j) out += ',';
      out += std::to_string(entries[j]);
    }
    out += ')';
    if (orb.shift != 0) out += '[' + std::to_string(orb.shift) + ']';
  }
  if (out.empty()) out = "()";
  return out;
}

inline std::string to_window_string(const PeriodicPermutation& w) {
  std::string out = "w:[";
  for (Int i = 0; i < w.period(); ++i) {
    if (i) out += ',';
    out += std::to_string(w.window()[static_cast<std::size_t>(i)]);
  }
  out += ']';
  return out;
}

}  // namespace garside
