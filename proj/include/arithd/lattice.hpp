#pragma once

// Exact integer lattice machinery: kernels via row reduction (Hermite form),
// integral LLL, sup-norm post-reduction, bounded box enumeration of kernel
// vectors, and Smith normal form.  Everything is templated on the integer
// type so the hot scanning path can run on checked 64-bit words and fall back
// to big integers on overflow.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "arithd/int.hpp"

namespace arithd::lattice {

struct CheckedOverflow : std::overflow_error {
  CheckedOverflow() : std::overflow_error("checked integer overflow") {}
};

/// int64 wrapper whose arithmetic throws CheckedOverflow instead of wrapping.
struct CheckedI64 {
  std::int64_t v = 0;

  CheckedI64() = default;
  CheckedI64(int x) : v(x) {}
  CheckedI64(long x) : v(x) {}
  CheckedI64(long long x) : v(x) {}

  friend CheckedI64 operator+(CheckedI64 a, CheckedI64 b) {
    CheckedI64 r;
    if (__builtin_add_overflow(a.v, b.v, &r.v)) throw CheckedOverflow();
    return r;
  }
  friend CheckedI64 operator-(CheckedI64 a, CheckedI64 b) {
    CheckedI64 r;
    if (__builtin_sub_overflow(a.v, b.v, &r.v)) throw CheckedOverflow();
    return r;
  }
  friend CheckedI64 operator*(CheckedI64 a, CheckedI64 b) {
    CheckedI64 r;
    if (__builtin_mul_overflow(a.v, b.v, &r.v)) throw CheckedOverflow();
    return r;
  }
  CheckedI64 operator-() const {
    if (v == INT64_MIN) throw CheckedOverflow();
    return CheckedI64(-v);
  }
  CheckedI64& operator+=(CheckedI64 o) { return *this = *this + o; }
  CheckedI64& operator-=(CheckedI64 o) { return *this = *this - o; }
  CheckedI64& operator*=(CheckedI64 o) { return *this = *this * o; }
  auto operator<=>(const CheckedI64&) const = default;
};

/// Same contract on 128-bit words: enough headroom for Gram determinants in
/// lattice reduction at desk-scale inputs, still far cheaper than bigints.
struct CheckedI128 {
  __int128 v = 0;

  CheckedI128() = default;
  CheckedI128(int x) : v(x) {}
  CheckedI128(long x) : v(x) {}
  CheckedI128(long long x) : v(x) {}
  explicit CheckedI128(__int128 x) : v(x) {}

  friend CheckedI128 operator+(CheckedI128 a, CheckedI128 b) {
    CheckedI128 r;
    if (__builtin_add_overflow(a.v, b.v, &r.v)) throw CheckedOverflow();
    return r;
  }
  friend CheckedI128 operator-(CheckedI128 a, CheckedI128 b) {
    CheckedI128 r;
    if (__builtin_sub_overflow(a.v, b.v, &r.v)) throw CheckedOverflow();
    return r;
  }
  friend CheckedI128 operator*(CheckedI128 a, CheckedI128 b) {
    CheckedI128 r;
    if (__builtin_mul_overflow(a.v, b.v, &r.v)) throw CheckedOverflow();
    return r;
  }
  CheckedI128 operator-() const {
    CheckedI128 r;
    if (__builtin_sub_overflow((__int128)0, v, &r.v)) throw CheckedOverflow();
    return r;
  }
  CheckedI128& operator+=(CheckedI128 o) { return *this = *this + o; }
  CheckedI128& operator-=(CheckedI128 o) { return *this = *this - o; }
  CheckedI128& operator*=(CheckedI128 o) { return *this = *this * o; }
  auto operator<=>(const CheckedI128&) const = default;
};

template <class ZT>
using Vec = std::vector<ZT>;
template <class ZT>
using Mat = std::vector<std::vector<ZT>>;

// ---- scalar helpers ------------------------------------------------------

inline int zt_sgn(const Int& a) { return sign(a); }
inline int zt_sgn(CheckedI64 a) { return a.v < 0 ? -1 : (a.v > 0 ? 1 : 0); }
inline int zt_sgn(CheckedI128 a) { return a.v < 0 ? -1 : (a.v > 0 ? 1 : 0); }

inline Int zt_abs(const Int& a) { return abs(a); }
inline CheckedI64 zt_abs(CheckedI64 a) { return a.v < 0 ? -a : a; }
inline CheckedI128 zt_abs(CheckedI128 a) { return a.v < 0 ? -a : a; }

inline Int zt_divexact(const Int& a, const Int& b) {
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
inline CheckedI64 zt_divexact(CheckedI64 a, CheckedI64 b) { return CheckedI64(a.v / b.v); }
inline CheckedI128 zt_divexact(CheckedI128 a, CheckedI128 b) {
  if (b.v == -1) return -a;  // plain division would be UB at the minimum value
  return CheckedI128(a.v / b.v);
}

/// Floor division, b != 0.
inline Int zt_fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
inline CheckedI64 zt_fdiv(CheckedI64 a, CheckedI64 b) {
  if (b.v == -1 && a.v == INT64_MIN) throw CheckedOverflow();
  std::int64_t q = a.v / b.v;
  if ((a.v % b.v != 0) && ((a.v < 0) != (b.v < 0))) --q;
  return CheckedI64(q);
}
inline CheckedI128 zt_fdiv(CheckedI128 a, CheckedI128 b) {
  if (b.v == -1) return -a;
  __int128 q = a.v / b.v;
  if ((a.v % b.v != 0) && ((a.v < 0) != (b.v < 0))) --q;
  return CheckedI128(q);
}

/// Nearest integer to a/b for b > 0 (ties toward +infinity).
inline Int zt_round_div(const Int& a, const Int& b) { return zt_fdiv(2 * a + b, 2 * b); }
inline CheckedI64 zt_round_div(CheckedI64 a, CheckedI64 b) {
  __int128 num = (__int128)2 * a.v + b.v;
  __int128 den = (__int128)2 * b.v;
  __int128 q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  if (q > INT64_MAX || q < INT64_MIN) throw CheckedOverflow();
  return CheckedI64((std::int64_t)q);
}
inline CheckedI128 zt_round_div(CheckedI128 a, CheckedI128 b) {
  return zt_fdiv(a + a + b, b + b);  // checked additions; den is even, never -1
}

inline Int zt_gcdext(const Int& a, const Int& b, Int& s, Int& t) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}
inline CheckedI64 zt_gcdext(CheckedI64 a, CheckedI64 b, CheckedI64& s, CheckedI64& t) {
  // Bezout coefficients stay within |b/g|, |a/g|; intermediates fit.
  std::int64_t old_r = a.v, r = b.v, old_s = 1, ss = 0, old_t = 0, tt = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * ss;
    old_s = ss;
    ss = tmp;
    tmp = old_t - q * tt;
    old_t = tt;
    tt = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = CheckedI64(old_s);
  t = CheckedI64(old_t);
  return CheckedI64(old_r);
}
inline CheckedI128 zt_gcdext(CheckedI128 a, CheckedI128 b, CheckedI128& s, CheckedI128& t) {
  __int128 old_r = a.v, r = b.v, old_s = 1, ss = 0, old_t = 0, tt = 1;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * ss;
    old_s = ss;
    ss = tmp;
    tmp = old_t - q * tt;
    old_t = tt;
    tt = tmp;
  }
  CheckedI128 g(old_r);
  s = CheckedI128(old_s);
  t = CheckedI128(old_t);
  if (g.v < 0) {
    g = -g;
    s = -s;
    t = -t;
  }
  return g;
}

inline Int zt_to_int(const Int& a) { return a; }
inline Int zt_to_int(CheckedI64 a) { return Int(static_cast<long>(a.v)); }
inline Int zt_to_int(CheckedI128 a) { return int_from_i128(a.v); }

template <class ZT>
ZT zt_from_int(const Int& a);
template <>
inline Int zt_from_int<Int>(const Int& a) {
  return a;
}
template <>
inline CheckedI64 zt_from_int<CheckedI64>(const Int& a) {
  if (!fits_i64(a)) throw CheckedOverflow();
  return CheckedI64(static_cast<long long>(to_i64(a)));
}
template <>
inline CheckedI128 zt_from_int<CheckedI128>(const Int& a) {
  if (!fits_i128(a)) throw CheckedOverflow();
  return CheckedI128(to_i128(a));
}

// ---- vector helpers ------------------------------------------------------

template <class ZT>
ZT sup_norm(const Vec<ZT>& v) {
  ZT m = 0;
  for (const ZT& x : v) {
    ZT a = zt_abs(x);
    if (m < a) m = a;
  }
  return m;
}

/// Flips sign so the first nonzero entry is positive.
template <class ZT>
void canonicalize_sign(Vec<ZT>& v) {
  for (const ZT& x : v) {
    int s = zt_sgn(x);
    if (s == 0) continue;
    if (s < 0)
      for (ZT& y : v) y = -y;
    return;
  }
}

template <class ZT>
bool lex_less(const Vec<ZT>& a, const Vec<ZT>& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

/// Ascending (sup-norm, lex) order; vectors should be sign-canonical first.
template <class ZT>
void sort_by_sup_norm(Mat<ZT>& m) {
  std::stable_sort(m.begin(), m.end(), [](const Vec<ZT>& a, const Vec<ZT>& b) {
    ZT na = sup_norm(a), nb = sup_norm(b);
    if (na < nb) return true;
    if (nb < na) return false;
    return lex_less(a, b);
  });
}

// ---- kernel via row reduction --------------------------------------------

/// Basis of the full integer kernel {v : rows · v = 0}.  Row-reduces
/// [rows^T | I] with unimodular operations; the identity block rows whose
/// constraint part vanishes form a basis of the saturated kernel lattice.
template <class ZT>
Mat<ZT> kernel(const Mat<ZT>& rows) {
  if (rows.empty()) throw std::invalid_argument("kernel of empty constraint set");
  size_t k = rows.size(), n = rows[0].size();
  Mat<ZT> m(n, Vec<ZT>(k + n, ZT(0)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < k; ++j) m[i][j] = rows[j][i];
    m[i][k + i] = ZT(1);
  }
  size_t pivot = 0;
  for (size_t col = 0; col < k && pivot < n; ++col) {
    for (size_t r = pivot + 1; r < n; ++r) {
      if (zt_sgn(m[r][col]) == 0) continue;
      ZT s, t;
      ZT g = zt_gcdext(m[pivot][col], m[r][col], s, t);
      ZT u = zt_divexact(m[pivot][col], g);
      ZT w = zt_divexact(m[r][col], g);
      for (size_t j = 0; j < k + n; ++j) {
        ZT mp = s * m[pivot][j] + t * m[r][j];
        ZT mr = u * m[r][j] - w * m[pivot][j];
        m[pivot][j] = mp;
        m[r][j] = mr;
      }
    }
    if (zt_sgn(m[pivot][col]) != 0) ++pivot;
  }
  Mat<ZT> out;
  for (size_t r = pivot; r < n; ++r)
    out.emplace_back(m[r].begin() + k, m[r].end());
  return out;
}

// ---- integral LLL ----------------------------------------------------------

namespace detail {

template <class ZT>
ZT dot(const Vec<ZT>& a, const Vec<ZT>& b) {
  ZT acc = 0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

template <class ZT>
struct LllState {
  Mat<ZT>& b;
  std::vector<ZT> d;   // d[0]=1, d[i+1] = Gram determinant of first i+1 vectors
  Mat<ZT> lam;         // lam[i][j], j < i

  explicit LllState(Mat<ZT>& basis) : b(basis) {
    size_t n = b.size();
    d.assign(n + 1, ZT(0));
    d[0] = ZT(1);
    lam.assign(n, Vec<ZT>(n, ZT(0)));
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j <= i; ++j) {
        ZT u = dot(b[i], b[j]);
        for (size_t s = 0; s < j; ++s)
          u = zt_divexact(d[s + 1] * u - lam[i][s] * lam[j][s], d[s]);
        if (j < i)
          lam[i][j] = u;
        else {
          if (zt_sgn(u) <= 0) throw std::invalid_argument("LLL input not linearly independent");
          d[i + 1] = u;
        }
      }
    }
  }

  void redi(size_t k, size_t l) {
    ZT two_lam = lam[k][l] + lam[k][l];
    if (zt_abs(two_lam) <= d[l + 1]) return;
    ZT q = zt_round_div(lam[k][l], d[l + 1]);
    for (size_t j = 0; j < b[k].size(); ++j) b[k][j] -= q * b[l][j];
    lam[k][l] -= q * d[l + 1];
    for (size_t i = 0; i < l; ++i) lam[k][i] -= q * lam[l][i];
  }

  void swapi(size_t k) {
    std::swap(b[k], b[k - 1]);
    for (size_t j = 0; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
    ZT l = lam[k][k - 1];
    ZT bb = zt_divexact(d[k - 1] * d[k + 1] + l * l, d[k]);
    for (size_t i = k + 1; i < b.size(); ++i) {
      ZT t = lam[i][k];
      lam[i][k] = zt_divexact(d[k + 1] * lam[i][k - 1] - l * t, d[k]);
      lam[i][k - 1] = zt_divexact(bb * t + l * lam[i][k], d[k + 1]);
    }
    d[k] = bb;
  }
};

}  // namespace detail

/// In-place LLL reduction (integral bookkeeping, exact).  delta = p/q must
/// satisfy 1/4 < delta < 1; vectors must be linearly independent.
template <class ZT>
void lll_reduce(Mat<ZT>& basis, long delta_num = 99, long delta_den = 100) {
  if (basis.size() <= 1) return;
  if (!(4 * delta_num > delta_den && delta_num < delta_den))
    throw std::invalid_argument("LLL delta out of range (1/4, 1)");
  detail::LllState<ZT> st(basis);
  ZT p = ZT(delta_num), q = ZT(delta_den);
  size_t k = 1, n = basis.size();
  while (k < n) {
    st.redi(k, k - 1);
    ZT lhs = q * (st.d[k + 1] * st.d[k - 1]);
    ZT rhs = p * (st.d[k] * st.d[k]) - q * (st.lam[k][k - 1] * st.lam[k][k - 1]);
    if (lhs < rhs) {
      st.swapi(k);
      if (k > 1) --k;
    } else {
      for (size_t l = k - 1; l-- > 0;) st.redi(k, l);
      ++k;
    }
  }
}

/// Pairwise sup-norm polishing: replace b_i by b_i ± b_j when that strictly
/// shrinks its sup-norm.  Elementary operations, so the lattice is unchanged.
template <class ZT>
void greedy_supnorm_reduce(Mat<ZT>& basis, int max_passes = 16) {
  size_t n = basis.size();
  if (n <= 1) return;
  for (int pass = 0; pass < max_passes; ++pass) {
    bool changed = false;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        ZT cur = sup_norm(basis[i]);
        for (int dir = 0; dir < 2; ++dir) {
          Vec<ZT> cand(basis[i].size());
          for (size_t t = 0; t < cand.size(); ++t) {
            if (dir == 0)
              cand[t] = basis[i][t] + basis[j][t];
            else
              cand[t] = basis[i][t] - basis[j][t];
          }
          ZT nn = sup_norm(cand);
          if (nn < cur) {
            basis[i] = std::move(cand);
            cur = nn;
            changed = true;
          }
        }
      }
    }
    if (!changed) break;
  }
}

// ---- box enumeration -------------------------------------------------------

struct EnumBudget {
  std::uint64_t node_cap = UINT64_MAX;
  std::uint64_t used = 0;
  std::atomic<bool>* cancel = nullptr;
  bool exhausted = false;

  bool spend() {
    if (++used > node_cap) {
      exhausted = true;
      return false;
    }
    if (cancel && (used & 1023) == 0 && cancel->load(std::memory_order_relaxed)) {
      exhausted = true;
      return false;
    }
    return true;
  }
};

namespace detail {

template <class ZT>
struct BoxEnum {
  const Mat<ZT>& rows;
  ZT bound;
  EnumBudget& budget;
  size_t n, k;
  size_t solve_row = 0, solve_col = 0;
  std::vector<size_t> free_cols;           // enumeration order
  Mat<ZT> cap;                             // cap[i][d]: slack after depth d per row
  Vec<ZT> sums;                            // partial sums per row
  Vec<ZT> scratch;                         // assigned values per depth
  Vec<ZT> out;

  BoxEnum(const Mat<ZT>& r, const ZT& b, EnumBudget& bu) : rows(r), bound(b), budget(bu) {
    k = rows.size();
    n = rows[0].size();
    bool found = false;
    for (size_t i = 0; i < k && !found; ++i)
      for (size_t j = 0; j < n; ++j)
        if (zt_sgn(rows[i][j]) != 0) {
          solve_row = i;
          found = true;
          break;
        }
    if (!found) throw std::invalid_argument("box enumeration needs a nonzero constraint");
    // Solve the column with the smallest nonzero coefficient in the pivot
    // row; enumerate the rest, largest coefficients outermost.
    for (size_t j = 0; j < n; ++j) {
      if (zt_sgn(rows[solve_row][j]) == 0) continue;
      if (zt_sgn(rows[solve_row][solve_col]) == 0 ||
          zt_abs(rows[solve_row][j]) < zt_abs(rows[solve_row][solve_col]))
        solve_col = j;
    }
    for (size_t j = 0; j < n; ++j)
      if (j != solve_col) free_cols.push_back(j);
    std::stable_sort(free_cols.begin(), free_cols.end(), [&](size_t x, size_t y) {
      return zt_abs(rows[solve_row][y]) < zt_abs(rows[solve_row][x]);
    });
    size_t depths = free_cols.size();
    cap.assign(k, Vec<ZT>(depths + 1, ZT(0)));
    for (size_t i = 0; i < k; ++i) {
      cap[i][depths] = zt_abs(rows[i][solve_col]) * bound;
      for (size_t d = depths; d-- > 0;)
        cap[i][d] = cap[i][d + 1] + zt_abs(rows[i][free_cols[d]]) * bound;
    }
    sums.assign(k, ZT(0));
    scratch.assign(depths, ZT(0));
    out.assign(n, ZT(0));
  }

  // Range of t with |sum + coef*t| <= slack, intersected into [lo, hi].
  static void tighten(const ZT& sum, const ZT& coef, const ZT& slack, ZT& lo, ZT& hi) {
    if (zt_sgn(coef) == 0) return;
    ZT a = -slack - sum, b = slack - sum;  // coef*t in [a, b]
    ZT l, h;
    if (zt_sgn(coef) > 0) {
      l = -zt_fdiv(-a, coef);  // ceil(a/coef)
      h = zt_fdiv(b, coef);
    } else {
      ZT c = -coef;
      l = -zt_fdiv(b, c);     // ceil(-b/c)... t >= ceil((sum-slack)/-coef) == -floor(b/c)
      h = zt_fdiv(-a, c);
    }
    if (lo < l) lo = l;
    if (h < hi) hi = h;
  }

  template <class Fn>
  bool dfs(size_t depth, Fn&& fn) {
    if (depth == free_cols.size()) {
      if (!budget.spend()) return false;
      const ZT& coef = rows[solve_row][solve_col];
      ZT num = -sums[solve_row];
      ZT t = zt_fdiv(num, coef);
      if (!(t * coef == num)) return true;
      if (bound < zt_abs(t)) return true;
      for (size_t i = 0; i < k; ++i)
        if (i != solve_row && !(sums[i] + rows[i][solve_col] * t == ZT(0))) return true;
      bool nonzero = zt_sgn(t) != 0;
      for (size_t d = 0; d < free_cols.size() && !nonzero; ++d)
        nonzero = zt_sgn(scratch[d]) != 0;
      if (!nonzero) return true;
      for (size_t d = 0; d < free_cols.size(); ++d) out[free_cols[d]] = scratch[d];
      out[solve_col] = t;
      return fn(const_cast<const Vec<ZT>&>(out));
    }
    size_t col = free_cols[depth];
    ZT lo = -bound, hi = bound;
    for (size_t i = 0; i < k; ++i) tighten(sums[i], rows[i][col], cap[i][depth + 1], lo, hi);
    for (ZT t = lo; !(hi < t); t += ZT(1)) {
      if (!budget.spend()) return false;
      scratch[depth] = t;
      for (size_t i = 0; i < k; ++i) sums[i] += rows[i][col] * t;
      bool cont = dfs(depth + 1, fn);
      for (size_t i = 0; i < k; ++i) sums[i] -= rows[i][col] * t;
      if (!cont) return false;
    }
    return true;
  }
};

}  // namespace detail

/// Calls fn for every nonzero v with rows·v = 0 and sup-norm <= bound.
/// fn returning false stops the walk.  Returns true iff the box was fully
/// enumerated (not stopped by fn, budget, or cancellation).
template <class ZT, class Fn>
bool enumerate_kernel_box(const Mat<ZT>& rows, const ZT& bound, EnumBudget& budget, Fn&& fn) {
  if (rows.empty() || rows[0].empty()) throw std::invalid_argument("empty constraint matrix");
  if (zt_sgn(bound) <= 0) return true;
  detail::BoxEnum<ZT> e(rows, bound, budget);
  return e.dfs(0, fn);
}

// ---- Hermite form utilities (big integers only; not on the hot path) ------

/// Canonical row-style Hermite form: echelon, positive pivots, entries above
/// a pivot reduced into [0, pivot).  Zero rows dropped.
inline Mat<Int> hnf_rows(Mat<Int> m) {
  if (m.empty()) return m;
  size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t col = 0; col < cols && r < rows; ++col) {
    for (size_t i = r + 1; i < rows; ++i) {
      if (sign(m[i][col]) == 0) continue;
      Int s, t;
      Int g = zt_gcdext(m[r][col], m[i][col], s, t);
      Int u = zt_divexact(m[r][col], g);
      Int w = zt_divexact(m[i][col], g);
      for (size_t j = 0; j < cols; ++j) {
        Int a = s * m[r][j] + t * m[i][j];
        Int b = u * m[i][j] - w * m[r][j];
        m[r][j] = a;
        m[i][j] = b;
      }
    }
    if (sign(m[r][col]) == 0) continue;
    if (sign(m[r][col]) < 0)
      for (size_t j = 0; j < cols; ++j) m[r][j] = -m[r][j];
    for (size_t i = 0; i < r; ++i) {
      Int q = zt_fdiv(m[i][col], m[r][col]);
      if (sign(q) != 0)
        for (size_t j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
    }
    ++r;
  }
  m.resize(r);
  return m;
}

inline bool same_lattice(const Mat<Int>& a, const Mat<Int>& b) {
  return hnf_rows(a) == hnf_rows(b);
}

/// Membership of v in the row lattice of basis (any spanning set).
inline bool in_lattice(const Mat<Int>& basis, const Vec<Int>& v) {
  Mat<Int> h = hnf_rows(basis);
  Vec<Int> w = v;
  size_t cols = w.size();
  for (const auto& row : h) {
    size_t piv = 0;
    while (piv < cols && sign(row[piv]) == 0) ++piv;
    if (piv == cols) continue;
    if (sign(w[piv]) == 0) continue;
    Int q = zt_fdiv(w[piv], row[piv]);
    if (!(q * row[piv] == w[piv])) return false;
    for (size_t j = 0; j < cols; ++j) w[j] -= q * row[j];
  }
  for (const Int& x : w)
    if (sign(x) != 0) return false;
  return true;
}

/// Rational rank via fraction-free elimination (destructive on a copy).
inline size_t rational_rank(Mat<Int> m) {
  size_t rank = 0;
  size_t rows = m.size();
  if (rows == 0) return 0;
  size_t cols = m[0].size();
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t piv = rank;
    while (piv < rows && sign(m[piv][col]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[rank], m[piv]);
    for (size_t i = rank + 1; i < rows; ++i) {
      if (sign(m[i][col]) == 0) continue;
      Int a = m[rank][col], b = m[i][col];
      for (size_t j = 0; j < cols; ++j) m[i][j] = a * m[i][j] - b * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

// ---- Smith normal form -----------------------------------------------------

struct SmithResult {
  std::vector<Int> diag;  // divisibility chain d1 | d2 | ... (nonnegative)
  Mat<Int> col_transform; // V: quotient coordinates of e_i are row i of V mod diag
};

/// Smith normal form of the row lattice of m inside Z^n.  Row operations are
/// untracked (they do not change the lattice); column operations accumulate
/// into V so that x |-> x·V maps the lattice onto diag(d)·Z^n.
inline SmithResult smith_normal_form(Mat<Int> a) {
  if (a.empty()) throw std::invalid_argument("SNF of empty matrix");
  size_t rows = a.size(), n = a[0].size();
  Mat<Int> v(n, Vec<Int>(n, 0));
  for (size_t i = 0; i < n; ++i) v[i][i] = 1;

  auto col_swap = [&](size_t x, size_t y) {
    for (size_t i = 0; i < rows; ++i) std::swap(a[i][x], a[i][y]);
    for (size_t i = 0; i < n; ++i) std::swap(v[i][x], v[i][y]);
  };
  auto col_addmul = [&](size_t dst, size_t src, const Int& q) {
    for (size_t i = 0; i < rows; ++i) a[i][dst] += q * a[i][src];
    for (size_t i = 0; i < n; ++i) v[i][dst] += q * v[i][src];
  };

  size_t dim = std::min(rows, n);
  for (size_t pos = 0; pos < dim; ++pos) {
    for (;;) {
      // locate minimal nonzero entry in the trailing block
      size_t bi = pos, bj = pos;
      bool found = false;
      for (size_t i = pos; i < rows; ++i)
        for (size_t j = pos; j < n; ++j) {
          if (sign(a[i][j]) == 0) continue;
          if (!found || abs(a[i][j]) < abs(a[bi][bj])) {
            bi = i;
            bj = j;
            found = true;
          }
        }
      if (!found) goto done;
      std::swap(a[pos], a[bi]);
      if (bj != pos) col_swap(pos, bj);
      if (sign(a[pos][pos]) < 0)
        for (size_t j = pos; j < n; ++j) a[pos][j] = -a[pos][j];

      bool clean = true;
      for (size_t i = pos + 1; i < rows; ++i) {
        if (sign(a[i][pos]) == 0) continue;
        Int q = zt_fdiv(a[i][pos], a[pos][pos]);
        for (size_t j = pos; j < n; ++j) a[i][j] -= q * a[pos][j];
        if (sign(a[i][pos]) != 0) clean = false;
      }
      for (size_t j = pos + 1; j < n; ++j) {
        if (sign(a[pos][j]) == 0) continue;
        Int q = zt_fdiv(a[pos][j], a[pos][pos]);
        col_addmul(j, pos, -q);
        if (sign(a[pos][j]) != 0) clean = false;
      }
      if (!clean) continue;

      // enforce divisibility into the trailing block
      bool divides_all = true;
      for (size_t i = pos + 1; i < rows && divides_all; ++i)
        for (size_t j = pos + 1; j < n && divides_all; ++j)
          if (sign(a[i][j] % a[pos][pos]) != 0) {
            for (size_t jj = pos; jj < n; ++jj) a[pos][jj] += a[i][jj];
            divides_all = false;
          }
      if (divides_all) break;
    }
  }
done:
  SmithResult res;
  res.diag.assign(n, 0);
  for (size_t i = 0; i < dim; ++i) res.diag[i] = a[i][i];
  res.col_transform = std::move(v);
  return res;
}

}  // namespace arithd::lattice
