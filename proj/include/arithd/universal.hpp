#pragma once

// Differential modules for the multiplicative monoid of Z/m relative to a
// distinguished multiplicative subset S (the image of the structure map):
// the quotient of the free module on symbols e_a by
//
//   m*e_a                    scalar structure over Z
//   e_s            s in S    triviality on the distinguished image
//   e_{ab} - a*e_b - b*e_a   product rule, all pairs
//
// presented through an exact Smith normal form.  The derivation a |-> e_a
// is a product-rule map that is NOT additive in general; the invariant
// factors are canonical while the coordinates depend on the chosen
// transform, so callers should compare structural facts, not raw vectors.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "arithd/int.hpp"
#include "arithd/lattice.hpp"

namespace arithd {

struct FiniteRingSpec {
  unsigned m = 2;
  std::vector<unsigned> alpha_image = {1};
  unsigned ceiling = 64;  // relation matrix has m^2 + |image| + m rows
};

struct UniversalModule {
  unsigned m = 0;
  std::vector<Int> invariant_factors;  // divisibility chain, each > 1, each | m
  lattice::Mat<Int> d_table;           // row a = coordinates of d(a), reduced
};

namespace detail {

/// Entries reduced mod m, sorted, deduplicated; validates the closure axioms.
inline std::vector<unsigned> normalized_image(const FiniteRingSpec& spec) {
  if (spec.m < 2) throw std::domain_error("modulus must be at least 2");
  if (spec.m > spec.ceiling) throw std::domain_error("modulus above configured ceiling");
  std::vector<unsigned> img;
  img.reserve(spec.alpha_image.size());
  for (unsigned s : spec.alpha_image) img.push_back(s % spec.m);
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  auto has = [&](unsigned x) { return std::binary_search(img.begin(), img.end(), x); };
  if (!has(1)) throw std::domain_error("distinguished image must contain 1");
  for (unsigned s : img)
    for (unsigned t : img)
      if (!has(s * t % spec.m))
        throw std::domain_error("distinguished image must be multiplicatively closed");
  return img;
}

/// Full relation list as rows over the m generator columns.
inline lattice::Mat<Int> relation_rows(unsigned m, const std::vector<unsigned>& image) {
  lattice::Mat<Int> rows;
  rows.reserve(std::size_t(m) * m + image.size() + m);
  for (unsigned a = 0; a < m; ++a) {
    lattice::Vec<Int> r(m, Int(0));
    r[a] = Int(static_cast<unsigned long>(m));
    rows.push_back(std::move(r));
  }
  for (unsigned s : image) {
    lattice::Vec<Int> r(m, Int(0));
    r[s] = 1;
    rows.push_back(std::move(r));
  }
  for (unsigned a = 0; a < m; ++a)
    for (unsigned b = 0; b < m; ++b) {
      lattice::Vec<Int> r(m, Int(0));
      r[a * b % m] += 1;
      r[b] -= Int(static_cast<unsigned long>(a));
      r[a] -= Int(static_cast<unsigned long>(b));
      rows.push_back(std::move(r));
    }
  return rows;
}

/// Smith form of `a` in place.  Column operations are mirrored onto `v`
/// (initialized to the identity by the caller), so row i of the final `v`
/// holds the coordinates of the i-th standard generator in the diagonal
/// presentation.  Row operations are not tracked.  Returns the diagonal.
inline std::vector<Int> smith_diagonal(lattice::Mat<Int>& a, lattice::Mat<Int>& v) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  auto col_sub = [&](std::size_t j, std::size_t i, const Int& q) {
    for (std::size_t r = 0; r < rows; ++r) a[r][j] -= q * a[r][i];
    for (std::size_t r = 0; r < cols; ++r) v[r][j] -= q * v[r][i];
  };
  auto col_swap = [&](std::size_t j, std::size_t i) {
    for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][j], a[r][i]);
    for (std::size_t r = 0; r < cols; ++r) std::swap(v[r][j], v[r][i]);
  };
  auto col_neg = [&](std::size_t j) {
    for (std::size_t r = 0; r < rows; ++r) a[r][j] = -a[r][j];
    for (std::size_t r = 0; r < cols; ++r) v[r][j] = -v[r][j];
  };
  const std::size_t lim = std::min(rows, cols);
  std::vector<Int> diag(lim, Int(0));
  for (std::size_t t = 0; t < lim; ++t) {
    for (;;) {
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (sign(a[i][j]) != 0 &&
              (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) return diag;  // remaining block is zero
      if (pi != t) std::swap(a[pi], a[t]);
      if (pj != t) col_swap(pj, t);
      if (sign(a[t][t]) < 0) col_neg(t);
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sign(a[i][t]) == 0) continue;
        Int q = lattice::zt_fdiv(a[i][t], a[t][t]);
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (sign(a[i][t]) != 0) dirty = true;  // remainder becomes next pivot
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sign(a[t][j]) == 0) continue;
        Int q = lattice::zt_fdiv(a[t][j], a[t][t]);
        col_sub(j, t, q);
        if (sign(a[t][j]) != 0) dirty = true;
      }
      if (dirty) continue;
      // pivot divides its cleared row and column; enforce it on the rest
      bool fixed = false;
      for (std::size_t i = t + 1; i < rows && !fixed; ++i)
        for (std::size_t j = t + 1; j < cols && !fixed; ++j)
          if (sign(a[i][j] % a[t][t]) != 0) {
            for (std::size_t jj = t; jj < cols; ++jj) a[t][jj] += a[i][jj];
            fixed = true;
          }
      if (!fixed) break;
    }
    diag[t] = a[t][t];
  }
  return diag;
}

inline Int mod_reduce(const Int& x, const Int& d) { return x - lattice::zt_fdiv(x, d) * d; }

}  // namespace detail

inline UniversalModule universal_module(const FiniteRingSpec& spec) {
  std::vector<unsigned> image = detail::normalized_image(spec);
  const unsigned m = spec.m;
  lattice::Mat<Int> rel = lattice::hnf_rows(detail::relation_rows(m, image));
  lattice::Mat<Int> v(m, lattice::Vec<Int>(m, Int(0)));
  for (unsigned i = 0; i < m; ++i) v[i][i] = 1;
  std::vector<Int> diag = detail::smith_diagonal(rel, v);
  if (diag.size() != m) throw std::logic_error("relation lattice must have full rank");
  UniversalModule out;
  out.m = m;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (sign(diag[i]) == 0) throw std::logic_error("relation lattice must have full rank");
    if (diag[i] > 1) {
      out.invariant_factors.push_back(diag[i]);
      keep.push_back(i);
    }
  }
  out.d_table.assign(m, lattice::Vec<Int>(keep.size(), Int(0)));
  for (unsigned a = 0; a < m; ++a)
    for (std::size_t i = 0; i < keep.size(); ++i)
      out.d_table[a][i] = detail::mod_reduce(v[a][keep[i]], out.invariant_factors[i]);
  return out;
}

/// Componentwise reduction of a coordinate vector into the canonical range.
inline lattice::Vec<Int> module_reduce(const UniversalModule& mod, lattice::Vec<Int> v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = detail::mod_reduce(v[i], mod.invariant_factors[i]);
  return v;
}

/// k1*v1 + k2*v2 in the module.
inline lattice::Vec<Int> module_combine(const UniversalModule& mod, const Int& k1,
                                        const lattice::Vec<Int>& v1, const Int& k2,
                                        const lattice::Vec<Int>& v2) {
  lattice::Vec<Int> out(mod.invariant_factors.size(), Int(0));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = k1 * v1[i] + k2 * v2[i];
  return module_reduce(mod, std::move(out));
}

inline bool module_is_zero(const lattice::Vec<Int>& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return sign(x) == 0; });
}

/// Additive order of a coordinate vector: lcm of d_i / gcd(d_i, v_i).
inline Int module_element_order(const UniversalModule& mod, const lattice::Vec<Int>& v) {
  Int ord = 1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Int g = gcd(mod.invariant_factors[i], v[i]);
    Int part = lattice::zt_divexact(mod.invariant_factors[i], g);
    ord = lcm(ord, part);
  }
  return ord;
}

struct AxiomReport {
  bool pass = false;
  std::vector<unsigned> triviality_failures;                 // s with d(s) != 0
  std::vector<std::pair<unsigned, unsigned>> leibniz_failures;  // (a, b) pairs
};

/// Exhaustive re-check of the defining identities inside the quotient.
inline AxiomReport check_derivation_axioms(const FiniteRingSpec& spec,
                                           const UniversalModule& mod) {
  std::vector<unsigned> image = detail::normalized_image(spec);
  if (mod.m != spec.m || mod.d_table.size() != spec.m)
    throw std::invalid_argument("module does not match the ring spec");
  AxiomReport rep;
  for (unsigned s : image)
    if (!module_is_zero(mod.d_table[s])) rep.triviality_failures.push_back(s);
  for (unsigned a = 0; a < spec.m; ++a)
    for (unsigned b = 0; b < spec.m; ++b) {
      lattice::Vec<Int> rhs =
          module_combine(mod, Int(static_cast<unsigned long>(a)), mod.d_table[b],
                         Int(static_cast<unsigned long>(b)), mod.d_table[a]);
      if (mod.d_table[a * b % spec.m] != rhs) rep.leibniz_failures.emplace_back(a, b);
    }
  rep.pass = rep.triviality_failures.empty() && rep.leibniz_failures.empty();
  return rep;
}

inline nlohmann::json universal_to_json(const UniversalModule& mod) {
  nlohmann::json j;
  j["m"] = mod.m;
  j["invariant_factors"] = nlohmann::json::array();
  for (const Int& d : mod.invariant_factors) j["invariant_factors"].push_back(d.get_ui());
  nlohmann::json table = nlohmann::json::object();
  for (unsigned a = 0; a < mod.m; ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (const Int& c : mod.d_table[a]) row.push_back(c.get_ui());
    table[std::to_string(a)] = std::move(row);
  }
  j["d"] = std::move(table);
  return j;
}

}  // namespace arithd
