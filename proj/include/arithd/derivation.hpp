#pragma once

#include <json.hpp>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "arithd/factor.hpp"
#include "arithd/int.hpp"
#include "arithd/primes.hpp"

namespace arithd {

/// Element of the free module with one basis symbol per prime.  Sparse:
/// absent primes carry coefficient zero, stored keys are ascending and
/// nonzero.
struct OmegaElement {
  std::map<Int, Int> coeffs;

  bool is_zero() const { return coeffs.empty(); }

  Int coeff(const Int& p) const {
    auto it = coeffs.find(p);
    return it == coeffs.end() ? Int(0) : it->second;
  }

  void set(const Int& p, Int v) {
    if (sign(v) == 0)
      coeffs.erase(p);
    else
      coeffs[p] = std::move(v);
  }

  OmegaElement& operator+=(const OmegaElement& o) {
    for (const auto& [p, v] : o.coeffs) set(p, coeff(p) + v);
    return *this;
  }

  OmegaElement& operator-=(const OmegaElement& o) {
    for (const auto& [p, v] : o.coeffs) set(p, coeff(p) - v);
    return *this;
  }

  OmegaElement& operator*=(const Int& k) {
    if (sign(k) == 0) {
      coeffs.clear();
      return *this;
    }
    for (auto& [p, v] : coeffs) v *= k;
    return *this;
  }

  friend OmegaElement operator+(OmegaElement a, const OmegaElement& b) { return a += b; }
  friend OmegaElement operator-(OmegaElement a, const OmegaElement& b) { return a -= b; }
  friend OmegaElement operator*(const Int& k, OmegaElement a) { return a *= k; }
  friend bool operator==(const OmegaElement&, const OmegaElement&) = default;
};

/// Image of n under the universal map: n * sum over p | n of (v_p(n)/p) e_p.
/// Extends to all of Z with d(0) = d(1) = d(-1) = 0 and d(-n) = -d(n).
inline OmegaElement d_map(const Int& n) {
  OmegaElement out;
  if (sign(n) == 0) return out;
  Factorization f = factorize(abs(n));
  for (const auto& [p, e] : f.factors) {
    Int c = n / p;
    c *= e;
    out.coeffs.emplace(p, std::move(c));
  }
  return out;
}

/// Bounded derivation: a linear functional given by finitely many values on
/// the basis symbols.  Keys must be prime; zero values are dropped.
struct Derivation {
  std::map<Int, Int> values;

  Derivation() = default;

  explicit Derivation(std::map<Int, Int> vals) {
    for (auto& [p, v] : vals) {
      if (!is_prime(p)) throw std::domain_error("derivation key is not prime: " + p.get_str());
      if (sign(v) != 0) values.emplace(p, std::move(v));
    }
  }

  Int value_at(const Int& p) const {
    auto it = values.find(p);
    return it == values.end() ? Int(0) : it->second;
  }

  /// Largest absolute value taken on a basis symbol (0 for the zero map).
  Int sup_norm() const {
    Int m = 0;
    for (const auto& [p, v] : values) {
      Int a = abs(v);
      if (a > m) m = a;
    }
    return m;
  }

  Int apply(const OmegaElement& x) const {
    Int acc = 0;
    for (const auto& [p, c] : x.coeffs) acc += c * value_at(p);
    return acc;
  }

  friend bool operator==(const Derivation&, const Derivation&) = default;
};

inline Int d_psi(const Derivation& psi, const Int& n) { return psi.apply(d_map(n)); }

/// a * d_psi(b) - b * d_psi(a), for nonzero a, b.
inline Int wronskian(const Derivation& psi, const Int& a, const Int& b) {
  if (sign(a) == 0 || sign(b) == 0)
    throw std::domain_error("wronskian requires nonzero arguments");
  return a * d_psi(psi, b) - b * d_psi(psi, a);
}

/// Same value computed prime-by-prime as ab * sum (v_p(b)-v_p(a))/p * psi(p);
/// each term is integral because p divides a or b.
inline Int wronskian_factored(const Derivation& psi, const Int& a, const Int& b) {
  if (sign(a) == 0 || sign(b) == 0)
    throw std::domain_error("wronskian requires nonzero arguments");
  Factorization fa = factorize(abs(a));
  Factorization fb = factorize(abs(b));
  Int acc = 0;
  auto ia = fa.factors.begin();
  auto ib = fb.factors.begin();
  auto term = [&](const Int& p, long dv) {
    Int t = (a * b) / p;
    t *= dv;
    acc += t * psi.value_at(p);
  };
  while (ia != fa.factors.end() || ib != fb.factors.end()) {
    if (ib == fb.factors.end() || (ia != fa.factors.end() && ia->first < ib->first)) {
      term(ia->first, -static_cast<long>(ia->second));
      ++ia;
    } else if (ia == fa.factors.end() || ib->first < ia->first) {
      term(ib->first, static_cast<long>(ib->second));
      ++ib;
    } else {
      term(ia->first, static_cast<long>(ib->second) - static_cast<long>(ia->second));
      ++ia;
      ++ib;
    }
  }
  return acc;
}

/// a and b are psi-independent when the wronskian does not vanish.
inline bool is_independent(const Derivation& psi, const Int& a, const Int& b) {
  return sign(wronskian(psi, a, b)) != 0;
}

// ---- JSON round trip.  A derivation serializes as an object mapping the
// prime (decimal string) to the value (decimal string).

inline nlohmann::json derivation_to_json(const Derivation& psi) {
  nlohmann::json obj = nlohmann::json::object();
  for (const auto& [p, v] : psi.values) obj[p.get_str()] = v.get_str();
  return obj;
}

inline Derivation derivation_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("derivation JSON must be an object");
  std::map<Int, Int> vals;
  for (auto it = j.begin(); it != j.end(); ++it) {
    Int p = int_from_string(it.key());
    if (!it.value().is_string())
      throw std::invalid_argument("derivation values must be decimal strings");
    vals[p] = int_from_string(it.value().get<std::string>());
  }
  return Derivation(std::move(vals));
}

inline nlohmann::json omega_to_json(const OmegaElement& x) {
  nlohmann::json obj = nlohmann::json::object();
  for (const auto& [p, c] : x.coeffs) obj[p.get_str()] = c.get_str();
  return obj;
}

}  // namespace arithd
