#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

namespace mfkit {

using Rational = mpq_class;
using Integer = mpz_class;

long euler_phi(long n);

// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
// Results are cached; safe to call concurrently.
const std::vector<Integer>& cyclotomic_polynomial(long n);

/// Exact element of the cyclotomic field Q(zeta_N).
///
/// Stored in the power basis 1, zeta, ..., zeta^(phi(N)-1), i.e. reduced
/// modulo the N-th cyclotomic polynomial, so equal elements of the same order
/// have identical coefficient vectors. Binary operations on operands of
/// different orders lift both to the lcm of the orders first.
class CycloScalar {
 public:
  CycloScalar();  // zero of Q = Q(zeta_1)
  CycloScalar(long value);  // NOLINT(google-explicit-constructor)
  explicit CycloScalar(const Rational& value, long order = 1);

  // Builds from arbitrary power-basis coefficients of degree < anything; the
  // input is reduced modulo Phi_order.
  static CycloScalar from_polynomial(long order, std::vector<Rational> coeffs);
  static CycloScalar root_of_unity(long k, long order);

  long order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  Rational rational_part() const { return coeffs_.front(); }

  // Same element expressed in Q(zeta_target); target must be a multiple of order().
  CycloScalar lifted(long target) const;

  CycloScalar operator-() const;
  CycloScalar& operator+=(const CycloScalar& other);
  CycloScalar& operator-=(const CycloScalar& other);
  CycloScalar& operator*=(const CycloScalar& other);
  CycloScalar& operator/=(const CycloScalar& other);

  friend CycloScalar operator+(CycloScalar a, const CycloScalar& b) { return a += b; }
  friend CycloScalar operator-(CycloScalar a, const CycloScalar& b) { return a -= b; }
  friend CycloScalar operator*(CycloScalar a, const CycloScalar& b) { return a *= b; }
  friend CycloScalar operator/(CycloScalar a, const CycloScalar& b) { return a /= b; }

  friend bool operator==(const CycloScalar& a, const CycloScalar& b);
  friend bool operator!=(const CycloScalar& a, const CycloScalar& b) { return !(a == b); }

  // Throws DivisionByZero on zero.
  CycloScalar inverse() const;
  CycloScalar pow(long e) const;

  // Field automorphism zeta -> zeta^k; gcd(k, N) must be 1. galois(-1) is
  // complex conjugation under every embedding.
  CycloScalar galois(long k) const;

  // Image under zeta_N -> exp(2 pi i embedding / N). gcd(embedding, N) must be 1.
  std::complex<double> to_complex(long embedding = 1) const;

  std::string to_string() const;

 private:
  CycloScalar(long order, std::vector<Rational> reduced_coeffs, bool /*tag*/);

  long order_ = 1;
  std::vector<Rational> coeffs_;
};

enum class ArithOp { Add, Mul, Neg, Inv };

// Single entry point mirroring the four field operations; `b` is ignored for
// the unary operations.
CycloScalar arith(ArithOp op, const CycloScalar& a, const CycloScalar& b = CycloScalar());

// {"order": N, "coeffs": [["num","den"], ...]} with decimal strings.
nlohmann::json to_json(const CycloScalar& value);
CycloScalar cyclo_from_json(const nlohmann::json& j);

}  // namespace mfkit
