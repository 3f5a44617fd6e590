#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace nestkit {

/// Arithmetic context for Z[zeta_e]: the cyclotomic polynomial Phi_e and the
/// reductions of x^j modulo Phi_e. Contexts are interned per e.
class CyclotomicField {
 public:
  static std::shared_ptr<const CyclotomicField> get(unsigned e);

  unsigned e() const { return e_; }
  /// phi(e), the dimension of the power basis.
  unsigned degree() const { return static_cast<unsigned>(phi_.size()) - 1; }
  /// Coefficients of Phi_e, constant term first.
  const std::vector<std::int64_t>& polynomial() const { return phi_; }
  /// x^j mod Phi_e for 0 <= j < max(e, 2*degree-1).
  const std::vector<std::int64_t>& power(unsigned j) const { return powers_[j]; }

  explicit CyclotomicField(unsigned e);

 private:
  unsigned e_;
  std::vector<std::int64_t> phi_;
  std::vector<std::vector<std::int64_t>> powers_;
};

/// An element of Z[zeta_e] in canonical form: coefficients on the power
/// basis 1, zeta, ..., zeta^(phi(e)-1), stored in a length-e vector whose
/// tail is zero. Two values are equal iff their coefficient vectors are.
class CyclotomicInt {
 public:
  CyclotomicInt() : CyclotomicInt(1) {}
  explicit CyclotomicInt(unsigned e, std::int64_t value = 0);

  /// Reduces an arbitrary vector of coefficients on zeta^0..zeta^(e-1).
  static CyclotomicInt from_powers(unsigned e, const std::vector<std::int64_t>& coeffs);
  /// zeta_e^k.
  static CyclotomicInt root(unsigned e, long long k);

  unsigned exponent() const { return e_; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }

  bool is_zero() const;
  /// True when the value is a rational integer, written to *out if non-null.
  bool is_integer(std::int64_t* out = nullptr) const;

  CyclotomicInt operator+(const CyclotomicInt& o) const;
  CyclotomicInt operator-(const CyclotomicInt& o) const;
  CyclotomicInt operator-() const;
  CyclotomicInt operator*(const CyclotomicInt& o) const;
  CyclotomicInt operator*(std::int64_t k) const;
  CyclotomicInt& operator+=(const CyclotomicInt& o);
  /// Complex conjugate (zeta -> zeta^-1).
  CyclotomicInt conj() const;
  /// Galois automorphism zeta -> zeta^k, gcd(k, e) = 1.
  CyclotomicInt galois(long long k) const;

  std::complex<double> to_complex() const;
  /// Human-readable form such as "-1 + 2*z^3", z = exp(2 pi i / e).
  std::string to_string() const;

  friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) { return a.c_ == b.c_ && a.e_ == b.e_; }
  friend bool operator!=(const CyclotomicInt& a, const CyclotomicInt& b) { return !(a == b); }

 private:
  void reduce_in_place(std::vector<std::int64_t>& raw) const;

  unsigned e_;
  std::shared_ptr<const CyclotomicField> field_;
  std::vector<std::int64_t> c_;
};

}  // namespace nestkit
