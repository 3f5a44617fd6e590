#include "nestkit/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include "nestkit/error.hpp"

namespace nestkit {

namespace {

using Poly = std::vector<std::int64_t>;

// Exact division of integer polynomials by a monic divisor.
Poly divide_monic(Poly num, const Poly& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() <= dn) return {0};
  Poly q(num.size() - dn, 0);
  for (auto i = static_cast<std::ptrdiff_t>(num.size()) - 1; i >= static_cast<std::ptrdiff_t>(dn); --i) {
    const std::int64_t c = num[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const std::size_t base = static_cast<std::size_t>(i) - dn;
    q[base] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[base + j] -= c * den[j];
  }
  return q;
}

Poly cyclotomic_poly(unsigned n, std::map<unsigned, Poly>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  Poly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) p = divide_monic(p, cyclotomic_poly(d, memo));
  memo[n] = p;
  return p;
}

}  // namespace

CyclotomicField::CyclotomicField(unsigned e) : e_(e) {
  if (e == 0) throw Error(ErrorKind::PreconditionViolated, "cyclotomic exponent must be positive");
  std::map<unsigned, Poly> memo;
  phi_ = cyclotomic_poly(e, memo);
  const unsigned d = degree();
  const unsigned count = std::max(e, 2 * d);
  powers_.assign(count, Poly(d, 0));
  powers_[0][0] = 1;
  for (unsigned j = 1; j < count; ++j) {
    // multiply by x, then substitute x^d = -sum phi_i x^i
    const Poly& prev = powers_[j - 1];
    Poly next(d, 0);
    if (d == 1) {
      next[0] = -prev[0] * phi_[0];
    } else {
      std::int64_t top = prev[d - 1];
      for (unsigned i = d - 1; i > 0; --i) next[i] = prev[i - 1];
      next[0] = 0;
      for (unsigned i = 0; i < d; ++i) next[i] -= top * phi_[i];
    }
    powers_[j] = next;
  }
}

std::shared_ptr<const CyclotomicField> CyclotomicField::get(unsigned e) {
  static std::mutex mu;
  static std::map<unsigned, std::shared_ptr<const CyclotomicField>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[e];
  if (!slot) slot = std::make_shared<const CyclotomicField>(e);
  return slot;
}

CyclotomicInt::CyclotomicInt(unsigned e, std::int64_t value)
    : e_(e), field_(CyclotomicField::get(e)), c_(e, 0) {
  c_[0] = value;
}

void CyclotomicInt::reduce_in_place(std::vector<std::int64_t>& raw) const {
  const unsigned d = field_->degree();
  std::vector<std::int64_t> out(e_, 0);
  for (std::size_t j = 0; j < raw.size(); ++j) {
    if (raw[j] == 0) continue;
    if (j < d) {
      out[j] += raw[j];
      continue;
    }
    const auto& pw = field_->power(static_cast<unsigned>(j));
    for (unsigned i = 0; i < d; ++i) out[i] += raw[j] * pw[i];
  }
  raw = std::move(out);
}

CyclotomicInt CyclotomicInt::from_powers(unsigned e, const std::vector<std::int64_t>& coeffs) {
  CyclotomicInt r(e);
  std::vector<std::int64_t> raw(e, 0);
  for (std::size_t j = 0; j < coeffs.size(); ++j) raw[j % e] += coeffs[j];
  r.reduce_in_place(raw);
  r.c_ = std::move(raw);
  return r;
}

CyclotomicInt CyclotomicInt::root(unsigned e, long long k) {
  std::vector<std::int64_t> raw(e, 0);
  long long m = k % static_cast<long long>(e);
  if (m < 0) m += e;
  raw[static_cast<std::size_t>(m)] = 1;
  return from_powers(e, raw);
}

bool CyclotomicInt::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::int64_t x) { return x == 0; });
}

bool CyclotomicInt::is_integer(std::int64_t* out) const {
  if (!std::all_of(c_.begin() + 1, c_.end(), [](std::int64_t x) { return x == 0; })) return false;
  if (out) *out = c_[0];
  return true;
}

CyclotomicInt CyclotomicInt::operator+(const CyclotomicInt& o) const {
  CyclotomicInt r = *this;
  r += o;
  return r;
}

CyclotomicInt& CyclotomicInt::operator+=(const CyclotomicInt& o) {
  if (o.e_ != e_) throw Error(ErrorKind::PreconditionViolated, "cyclotomic exponents differ");
  for (unsigned i = 0; i < e_; ++i) c_[i] += o.c_[i];
  return *this;
}

CyclotomicInt CyclotomicInt::operator-(const CyclotomicInt& o) const { return *this + (-o); }

CyclotomicInt CyclotomicInt::operator-() const {
  CyclotomicInt r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CyclotomicInt CyclotomicInt::operator*(std::int64_t k) const {
  CyclotomicInt r = *this;
  for (auto& x : r.c_) x *= k;
  return r;
}

CyclotomicInt CyclotomicInt::operator*(const CyclotomicInt& o) const {
  if (o.e_ != e_) throw Error(ErrorKind::PreconditionViolated, "cyclotomic exponents differ");
  const unsigned d = field_->degree();
  std::vector<std::int64_t> raw(std::max<std::size_t>(e_, 2 * d), 0);
  for (unsigned i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (unsigned j = 0; j < d; ++j) raw[i + j] += c_[i] * o.c_[j];
  }
  CyclotomicInt r(e_);
  reduce_in_place(raw);
  r.c_ = std::move(raw);
  return r;
}

CyclotomicInt CyclotomicInt::conj() const { return galois(-1); }

CyclotomicInt CyclotomicInt::galois(long long k) const {
  std::vector<std::int64_t> raw(e_, 0);
  long long m = k % static_cast<long long>(e_);
  if (m < 0) m += e_;
  for (unsigned j = 0; j < e_; ++j)
    if (c_[j]) raw[(static_cast<unsigned long long>(j) * m) % e_] += c_[j];
  return from_powers(e_, raw);
}

std::complex<double> CyclotomicInt::to_complex() const {
  std::complex<double> s = 0;
  for (unsigned j = 0; j < e_; ++j)
    if (c_[j]) s += static_cast<double>(c_[j]) * std::polar(1.0, 2 * std::numbers::pi * j / e_);
  return s;
}

std::string CyclotomicInt::to_string() const {
  std::string out;
  for (unsigned j = 0; j < e_; ++j) {
    std::int64_t c = c_[j];
    if (c == 0) continue;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    std::int64_t a = c < 0 ? -c : c;
    if (j == 0) {
      out += std::to_string(a);
      continue;
    }
    if (a != 1) out += std::to_string(a) + "*";
    out += j == 1 ? "z" : "z^" + std::to_string(j);
  }
  return out.empty() ? "0" : out;
}

}  // namespace nestkit
