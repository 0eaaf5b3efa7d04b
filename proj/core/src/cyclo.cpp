#include "mfkit/cyclo.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

#include "mfkit/error.hpp"

namespace mfkit {

long euler_phi(long n) {
  if (n < 1) throw InvalidArgument("euler_phi: n must be positive");
  long result = n;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

std::vector<Integer> compute_cyclotomic(long n) {
  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<Integer> num(static_cast<std::size_t>(n + 1), 0);
  num[0] = -1;
  num[static_cast<std::size_t>(n)] = 1;
  for (long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const auto& den = cyclotomic_polynomial(d);
    const std::size_t dd = den.size() - 1;
    std::vector<Integer> quot(num.size() - dd, 0);
    for (std::size_t i = num.size() - 1; i + 1 > dd; --i) {
      const Integer c = num[i];  // den is monic
      quot[i - dd] = c;
      if (c != 0) {
        for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
      }
      if (i == dd) break;
    }
    num = std::move(quot);
  }
  return num;
}

std::mutex& cyclo_cache_mutex() {
  static std::mutex m;
  return m;
}

// Reduces a polynomial in place modulo Phi_order and trims to phi(order) terms.
void reduce_mod_cyclotomic(std::vector<Rational>& p, long order) {
  const auto& phi_poly = cyclotomic_polynomial(order);
  const std::size_t deg = phi_poly.size() - 1;
  if (p.size() > deg) {
    for (std::size_t i = p.size() - 1; i >= deg; --i) {
      if (p[i] != 0) {
        const Rational c = p[i];
        for (std::size_t j = 0; j <= deg; ++j) p[i - deg + j] -= c * phi_poly[j];
      }
      if (i == deg) break;
    }
  }
  p.resize(deg, Rational(0));
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(long n) {
  if (n < 1) throw InvalidArgument("cyclotomic_polynomial: n must be positive");
  static std::map<long, std::vector<Integer>> cache;
  {
    std::lock_guard lock(cyclo_cache_mutex());
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  std::vector<Integer> poly;
  if (n == 1) {
    poly = {Integer(-1), Integer(1)};
  } else {
    poly = compute_cyclotomic(n);
  }
  std::lock_guard lock(cyclo_cache_mutex());
  return cache.emplace(n, std::move(poly)).first->second;
}

CycloScalar::CycloScalar() : order_(1), coeffs_{Rational(0)} {}

CycloScalar::CycloScalar(long value) : order_(1), coeffs_{Rational(value)} {}

CycloScalar::CycloScalar(const Rational& value, long order) : order_(order) {
  if (order < 1) throw InvalidArgument("cyclotomic order must be positive");
  coeffs_.assign(static_cast<std::size_t>(euler_phi(order)), Rational(0));
  coeffs_[0] = value;
}

CycloScalar::CycloScalar(long order, std::vector<Rational> reduced_coeffs, bool)
    : order_(order), coeffs_(std::move(reduced_coeffs)) {}

CycloScalar CycloScalar::from_polynomial(long order, std::vector<Rational> coeffs) {
  if (order < 1) throw InvalidArgument("cyclotomic order must be positive");
  reduce_mod_cyclotomic(coeffs, order);
  for (auto& c : coeffs) c.canonicalize();
  return CycloScalar(order, std::move(coeffs), true);
}

CycloScalar CycloScalar::root_of_unity(long k, long order) {
  if (order < 1) throw InvalidArgument("root_of_unity: order must be >= 1");
  long e = k % order;
  if (e < 0) e += order;
  std::vector<Rational> p(static_cast<std::size_t>(e + 1), Rational(0));
  p[static_cast<std::size_t>(e)] = 1;
  return from_polynomial(order, std::move(p));
}

bool CycloScalar::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CycloScalar::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

CycloScalar CycloScalar::lifted(long target) const {
  if (target == order_) return *this;
  if (target < 1 || target % order_ != 0)
    throw InvalidArgument("lift target " + std::to_string(target) + " is not a multiple of " +
                          std::to_string(order_));
  const long step = target / order_;
  std::vector<Rational> p(static_cast<std::size_t>(target), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    const long e = (static_cast<long>(i) * step) % target;
    p[static_cast<std::size_t>(e)] += coeffs_[i];
  }
  return from_polynomial(target, std::move(p));
}

namespace {

long common_order(long a, long b) { return std::lcm(a, b); }

}  // namespace

CycloScalar CycloScalar::operator-() const {
  CycloScalar r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycloScalar& CycloScalar::operator+=(const CycloScalar& other) {
  const long n = common_order(order_, other.order_);
  if (n != order_) *this = lifted(n);
  const CycloScalar& rhs = other.order_ == n ? other : other.lifted(n);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

CycloScalar& CycloScalar::operator-=(const CycloScalar& other) { return *this += -other; }

CycloScalar& CycloScalar::operator*=(const CycloScalar& other) {
  const long n = common_order(order_, other.order_);
  const CycloScalar lhs = order_ == n ? *this : lifted(n);
  const CycloScalar rhs = other.order_ == n ? other : other.lifted(n);
  const std::size_t d = lhs.coeffs_.size();
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (lhs.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (rhs.coeffs_[j] == 0) continue;
      prod[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
    }
  }
  *this = from_polynomial(n, std::move(prod));
  return *this;
}

CycloScalar& CycloScalar::operator/=(const CycloScalar& other) {
  return *this *= other.inverse();
}

bool operator==(const CycloScalar& a, const CycloScalar& b) {
  if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
  const long n = std::lcm(a.order_, b.order_);
  return a.lifted(n).coeffs_ == b.lifted(n).coeffs_;
}

CycloScalar CycloScalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero cyclotomic scalar");
  const std::size_t d = coeffs_.size();
  if (d == 1) {
    CycloScalar r = *this;
    r.coeffs_[0] = 1 / coeffs_[0];
    return r;
  }
  // Solve (multiplication-by-this) * y = 1 in the power basis.
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1, Rational(0)));
  CycloScalar col = *this;
  const CycloScalar zeta = root_of_unity(1, order_);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) m[i][j] = col.coeffs_[i];
    if (j + 1 < d) col *= zeta;
  }
  m[0][d] = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && m[piv][c] == 0) ++piv;
    if (piv == d) throw DivisionByZero("singular multiplication matrix");
    std::swap(m[c], m[piv]);
    const Rational inv = 1 / m[c][c];
    for (std::size_t k = c; k <= d; ++k) m[c][k] *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t k = c; k <= d; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::vector<Rational> y(d);
  for (std::size_t i = 0; i < d; ++i) y[i] = m[i][d];
  return CycloScalar(order_, std::move(y), true);
}

CycloScalar CycloScalar::pow(long e) const {
  CycloScalar base = e < 0 ? inverse() : *this;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  CycloScalar result(Rational(1), order_);
  while (k > 0) {
    if (k & 1UL) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

CycloScalar CycloScalar::galois(long k) const {
  if (std::gcd(k, order_) != 1)
    throw InvalidArgument("galois exponent " + std::to_string(k) + " is not coprime to order " +
                          std::to_string(order_));
  std::vector<Rational> p(static_cast<std::size_t>(order_), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    long e = (k % order_) * static_cast<long>(i) % order_;
    if (e < 0) e += order_;
    p[static_cast<std::size_t>(e)] += coeffs_[i];
  }
  return from_polynomial(order_, std::move(p));
}

std::complex<double> CycloScalar::to_complex(long embedding) const {
  if (std::gcd(embedding, order_) != 1)
    throw InvalidArgument("embedding " + std::to_string(embedding) +
                          " is not coprime to order " + std::to_string(order_));
  long double re = 0;
  long double im = 0;
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    long e = (embedding % order_) * static_cast<long>(i) % order_;
    if (e < 0) e += order_;
    const long double angle = two_pi * static_cast<long double>(e) / static_cast<long double>(order_);
    const long double c = coeffs_[i].get_d();
    re += c * std::cos(angle);
    im += c * std::sin(angle);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

std::string CycloScalar::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    Rational c = coeffs_[i];
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    c = abs(c);
    first = false;
    if (i == 0) {
      out << c.get_str();
    } else {
      if (c != 1) out << c.get_str() << "*";
      out << "z" << order_;
      if (i > 1) out << "^" << i;
    }
  }
  if (first) out << "0";
  return out.str();
}

CycloScalar arith(ArithOp op, const CycloScalar& a, const CycloScalar& b) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Neg: return -a;
    case ArithOp::Inv: return a.inverse();
  }
  throw InvalidArgument("unknown arithmetic operation");
}

nlohmann::json to_json(const CycloScalar& value) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : value.coeffs())
    coeffs.push_back({c.get_num().get_str(), c.get_den().get_str()});
  return {{"order", value.order()}, {"coeffs", coeffs}};
}

CycloScalar cyclo_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("coeffs"))
    throw Error("schema", "cyclotomic scalar must be an object with \"order\" and \"coeffs\"");
  if (!j["order"].is_number_integer() || j["order"].get<long>() < 1)
    throw Error("schema", "/order must be a positive integer");
  const long order = j["order"].get<long>();
  const auto& cs = j["coeffs"];
  if (!cs.is_array() || cs.size() != static_cast<std::size_t>(euler_phi(order)))
    throw Error("schema", "/coeffs must be an array of length phi(order) = " +
                              std::to_string(euler_phi(order)));
  std::vector<Rational> coeffs;
  coeffs.reserve(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto& c = cs[i];
    if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string())
      throw Error("schema", "/coeffs/" + std::to_string(i) + " must be [\"num\", \"den\"]");
    Integer num;
    Integer den;
    if (num.set_str(c[0].get<std::string>(), 10) != 0 ||
        den.set_str(c[1].get<std::string>(), 10) != 0 || den == 0)
      throw Error("schema", "/coeffs/" + std::to_string(i) + " is not a valid rational");
    Rational q(num, den);
    q.canonicalize();
    coeffs.push_back(q);
  }
  return CycloScalar::from_polynomial(order, std::move(coeffs));
}

}  // namespace mfkit
