#include "mfkit/linalg.hpp"

#include <numeric>
#include <sstream>

#include "mfkit/error.hpp"

namespace mfkit {

CycloMatrix::CycloMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

CycloMatrix CycloMatrix::identity(std::size_t n, long order) {
  return scalar(n, CycloScalar(Rational(1), order));
}

CycloMatrix CycloMatrix::scalar(std::size_t n, const CycloScalar& value) {
  CycloMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = value;
  return m;
}

long CycloMatrix::order() const {
  long n = 1;
  for (const auto& x : data_) n = std::lcm(n, x.order());
  return n;
}

CycloMatrix CycloMatrix::lifted(long target) const {
  CycloMatrix m = *this;
  for (auto& x : m.data_) x = x.lifted(target);
  return m;
}

namespace {

void require_same_shape(const CycloMatrix& a, const CycloMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidArgument(std::string("shape mismatch in matrix ") + op);
}

}  // namespace

CycloMatrix CycloMatrix::operator-() const {
  CycloMatrix m = *this;
  for (auto& x : m.data_) x = -x;
  return m;
}

CycloMatrix operator+(const CycloMatrix& a, const CycloMatrix& b) {
  require_same_shape(a, b, "addition");
  CycloMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
  return m;
}

CycloMatrix operator-(const CycloMatrix& a, const CycloMatrix& b) {
  require_same_shape(a, b, "subtraction");
  CycloMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= b.data_[i];
  return m;
}

CycloMatrix operator*(const CycloMatrix& a, const CycloMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidArgument("shape mismatch in matrix product");
  CycloMatrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const CycloScalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
    }
  return m;
}

CycloMatrix operator*(const CycloScalar& s, const CycloMatrix& a) {
  CycloMatrix m = a;
  for (auto& x : m.data_) x = s * x;
  return m;
}

bool operator==(const CycloMatrix& a, const CycloMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool CycloMatrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool CycloMatrix::is_identity() const {
  CycloScalar s;
  return is_scalar(&s) && s == CycloScalar(1);
}

bool CycloMatrix::is_scalar(CycloScalar* value) const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (i == j) {
        if ((*this)(i, i) != (*this)(0, 0)) return false;
      } else if (!(*this)(i, j).is_zero()) {
        return false;
      }
    }
  if (value != nullptr) *value = rows_ == 0 ? CycloScalar(1) : (*this)(0, 0);
  return true;
}

CycloMatrix CycloMatrix::inverse() const {
  if (rows_ != cols_) throw InvalidArgument("inverse of a non-square matrix");
  const std::size_t n = rows_;
  const long ord = order();
  CycloMatrix a = lifted(ord);
  CycloMatrix inv = identity(n, ord);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c).is_zero()) ++piv;
    if (piv == n) throw DivisionByZero("singular matrix");
    if (piv != c)
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(a(c, k), a(piv, k));
        std::swap(inv(c, k), inv(piv, k));
      }
    const CycloScalar p = a(c, c).inverse();
    for (std::size_t k = 0; k < n; ++k) {
      a(c, k) *= p;
      inv(c, k) *= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      const CycloScalar f = a(r, c);
      for (std::size_t k = 0; k < n; ++k) {
        if (!a(c, k).is_zero()) a(r, k) -= f * a(c, k);
        if (!inv(c, k).is_zero()) inv(r, k) -= f * inv(c, k);
      }
    }
  }
  return inv;
}

CycloMatrix CycloMatrix::pow(long e) const {
  if (rows_ != cols_) throw InvalidArgument("power of a non-square matrix");
  CycloMatrix base = e < 0 ? inverse() : *this;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  CycloMatrix result = identity(rows_, order());
  while (k > 0) {
    if (k & 1UL) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

namespace {

// Bareiss elimination in place. Returns the rank; `det_sign` flips on swaps.
// Every division is by the previous pivot and is exact.
std::size_t bareiss(CycloMatrix& a, int* det_sign) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  CycloScalar prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a(piv, c).is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(a(r, k), a(piv, k));
      if (det_sign != nullptr) *det_sign = -*det_sign;
    }
    const CycloScalar p = a(r, c);
    const CycloScalar prev_inv = prev.inverse();
    for (std::size_t i = r + 1; i < rows; ++i) {
      const CycloScalar f = a(i, c);
      for (std::size_t k = c + 1; k < cols; ++k) {
        CycloScalar v = p * a(i, k);
        if (!f.is_zero() && !a(r, k).is_zero()) v -= f * a(r, k);
        a(i, k) = v.is_zero() ? v : v * prev_inv;
      }
      a(i, c) = CycloScalar();
    }
    prev = p;
    ++r;
  }
  return r;
}

}  // namespace

CycloScalar CycloMatrix::determinant() const {
  if (rows_ != cols_) throw InvalidArgument("determinant of a non-square matrix");
  if (rows_ == 0) return CycloScalar(1);
  CycloMatrix a = lifted(order());
  int sign = 1;
  if (bareiss(a, &sign) < rows_) return CycloScalar();
  const CycloScalar d = a(rows_ - 1, rows_ - 1);
  return sign > 0 ? d : -d;
}

std::size_t rank(const CycloMatrix& m) {
  CycloMatrix a = m.lifted(m.order());
  return bareiss(a, nullptr);
}

std::size_t kernel_dimension(const CycloMatrix& m) { return m.cols() - rank(m); }

CycloMatrix vstack(const std::vector<CycloMatrix>& blocks) {
  if (blocks.empty()) return {};
  std::size_t rows = 0;
  const std::size_t cols = blocks.front().cols();
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw InvalidArgument("vstack: column counts differ");
    rows += b.rows();
  }
  CycloMatrix m(rows, cols);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < cols; ++j) m(off + i, j) = b(i, j);
    off += b.rows();
  }
  return m;
}

CycloMatrix hstack(const std::vector<CycloMatrix>& blocks) {
  if (blocks.empty()) return {};
  std::size_t cols = 0;
  const std::size_t rows = blocks.front().rows();
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw InvalidArgument("hstack: row counts differ");
    cols += b.cols();
  }
  CycloMatrix m(rows, cols);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, off + j) = b(i, j);
    off += b.cols();
  }
  return m;
}

std::string CycloMatrix::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? ", " : "") << (*this)(i, j).to_string();
  }
  out << "]";
  return out.str();
}

nlohmann::json to_json(const CycloMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

CycloMatrix matrix_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw Error("schema", where + " must be a nonempty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) throw Error("schema", where + "/0 must be an array");
  const std::size_t cols = j[0].size();
  CycloMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row_ptr = where + "/" + std::to_string(i);
    if (!j[i].is_array() || j[i].size() != cols)
      throw Error("schema", row_ptr + " must be an array of length " + std::to_string(cols));
    for (std::size_t k = 0; k < cols; ++k) {
      try {
        m(i, k) = cyclo_from_json(j[i][k]);
      } catch (const Error& e) {
        throw Error("schema", row_ptr + "/" + std::to_string(k) + ": " + e.what());
      }
    }
  }
  return m;
}

}  // namespace mfkit
