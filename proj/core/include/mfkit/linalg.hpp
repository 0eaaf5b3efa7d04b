#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mfkit/cyclo.hpp"

namespace mfkit {

/// Dense matrix over a cyclotomic field, row-major.
class CycloMatrix {
 public:
  CycloMatrix() = default;
  CycloMatrix(std::size_t rows, std::size_t cols);

  static CycloMatrix identity(std::size_t n, long order = 1);
  static CycloMatrix scalar(std::size_t n, const CycloScalar& value);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  CycloScalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const CycloScalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  // Smallest N such that every entry lies in Q(zeta_N).
  long order() const;
  // Every entry re-expressed in Q(zeta_target).
  CycloMatrix lifted(long target) const;

  CycloMatrix operator-() const;
  friend CycloMatrix operator+(const CycloMatrix& a, const CycloMatrix& b);
  friend CycloMatrix operator-(const CycloMatrix& a, const CycloMatrix& b);
  friend CycloMatrix operator*(const CycloMatrix& a, const CycloMatrix& b);
  friend CycloMatrix operator*(const CycloScalar& s, const CycloMatrix& a);
  friend bool operator==(const CycloMatrix& a, const CycloMatrix& b);

  bool is_zero() const;
  bool is_identity() const;
  // Scalar multiple of the identity; `value` receives the scalar when non-null.
  bool is_scalar(CycloScalar* value = nullptr) const;

  // Throws DivisionByZero when singular.
  CycloMatrix inverse() const;
  CycloMatrix pow(long e) const;
  CycloScalar determinant() const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<CycloScalar> data_;
};

// Rank via fraction-free (Bareiss) elimination. Deterministic.
std::size_t rank(const CycloMatrix& m);
std::size_t kernel_dimension(const CycloMatrix& m);

// Places blocks one under another; all must share the column count.
CycloMatrix vstack(const std::vector<CycloMatrix>& blocks);
// Places blocks side by side; all must share the row count.
CycloMatrix hstack(const std::vector<CycloMatrix>& blocks);

nlohmann::json to_json(const CycloMatrix& m);
// Expects an array of rows of CycloScalar objects; `where` prefixes error pointers.
CycloMatrix matrix_from_json(const nlohmann::json& j, const std::string& where);

}  // namespace mfkit
