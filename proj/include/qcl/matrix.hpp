// Copyright 2026 The QCL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "qcl/errors.hpp"

namespace qcl {

using Complex = std::complex<double>;

namespace detail {

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

inline double conj_of(double v) { return v; }
inline Complex conj_of(const Complex& v) { return std::conj(v); }
inline double real_of(double v) { return v; }
inline double real_of(const Complex& v) { return v.real(); }
inline bool finite_of(double v) { return std::isfinite(v); }
inline bool finite_of(const Complex& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

}  // namespace detail

/// Dense row-major matrix over `double` or `std::complex<double>`.
///
/// Sizes in this library never exceed a few dozen rows, so every operation
/// is a straightforward loop; there is no expression templating or aliasing
/// analysis.
template <typename T>
class BasicMatrix {
 public:
  using value_type = T;

  BasicMatrix() = default;
  BasicMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  BasicMatrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) {
        throw DimensionMismatch("ragged initializer list");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static BasicMatrix identity(std::size_t n) {
    BasicMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  static BasicMatrix diagonal(std::span<const T> entries) {
    BasicMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
  }
  static BasicMatrix diagonal(std::initializer_list<T> entries) {
    return diagonal(std::span<const T>(entries.begin(), entries.size()));
  }

  /// Matrix unit |row><col| of the given shape.
  static BasicMatrix unit(std::size_t rows, std::size_t cols, std::size_t row,
                          std::size_t col) {
    BasicMatrix m(rows, cols);
    m(row, col) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  BasicMatrix& operator+=(const BasicMatrix& o) {
    require_same_shape(o, "+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  BasicMatrix& operator-=(const BasicMatrix& o) {
    require_same_shape(o, "-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  BasicMatrix& operator*=(T s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend BasicMatrix operator+(BasicMatrix a, const BasicMatrix& b) {
    return a += b;
  }
  friend BasicMatrix operator-(BasicMatrix a, const BasicMatrix& b) {
    return a -= b;
  }
  friend BasicMatrix operator-(BasicMatrix a) {
    for (auto& v : a.data_) v = -v;
    return a;
  }
  friend BasicMatrix operator*(BasicMatrix a, T s) { return a *= s; }
  friend BasicMatrix operator*(T s, BasicMatrix a) { return a *= s; }

  friend BasicMatrix operator*(const BasicMatrix& a, const BasicMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionMismatch("product of " + a.shape() + " and " + b.shape());
    }
    BasicMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T aik = a(i, k);
        if (aik == T{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

  friend bool operator==(const BasicMatrix&, const BasicMatrix&) = default;

  BasicMatrix transpose() const {
    BasicMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }
  BasicMatrix conj() const {
    BasicMatrix out = *this;
    for (auto& v : out.data_) v = detail::conj_of(v);
    return out;
  }
  BasicMatrix adjoint() const { return transpose().conj(); }

  T trace() const {
    require_square("trace");
    T t{};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  /// Largest entry modulus, the norm used for every tolerance in this library.
  double max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
  }
  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
  }
  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const T& v) { return detail::finite_of(v); });
  }

  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

  void require_square(const char* op) const {
    if (!is_square()) throw NonSquare(std::string(op) + " needs a square matrix, got " + shape());
  }

 private:
  void require_same_shape(const BasicMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionMismatch(std::string(op) + ": " + shape() + " vs " + o.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = BasicMatrix<Complex>;
using RealMatrix = BasicMatrix<double>;
using ComplexVector = std::vector<Complex>;

template <typename T>
std::ostream& operator<<(std::ostream& os, const BasicMatrix<T>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    os << '\n';
  }
  return os;
}

/// Kronecker product a ⊗ b.
template <typename T>
BasicMatrix<T> kron(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
  BasicMatrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T aij = a(i, j);
      if (aij == T{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

/// Frobenius inner product Tr(a† b).
template <typename T>
T inner(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("inner product of " + a.shape() + " and " + b.shape());
  }
  T s{};
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) s += detail::conj_of(da[i]) * db[i];
  return s;
}

inline ComplexMatrix to_complex(const RealMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

/// |v><w|
inline ComplexMatrix outer(std::span<const Complex> v, std::span<const Complex> w) {
  ComplexMatrix out(v.size(), w.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) out(i, j) = v[i] * std::conj(w[j]);
  return out;
}

inline ComplexMatrix projector(std::span<const Complex> v) { return outer(v, v); }

inline ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> v) {
  if (m.cols() != v.size()) throw DimensionMismatch("matrix-vector product");
  ComplexVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

/// ‖m − m†‖_max
template <typename T>
double hermiticity_defect(const BasicMatrix<T>& m) {
  m.require_square("hermiticity_defect");
  double d = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      d = std::max(d, std::abs(m(i, j) - detail::conj_of(m(j, i))));
  return d;
}

}  // namespace qcl
