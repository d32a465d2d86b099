// Copyright 2026 The schmidt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace schmidt {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Dense row-major complex matrix.  Values are immutable in spirit: the
/// library treats matrices as values and never shares buffers.
class ComplexMatrix {
 public:
  ComplexMatrix() : rows_(0), cols_(0) {}
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, CVector entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const CVector& entries() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix operator+(const ComplexMatrix& rhs) const;
  ComplexMatrix operator-(const ComplexMatrix& rhs) const;
  ComplexMatrix& operator*=(Complex s);
  friend ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }

  CVector column(std::size_t c) const;
  CVector row(std::size_t r) const;
  void set_column(std::size_t c, const CVector& v);
  void set_row(std::size_t r, const CVector& v);

  /// Rectangular block [r0, r1) x [c0, c1).
  ComplexMatrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;

  /// Replaces columns [c0, c0 + b.cols()) with (this columns) * b.
  /// Used to refine a diagonalizer inside a degenerate eigenvalue cluster.
  void right_multiply_block(std::size_t c0, const ComplexMatrix& b);

  double frobenius_norm() const;
  Complex trace() const;
  bool all_finite() const;

 private:
  std::size_t rows_, cols_;
  CVector data_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
CVector matvec(const ComplexMatrix& a, const CVector& v);

// Small vector helpers shared across the library.
double vec_norm(const CVector& v);
Complex vec_dot(const CVector& a, const CVector& b);  // conjugates the first argument
void vec_scale(CVector& v, Complex s);
CVector vec_sub(const CVector& a, const CVector& b);
double vec_dist(const CVector& a, const CVector& b);

/// Frobenius norm of the strictly off-diagonal part (rectangular allowed:
/// "diagonal" means entries (i, i) for i < min(rows, cols)).
double off_diagonal_norm(const ComplexMatrix& m);

}  // namespace schmidt
