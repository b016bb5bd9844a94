#ifndef HKFORGE_MATRIX_HPP
#define HKFORGE_MATRIX_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hkforge/error.hpp"
#include "hkforge/scalar.hpp"

namespace hkforge {

/// Square matrix over F_p, row-major.
class Matrix {
 public:
  Matrix(const PrimeField& field, std::size_t n) : field_(field), n_(n), a_(n * n, 0) {}

  Matrix(const PrimeField& field, const std::vector<std::vector<std::int64_t>>& rows)
      : field_(field), n_(rows.size()), a_(rows.size() * rows.size(), 0) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (rows[i].size() != n_) throw Error(ErrorKind::RingMismatch, "matrix is not square");
      for (std::size_t j = 0; j < n_; ++j) a_[i * n_ + j] = field_.reduce(rows[i][j]);
    }
  }

  static Matrix identity(const PrimeField& field, std::size_t n) {
    Matrix m(field, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix diagonal(const PrimeField& field, const std::vector<std::int64_t>& d) {
    Matrix m(field, d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = field.reduce(d[i]);
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  std::uint32_t characteristic() const noexcept { return field_.characteristic(); }
  const PrimeField& field() const noexcept { return field_; }
  const std::vector<std::uint32_t>& entries() const noexcept { return a_; }

  std::uint32_t& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.n_ != b.n_ || !(a.field_ == b.field_))
      throw Error(ErrorKind::RingMismatch, "matrix product of incompatible sizes or fields");
    Matrix c(a.field_, a.n_);
    const auto& F = a.field_;
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        auto aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < a.n_; ++j) c(i, j) = F.add(c(i, j), F.mul(aik, b(k, j)));
      }
    return c;
  }

  Matrix transpose() const {
    Matrix t(field_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Gauss-Jordan inverse; throws DivisionByZero for singular matrices.
  Matrix inverse() const {
    const auto& F = field_;
    Matrix work = *this;
    Matrix inv = identity(F, n_);
    for (std::size_t col = 0; col < n_; ++col) {
      std::size_t piv = col;
      while (piv < n_ && work(piv, col) == 0) ++piv;
      if (piv == n_) throw Error(ErrorKind::DivisionByZero, "matrix is singular");
      for (std::size_t j = 0; j < n_; ++j) {
        std::swap(work(piv, j), work(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
      auto s = F.inv(work(col, col));
      for (std::size_t j = 0; j < n_; ++j) {
        work(col, j) = F.mul(work(col, j), s);
        inv(col, j) = F.mul(inv(col, j), s);
      }
      for (std::size_t i = 0; i < n_; ++i) {
        if (i == col || work(i, col) == 0) continue;
        auto f = work(i, col);
        for (std::size_t j = 0; j < n_; ++j) {
          work(i, j) = F.sub(work(i, j), F.mul(f, work(col, j)));
          inv(i, j) = F.sub(inv(i, j), F.mul(f, inv(col, j)));
        }
      }
    }
    return inv;
  }

  bool is_invertible() const {
    try {
      (void)inverse();
      return true;
    } catch (const Error&) {
      return false;
    }
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.n_ == b.n_ && a.a_ == b.a_;
  }
  friend bool operator<(const Matrix& a, const Matrix& b) { return a.a_ < b.a_; }

 private:
  PrimeField field_;
  std::size_t n_;
  std::vector<std::uint32_t> a_;
};

}  // namespace hkforge

#endif  // HKFORGE_MATRIX_HPP
