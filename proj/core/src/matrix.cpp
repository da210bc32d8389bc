#include "nchol/matrix.hpp"

#include <ostream>
#include <sstream>

#include "nchol/errors.hpp"

namespace nchol {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(Errc::InvalidArgument, what);
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  require(data_.size() == rows * cols, "matrix entry count does not match shape");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) { return scalar(n, Rational(1)); }

Matrix Matrix::scalar(std::size_t n, const Rational& c) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

Matrix Matrix::diagonal(const std::vector<Rational>& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::column(const std::vector<Rational>& v) { return Matrix(v.size(), 1, v); }

Matrix Matrix::unit_column(std::size_t n, std::size_t i) {
  Matrix m(n, 1);
  m(i, 0) = 1;
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != Rational(i == j ? 1 : 0)) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::col(std::size_t c) const { return block(0, c, rows_, 1); }

Matrix Matrix::cols_range(std::size_t begin, std::size_t end) const {
  return block(0, begin, rows_, end - begin);
}

Matrix Matrix::rows_range(std::size_t begin, std::size_t end) const {
  return block(begin, 0, end - begin, cols_);
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
  return m;
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
  Matrix m(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  require(r0 + nr <= rows_ && c0 + nc <= cols_, "block out of range");
  Matrix m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  require(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, "block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Matrix Matrix::pow(std::size_t k) const {
  require(is_square(), "power of non-square matrix");
  Matrix result = identity(rows_);
  Matrix base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Rational Matrix::trace() const {
  Rational t;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "shape mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(const Rational& c) {
  for (auto& x : data_) x *= c;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols_ == b.rows_, "shape mismatch in *");
  Matrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Rational& y = b(k, j);
        if (!y.is_zero()) m(i, j) += x * y;
      }
    }
  return m;
}

Matrix Matrix::operator-() const {
  Matrix m = *this;
  for (auto& x : m.data_) x = -x;
  return m;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << "]";
  }
  return os << "]";
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), "hstack row mismatch");
  Matrix m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.cols(), "vstack column mismatch");
  Matrix m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

Matrix block_diag(const std::vector<Matrix>& blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) r += b.rows(), c += b.cols();
  Matrix m(r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    m.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

bool commute(const Matrix& a, const Matrix& b) { return a * b == b * a; }

}  // namespace nchol

namespace nchol {

Matrix hstack(const std::vector<Matrix>& parts) {
  Matrix out = parts.at(0);
  for (std::size_t k = 1; k < parts.size(); ++k) out = hstack(out, parts[k]);
  return out;
}

Matrix vstack(const std::vector<Matrix>& parts) {
  Matrix out = parts.at(0);
  for (std::size_t k = 1; k < parts.size(); ++k) out = vstack(out, parts[k]);
  return out;
}

}  // namespace nchol
