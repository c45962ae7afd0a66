#include "ffec/linalg.hpp"

#include <utility>

#include "ffec/error.hpp"

namespace ffec {

RMatrix RMatrix::identity(std::size_t n) {
  RMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RMatrix RMatrix::operator*(const RMatrix& o) const {
  if (c_ != o.r_) fail(ErrorKind::InvalidArgument, "matrix shape mismatch");
  RMatrix m(r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const Rational& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.c_; ++j) m(i, j) += x * o(k, j);
    }
  return m;
}

RMatrix RMatrix::operator+(const RMatrix& o) const {
  RMatrix m = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
  return m;
}

RMatrix RMatrix::operator-(const RMatrix& o) const {
  RMatrix m = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
  return m;
}

RMatrix RMatrix::transpose() const {
  RMatrix m(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

namespace {

// Row echelon form in place; returns pivot columns. `aug` rows follow the same operations.
std::vector<std::size_t> eliminate(RMatrix& m, RMatrix* aug, bool reduced) {
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
      if (aug)
        for (std::size_t j = 0; j < aug->cols(); ++j) std::swap((*aug)(sel, j), (*aug)(row, j));
    }
    const Rational inv = 1 / m(row, col);
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    if (aug)
      for (std::size_t j = 0; j < aug->cols(); ++j) (*aug)(row, j) *= inv;
    for (std::size_t i = reduced ? 0 : row + 1; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
      if (aug)
        for (std::size_t j = 0; j < aug->cols(); ++j) (*aug)(i, j) -= f * (*aug)(row, j);
    }
    piv.push_back(col);
    ++row;
  }
  return piv;
}

}  // namespace

RMatrix RMatrix::inverse() const {
  if (r_ != c_) fail(ErrorKind::InvalidArgument, "inverse of a non-square matrix");
  RMatrix m = *this, inv = identity(r_);
  if (eliminate(m, &inv, true).size() != r_) fail(ErrorKind::InvalidArgument, "matrix is singular");
  return inv;
}

Rational RMatrix::det() const {
  if (r_ != c_) fail(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
  RMatrix m = *this;
  Rational d = 1;
  for (std::size_t col = 0; col < c_; ++col) {
    std::size_t sel = col;
    while (sel < r_ && m(sel, col) == 0) ++sel;
    if (sel == r_) return 0;
    if (sel != col) {
      for (std::size_t j = 0; j < c_; ++j) std::swap(m(sel, j), m(col, j));
      d = -d;
    }
    d *= m(col, col);
    for (std::size_t i = col + 1; i < r_; ++i) {
      if (m(i, col) == 0) continue;
      const Rational f = m(i, col) / m(col, col);
      for (std::size_t j = col; j < c_; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return d;
}

std::size_t RMatrix::rank() const {
  RMatrix m = *this;
  return eliminate(m, nullptr, false).size();
}

RMatrix RMatrix::kernel() const {
  RMatrix m = *this;
  const auto piv = eliminate(m, nullptr, true);
  std::vector<char> is_piv(c_, 0);
  for (auto p : piv) is_piv[p] = 1;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < c_; ++j)
    if (!is_piv[j]) free.push_back(j);
  RMatrix k(c_, free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) k(piv[i], f) = -m(i, free[f]);
  }
  return k;
}

RPoly RMatrix::charpoly() const {
  if (r_ != c_) fail(ErrorKind::InvalidArgument, "characteristic polynomial of a non-square matrix");
  const std::size_t n = r_;
  RMatrix H = *this;
  // similarity to upper Hessenberg form
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && H(i, m - 1) == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      for (std::size_t j = 0; j < n; ++j) std::swap(H(i, j), H(m, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(H(j, i), H(j, m));
    }
    for (std::size_t j = m + 1; j < n; ++j) {
      if (H(j, m - 1) == 0) continue;
      const Rational u = H(j, m - 1) / H(m, m - 1);
      for (std::size_t k = 0; k < n; ++k) H(j, k) -= u * H(m, k);
      for (std::size_t k = 0; k < n; ++k) H(k, m) += u * H(k, j);
    }
  }
  // p_k = det(x - H[0..k, 0..k])
  std::vector<RPoly> p(n + 1);
  p[0] = {1};
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t m = k - 1;
    RPoly cur(k + 1, 0);
    for (std::size_t d = 0; d < p[m].size(); ++d) {
      cur[d + 1] += p[m][d];
      cur[d] -= H(m, m) * p[m][d];
    }
    Rational prod = 1;
    for (std::size_t i = m; i-- > 0;) {
      prod *= H(i + 1, i);
      if (prod == 0) break;
      const Rational c = H(i, m) * prod;
      for (std::size_t d = 0; d < p[i].size(); ++d) cur[d] -= c * p[i][d];
    }
    p[k] = std::move(cur);
  }
  return p[n];
}

RMatrix RMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  RMatrix m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void RMatrix::set_block(std::size_t r0, std::size_t c0, const RMatrix& b) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

bool RMatrix::is_symmetric() const {
  if (r_ != c_) return false;
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

RPoly rpoly_trim(RPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

std::pair<RPoly, RPoly> rpoly_divmod(RPoly a, const RPoly& b0) {
  const RPoly b = rpoly_trim(b0);
  if (b.empty()) fail(ErrorKind::InvalidArgument, "polynomial division by zero");
  a = rpoly_trim(std::move(a));
  if (a.size() < b.size()) return {{}, a};
  RPoly q(a.size() - b.size() + 1, 0);
  while (!a.empty() && a.size() >= b.size()) {
    const Rational c = a.back() / b.back();
    const std::size_t sh = a.size() - b.size();
    q[sh] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[sh + i] -= c * b[i];
    a.pop_back();
    a = rpoly_trim(std::move(a));
  }
  return {rpoly_trim(q), a};
}

}  // namespace ffec
