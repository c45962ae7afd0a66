#pragma once

// Dense exact linear algebra over Q.

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace ffec {

using Rational = boost::multiprecision::cpp_rational;
using RPoly = std::vector<Rational>;  // lowest degree first

class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, 0) {}
  static RMatrix identity(std::size_t n);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  RMatrix operator*(const RMatrix& o) const;
  RMatrix operator+(const RMatrix& o) const;
  RMatrix operator-(const RMatrix& o) const;
  RMatrix transpose() const;
  /// Throws InvalidArgument when singular.
  RMatrix inverse() const;
  Rational det() const;
  std::size_t rank() const;
  /// Basis of the right kernel, one vector per column of the result.
  RMatrix kernel() const;
  /// det(x I - A), monic, via Hessenberg reduction.
  RPoly charpoly() const;
  /// Submatrix [r0, r0+nr) x [c0, c0+nc).
  RMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const RMatrix& b);
  bool is_symmetric() const;

  friend bool operator==(const RMatrix& x, const RMatrix& y) { return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_; }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Rational> a_;
};

RPoly rpoly_trim(RPoly a);
/// Quotient and remainder over Q.
std::pair<RPoly, RPoly> rpoly_divmod(RPoly a, const RPoly& b);

}  // namespace ffec
