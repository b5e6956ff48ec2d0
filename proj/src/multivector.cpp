#include "multivector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace heatindex {

namespace {
void check_generator_count(int n) {
  if (n < 2 || n > 8 || n % 2 != 0)
    throw std::invalid_argument("generator_count must be even and in [2,8], got " +
                                std::to_string(n));
}
}  // namespace

MultiVector::MultiVector(int generator_count) : n_(generator_count) {
  check_generator_count(n_);
}

MultiVector MultiVector::scalar(int generator_count, Complex value) {
  MultiVector m(generator_count);
  if (value != Complex(0.0)) m.coeff_[0] = value;
  return m;
}

MultiVector MultiVector::basis(int generator_count, std::initializer_list<int> indices) {
  MultiVector m(generator_count);
  std::uint32_t mask = 0;
  int prev = 0;
  for (int i : indices) {
    if (i <= prev || i > generator_count)
      throw std::invalid_argument("basis indices must be strictly increasing in 1..n");
    mask |= 1u << (i - 1);
    prev = i;
  }
  m.coeff_[mask] = Complex(1.0);
  return m;
}

MultiVector MultiVector::from_mask(int generator_count, std::uint32_t mask, Complex value) {
  MultiVector m(generator_count);
  if (mask > m.top_mask()) throw std::invalid_argument("mask exceeds generator range");
  if (value != Complex(0.0)) m.coeff_[mask] = value;
  return m;
}

Complex MultiVector::coefficient(std::uint32_t mask) const {
  auto it = coeff_.find(mask);
  return it == coeff_.end() ? Complex(0.0) : it->second;
}

void MultiVector::set_coefficient(std::uint32_t mask, Complex value) {
  if (mask > top_mask()) throw std::invalid_argument("mask exceeds generator range");
  if (value == Complex(0.0))
    coeff_.erase(mask);
  else
    coeff_[mask] = value;
}

MultiVector MultiVector::degree_part(int degree) const {
  if (degree < 0 || degree > n_)
    throw std::out_of_range("degree must be in [0, generator_count]");
  MultiVector out(n_);
  for (const auto& [mask, c] : coeff_)
    if (std::popcount(mask) == degree) out.coeff_[mask] = c;
  return out;
}

bool MultiVector::is_homogeneous(int* degree_out) const {
  int deg = -1;
  for (const auto& [mask, c] : coeff_) {
    if (c == Complex(0.0)) continue;
    int d = std::popcount(mask);
    if (deg == -1)
      deg = d;
    else if (d != deg)
      return false;
  }
  if (degree_out) *degree_out = (deg == -1 ? 0 : deg);
  return true;
}

double MultiVector::max_abs() const {
  double m = 0.0;
  for (const auto& [mask, c] : coeff_) m = std::max(m, std::abs(c));
  return m;
}

MultiVector& MultiVector::prune(double tol) {
  for (auto it = coeff_.begin(); it != coeff_.end();) {
    if (std::abs(it->second) <= tol)
      it = coeff_.erase(it);
    else
      ++it;
  }
  return *this;
}

MultiVector& MultiVector::operator+=(const MultiVector& rhs) {
  if (rhs.n_ != n_) throw std::invalid_argument("generator_count mismatch in +");
  for (const auto& [mask, c] : rhs.coeff_) coeff_[mask] += c;
  return prune(0.0);
}

MultiVector& MultiVector::operator-=(const MultiVector& rhs) {
  if (rhs.n_ != n_) throw std::invalid_argument("generator_count mismatch in -");
  for (const auto& [mask, c] : rhs.coeff_) coeff_[mask] -= c;
  return prune(0.0);
}

MultiVector& MultiVector::operator*=(Complex s) {
  if (s == Complex(0.0)) {
    coeff_.clear();
    return *this;
  }
  for (auto& [mask, c] : coeff_) c *= s;
  return *this;
}

int wedge_sign(std::uint32_t a, std::uint32_t b) {
  if ((a & b) != 0) return 0;
  // Count transpositions needed to merge: pairs (i in a, j in b) with j < i.
  int inversions = 0;
  for (std::uint32_t rest = a; rest != 0; rest &= rest - 1) {
    std::uint32_t low = rest & ~(rest - 1);           // lowest set bit of a
    inversions += std::popcount(b & (low - 1));
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

MultiVector wedge(const MultiVector& a, const MultiVector& b) {
  if (a.generator_count() != b.generator_count())
    throw std::invalid_argument("generator_count mismatch in wedge");
  MultiVector out(a.generator_count());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      out.set_coefficient(ma | mb,
                          out.coefficient(ma | mb) + static_cast<double>(s) * ca * cb);
    }
  }
  return out.prune(0.0);
}

MultiVector exterior_exp(const MultiVector& a) {
  if (std::abs(a.coefficient(0)) != 0.0)
    throw std::invalid_argument("exterior_exp requires a nilpotent (no degree-0) argument");
  const int n = a.generator_count();
  MultiVector result = MultiVector::scalar(n, 1.0);
  MultiVector power = MultiVector::scalar(n, 1.0);
  double factorial = 1.0;
  for (int k = 1; k <= n; ++k) {  // a^k vanishes once k exceeds n (min degree 1)
    power = wedge(power, a);
    if (power.is_zero()) break;
    factorial *= k;
    result += power * Complex(1.0 / factorial);
  }
  return result;
}

double distance(const MultiVector& a, const MultiVector& b) {
  MultiVector d = a;
  d -= b;
  return d.max_abs();
}

}  // namespace heatindex
