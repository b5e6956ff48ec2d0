#include "formmatrix.hpp"

#include <stdexcept>

namespace heatindex {

FormMatrix::FormMatrix(int size, int generator_count) : size_(size), n_(generator_count) {
  if (size < 0) throw std::invalid_argument("FormMatrix size must be nonnegative");
  entries_.assign(static_cast<size_t>(size) * size, MultiVector(generator_count));
}

int FormMatrix::idx(int i, int j) const {
  if (i < 0 || i >= size_ || j < 0 || j >= size_)
    throw std::out_of_range("FormMatrix index out of range");
  return i * size_ + j;
}

MultiVector FormMatrix::trace() const {
  MultiVector t(n_);
  for (int i = 0; i < size_; ++i) t += at(i, i);
  return t;
}

bool FormMatrix::is_antisymmetric(double tol) const {
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j <= i; ++j) {
      MultiVector s = at(i, j);
      s += at(j, i);
      if (s.max_abs() > tol) return false;
    }
  return true;
}

bool FormMatrix::has_nilpotent_even_entries(double tol) const {
  for (const MultiVector& e : entries_) {
    if (std::abs(e.coefficient(0)) > tol) return false;
    for (int d = 1; d <= n_; d += 2)
      if (e.degree_part(d).max_abs() > tol) return false;
  }
  return true;
}

FormMatrix& FormMatrix::operator+=(const FormMatrix& rhs) {
  if (rhs.size_ != size_ || rhs.n_ != n_)
    throw std::invalid_argument("FormMatrix shape mismatch in +");
  for (size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
  return *this;
}

FormMatrix& FormMatrix::operator*=(Complex s) {
  for (MultiVector& e : entries_) e *= s;
  return *this;
}

FormMatrix operator*(const FormMatrix& a, const FormMatrix& b) {
  if (a.size_ != b.size_ || a.n_ != b.n_)
    throw std::invalid_argument("FormMatrix shape mismatch in *");
  FormMatrix out(a.size_, a.n_);
  for (int i = 0; i < a.size_; ++i)
    for (int j = 0; j < a.size_; ++j) {
      MultiVector acc(a.n_);
      for (int k = 0; k < a.size_; ++k) acc += wedge(a.at(i, k), b.at(k, j));
      out.at(i, j) = acc;
    }
  return out;
}

FormMatrix FormMatrix::identity(int size, int generator_count) {
  FormMatrix out(size, generator_count);
  for (int i = 0; i < size; ++i) out.at(i, i) = MultiVector::scalar(generator_count, 1.0);
  return out;
}

FormMatrix FormMatrix::curvature_block(const MultiVector& theta) {
  FormMatrix out(2, theta.generator_count());
  out.at(0, 1) = theta;
  out.at(1, 0) = theta * Complex(-1.0);
  return out;
}

namespace {

// log(I + N) for N with entries of degree >= 2: the series terminates.
FormMatrix log_one_plus(const FormMatrix& nil) {
  const int m = nil.size();
  const int n = nil.generator_count();
  FormMatrix acc(m, n);
  FormMatrix power = FormMatrix::identity(m, n);
  double sign = 1.0;
  for (int k = 1; 2 * k <= n + 1; ++k) {  // entries have degree >= 2, N^k >= 2k
    power = power * nil;
    bool all_zero = true;
    for (int i = 0; i < m && all_zero; ++i)
      for (int j = 0; j < m && all_zero; ++j)
        if (!power.at(i, j).is_zero()) all_zero = false;
    if (all_zero) break;
    acc += power * Complex(sign / k);
    sign = -sign;
  }
  return acc;
}

}  // namespace

MultiVector a_hat(const FormMatrix& R) {
  if (!R.has_nilpotent_even_entries(1e-14))
    throw std::invalid_argument("a_hat requires nilpotent entries of purely even degree");
  if (!R.is_antisymmetric())
    throw std::invalid_argument("a_hat requires an antisymmetric curvature matrix");
  const int n = R.generator_count();
  if (R.size() == 0) return MultiVector::scalar(n, 1.0);

  // (x/2)/sinh(x/2) = 1 - x^2/24 + 7 x^4/5760 - 31 x^6/967680 + ... evaluated
  // on the skew parameter, i.e. as a series in s = -R^2 (entries degree >= 4).
  static constexpr double kSeries[] = {-1.0 / 24.0, 7.0 / 5760.0, -31.0 / 967680.0};
  FormMatrix s = R * R;
  s *= Complex(-1.0);

  FormMatrix g(R.size(), n);
  FormMatrix power = FormMatrix::identity(R.size(), n);
  for (int k = 1; 4 * k <= n; ++k) {
    power = power * s;
    g += power * Complex(kSeries[k - 1]);
  }
  MultiVector half_tr_log = log_one_plus(g).trace() * Complex(0.5);
  return exterior_exp(half_tr_log);
}

MultiVector chern_character(const FormMatrix& F) {
  if (!F.has_nilpotent_even_entries(1e-14))
    throw std::invalid_argument(
        "chern_character requires nilpotent entries of purely even degree");
  const int m = F.size();
  const int n = F.generator_count();
  FormMatrix acc = FormMatrix::identity(m, n);
  FormMatrix power = FormMatrix::identity(m, n);
  double factorial = 1.0;
  double sign = -1.0;
  for (int k = 1; 2 * k <= n; ++k) {
    power = power * F;
    factorial *= k;
    acc += power * Complex(sign / factorial);
    sign = -sign;
  }
  return acc.trace();
}

}  // namespace heatindex
