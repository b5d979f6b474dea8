#include "skewlab/trig_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace skewlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCancel = 16.0 * std::numeric_limits<double>::epsilon();

bool is_positive_half(const Frequency& k) {
  for (auto v : k) {
    if (v > 0) return true;
    if (v < 0) return false;
  }
  return false;
}

double flush(double sum, double scale) { return std::abs(sum) <= kCancel * scale ? 0.0 : sum; }

}  // namespace

Frequency make_frequency(std::initializer_list<std::int64_t> k) {
  if (k.size() > kMaxDim) throw std::invalid_argument("frequency has too many components");
  Frequency f{};
  std::copy(k.begin(), k.end(), f.begin());
  return f;
}

Frequency negate(const Frequency& k) {
  Frequency r{};
  for (std::size_t i = 0; i < kMaxDim; ++i) r[i] = -k[i];
  return r;
}

TrigField::TrigField(std::size_t dim) : dim_(dim) {
  if (dim == 0 || dim > kMaxDim) throw std::invalid_argument("TrigField: dimension must be in [1, kMaxDim]");
}

TrigField TrigField::constant(std::size_t dim, double value) {
  TrigField f(dim);
  f.add_coefficient(Frequency{}, value);
  return f;
}

TrigField TrigField::harmonic(std::size_t dim, const Frequency& k, double cos_coef, double sin_coef) {
  TrigField f(dim);
  f.add_harmonic(k, cos_coef, sin_coef);
  return f;
}

TrigField& TrigField::add_harmonic(const Frequency& k, double cos_coef, double sin_coef) {
  for (std::size_t i = dim_; i < kMaxDim; ++i)
    if (k[i] != 0) throw std::invalid_argument("TrigField: frequency has more components than the field dimension");
  if (k == Frequency{}) return add_coefficient(k, cos_coef);
  // c cos(t) + s sin(t) = (c - i s)/2 e^{it} + (c + i s)/2 e^{-it}
  return add_coefficient(k, {0.5 * cos_coef, -0.5 * sin_coef});
}

TrigField& TrigField::add_coefficient(const Frequency& k, std::complex<double> c) {
  if (k == Frequency{}) {
    accumulate(k, {c.real(), 0.0});
  } else {
    accumulate(k, c);
    accumulate(negate(k), std::conj(c));
  }
  return *this;
}

void TrigField::accumulate(const Frequency& k, std::complex<double> c, double scale) {
  if (c == std::complex<double>{}) return;
  auto [it, inserted] = coef_.try_emplace(k, c);
  if (inserted) {
    scale_[k] = std::max(scale, std::abs(c));
    return;
  }
  double& sc = scale_[k];
  sc += std::max(scale, std::abs(c));
  const auto old = it->second;
  const double re = flush(old.real() + c.real(), sc);
  const double im = flush(old.imag() + c.imag(), sc);
  if (re == 0.0 && im == 0.0) {
    coef_.erase(it);
    scale_.erase(k);
  } else {
    it->second = {re, im};
  }
}

double TrigField::scale_of(const Frequency& k) const {
  auto it = scale_.find(k);
  return it == scale_.end() ? std::abs(coefficient(k)) : it->second;
}

std::complex<double> TrigField::coefficient(const Frequency& k) const {
  auto it = coef_.find(k);
  return it == coef_.end() ? std::complex<double>{} : it->second;
}

bool TrigField::is_constant() const {
  return coef_.empty() || (coef_.size() == 1 && coef_.begin()->first == Frequency{});
}

double TrigField::l1_norm() const {
  double s = 0.0;
  for (const auto& [k, c] : coef_) s += std::abs(c);
  return s;
}

std::int64_t TrigField::support_radius() const {
  std::int64_t r = 0;
  for (const auto& [k, c] : coef_)
    for (auto v : k) r = std::max<std::int64_t>(r, v < 0 ? -v : v);
  return r;
}

double TrigField::operator()(std::span<const double> x) const {
  if (x.size() < dim_) throw std::invalid_argument("TrigField: evaluation point has too few coordinates");
  double sum = 0.0;
  for (const auto& [k, c] : coef_) {
    if (k == Frequency{}) {
      sum += c.real();
      continue;
    }
    if (!is_positive_half(k)) continue;
    // Reduce the phase in extended precision; frequencies can be large.
    long double phase = 0.0L;
    for (std::size_t i = 0; i < dim_; ++i) phase += static_cast<long double>(k[i]) * static_cast<long double>(x[i]);
    phase -= std::floor(phase);
    const double theta = kTwoPi * static_cast<double>(phase);
    sum += 2.0 * (c.real() * std::cos(theta) - c.imag() * std::sin(theta));
  }
  return sum;
}

TrigField TrigField::derivative(std::size_t axis) const {
  if (axis >= dim_) throw std::out_of_range("TrigField::derivative: axis out of range");
  TrigField d(dim_);
  for (const auto& [k, c] : coef_) {
    if (k[axis] == 0) continue;
    const double s = kTwoPi * static_cast<double>(k[axis]);
    d.coef_.emplace(k, std::complex<double>{-c.imag() * s, c.real() * s});
    d.scale_.emplace(k, scale_of(k) * std::abs(s));
  }
  return d;
}

TrigField TrigField::directional_derivative(std::span<const double> v) const {
  if (v.size() != dim_) throw std::invalid_argument("TrigField::directional_derivative: direction has wrong dimension");
  TrigField d(dim_);
  for (const auto& [k, c] : coef_) {
    double kv = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) kv += static_cast<double>(k[i]) * v[i];
    const double s = kTwoPi * kv;
    if (s == 0.0) continue;
    d.coef_.emplace(k, std::complex<double>{-c.imag() * s, c.real() * s});
    d.scale_.emplace(k, scale_of(k) * std::abs(s));
  }
  return d;
}

TrigField TrigField::compose_linear(const IntMatrix& m) const {
  const std::size_t n = m.size();
  if (n > dim_) throw std::invalid_argument("TrigField::compose_linear: matrix larger than field dimension");
  TrigField out(dim_);
  for (const auto& [k, c] : coef_) {
    Frequency kk = k;
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < n; ++i) s = checked_add(s, checked_mul(m(i, j), k[i]));
      kk[j] = s;
    }
    out.accumulate(kk, c, scale_of(k));
  }
  out.symmetrize();
  return out;
}

TrigField TrigField::extended(std::size_t new_dim) const {
  if (new_dim < dim_) throw std::invalid_argument("TrigField::extended: cannot shrink");
  TrigField out(new_dim);
  out.coef_ = coef_;
  out.scale_ = scale_;
  return out;
}

TrigField TrigField::restricted(std::size_t new_dim) const {
  if (new_dim > dim_) throw std::invalid_argument("TrigField::restricted: cannot grow");
  for (std::size_t a = new_dim; a < dim_; ++a)
    if (depends_on(a)) throw std::invalid_argument("TrigField::restricted: field depends on a dropped coordinate");
  TrigField out(new_dim);
  out.coef_ = coef_;
  out.scale_ = scale_;
  return out;
}

bool TrigField::depends_on(std::size_t axis) const {
  return std::any_of(coef_.begin(), coef_.end(), [axis](const auto& kv) { return kv.first[axis] != 0; });
}

double TrigField::prune(double tol) {
  double removed = 0.0;
  for (auto it = coef_.begin(); it != coef_.end();) {
    if (std::abs(it->second) <= tol) {
      removed += std::abs(it->second);
      scale_.erase(it->first);
      it = coef_.erase(it);
    } else {
      ++it;
    }
  }
  return removed;
}

TrigField& TrigField::operator+=(const TrigField& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("TrigField: dimension mismatch");
  for (const auto& [k, c] : o.coef_) accumulate(k, c, o.scale_of(k));
  return *this;
}

TrigField& TrigField::operator-=(const TrigField& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("TrigField: dimension mismatch");
  for (const auto& [k, c] : o.coef_) accumulate(k, -c, o.scale_of(k));
  return *this;
}

TrigField& TrigField::operator*=(double s) {
  if (s == 0.0) {
    coef_.clear();
    scale_.clear();
    return *this;
  }
  for (auto& [k, c] : coef_) c *= s;
  for (auto& [k, v] : scale_) v *= std::abs(s);
  return *this;
}

TrigField TrigField::operator-() const {
  TrigField r = *this;
  for (auto& [k, c] : r.coef_) c = -c;
  return r;
}

TrigField operator*(const TrigField& a, const TrigField& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("TrigField: dimension mismatch");
  TrigField p(a.dim_);
  for (const auto& [ka, ca] : a.coef_)
    for (const auto& [kb, cb] : b.coef_) {
      Frequency k{};
      for (std::size_t i = 0; i < kMaxDim; ++i) k[i] = checked_add(ka[i], kb[i]);
      p.accumulate(k, ca * cb, a.scale_of(ka) * b.scale_of(kb));
    }
  p.symmetrize();
  return p;
}

void TrigField::symmetrize() {
  for (auto it = coef_.begin(); it != coef_.end();) {
    const Frequency& k = it->first;
    if (k == Frequency{}) {
      it->second = {it->second.real(), 0.0};
      ++it;
    } else if (is_positive_half(k)) {
      const Frequency nk = negate(k);
      coef_[nk] = std::conj(it->second);
      scale_[nk] = scale_of(k);
      ++it;
    } else if (!coef_.contains(negate(k))) {
      scale_.erase(k);
      it = coef_.erase(it);
    } else {
      ++it;
    }
  }
}

double coefficient_distance(const TrigField& a, const TrigField& b) {
  double d = 0.0;
  for (const auto& [k, c] : a.coef_) d = std::max(d, std::abs(c - b.coefficient(k)));
  for (const auto& [k, c] : b.coef_)
    if (!a.coef_.contains(k)) d = std::max(d, std::abs(c));
  return d;
}

}  // namespace skewlab
