#include "skewlab/skew_product.hpp"

#include <stdexcept>

namespace skewlab {

SkewProduct::SkewProduct(ToralAutomorphism base, TrigField gamma)
    : base_(std::move(base)), gamma_(std::move(gamma)), dgamma_{TrigField(2), TrigField(2)} {
  if (base_.dim() != 2) throw std::invalid_argument("SkewProduct: base must be an automorphism of T^2");
  if (gamma_.dim() != 2) throw std::invalid_argument("SkewProduct: gamma must be a field on T^2");
  dgamma_ = {gamma_.derivative(0), gamma_.derivative(1)};
}

Point3 SkewProduct::apply(const Point3& p) const {
  const TorusPoint x{p[0], p[1]};
  const TorusPoint fx = base_.apply(x);
  return {fx[0], fx[1], wrap_unit(p[2] + gamma_(x))};
}

Matrix3 SkewProduct::jacobian(const Point3& p) const {
  const auto& a = base_.matrix();
  const std::array<double, 2> xy{p[0], p[1]};
  Matrix3 j{};
  j[0] = {static_cast<double>(a(0, 0)), static_cast<double>(a(0, 1)), 0.0};
  j[1] = {static_cast<double>(a(1, 0)), static_cast<double>(a(1, 1)), 0.0};
  j[2] = {dgamma_[0](xy), dgamma_[1](xy), 1.0};
  return j;
}

}  // namespace skewlab
