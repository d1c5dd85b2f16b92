#include "hartman/group_shape.hpp"

#include <cmath>
#include <stdexcept>

namespace hartman {

std::int64_t GroupShape::finite_size() const {
  std::int64_t size = 1;
  for (auto n : finite_orders) size *= n;
  return size;
}

std::vector<std::int64_t> GroupShape::unflatten(std::int64_t index) const {
  std::vector<std::int64_t> out(finite_orders.size(), 0);
  for (std::size_t i = finite_orders.size(); i-- > 0;) {
    out[i] = index % finite_orders[i];
    index /= finite_orders[i];
  }
  return out;
}

std::int64_t GroupShape::flatten(std::span<const std::int64_t> residues) const {
  if (residues.size() != finite_orders.size()) {
    throw std::invalid_argument("finite coordinate count does not match the group");
  }
  std::int64_t index = 0;
  for (std::size_t i = 0; i < finite_orders.size(); ++i) {
    std::int64_t r = residues[i] % finite_orders[i];
    if (r < 0) r += finite_orders[i];
    index = index * finite_orders[i] + r;
  }
  return index;
}

std::int64_t GroupShape::combine(std::int64_t a, std::int64_t b, int sign) const {
  auto ra = unflatten(a);
  auto rb = unflatten(b);
  for (std::size_t i = 0; i < ra.size(); ++i) ra[i] += sign * rb[i];
  return flatten(ra);
}

void GroupShape::validate() const {
  if (torus_rank < 0) throw std::invalid_argument("negative torus rank");
  for (auto n : finite_orders) {
    if (n < 1) throw std::invalid_argument("finite factor orders must be positive");
  }
}

Point ExactPoint::approximate() const {
  Point p;
  p.torus.reserve(torus.size());
  for (const auto& t : torus) p.torus.push_back(to_double(t));
  p.finite = finite;
  return p;
}

bool ExactPoint::is_zero() const {
  for (const auto& t : torus) {
    if (t != 0) return false;
  }
  for (auto z : finite) {
    if (z != 0) return false;
  }
  return true;
}

ExactPoint zero_point(const GroupShape& shape) {
  ExactPoint p;
  p.torus.assign(static_cast<std::size_t>(shape.torus_rank), Rational(0));
  p.finite.assign(shape.finite_orders.size(), 0);
  return p;
}

ExactPoint add(const GroupShape& shape, const ExactPoint& a, const ExactPoint& b) {
  ExactPoint out;
  for (std::size_t j = 0; j < a.torus.size(); ++j) out.torus.push_back(frac(a.torus[j] + b.torus[j]));
  for (std::size_t i = 0; i < a.finite.size(); ++i) {
    out.finite.push_back((a.finite[i] + b.finite[i]) % shape.finite_orders[i]);
  }
  return out;
}

ExactPoint negate(const GroupShape& shape, const ExactPoint& a) {
  ExactPoint out;
  for (const auto& t : a.torus) out.torus.push_back(frac(-t));
  for (std::size_t i = 0; i < a.finite.size(); ++i) {
    out.finite.push_back((shape.finite_orders[i] - a.finite[i]) % shape.finite_orders[i]);
  }
  return out;
}

bool exact_point_less(const ExactPoint& a, const ExactPoint& b) {
  if (a.finite != b.finite) return a.finite < b.finite;
  for (std::size_t j = 0; j < a.torus.size(); ++j) {
    if (a.torus[j] != b.torus[j]) return a.torus[j] < b.torus[j];
  }
  return false;
}

bool Frequency::is_zero() const {
  for (auto m : torus) {
    if (m != 0) return false;
  }
  for (auto t : finite) {
    if (t != 0) return false;
  }
  return true;
}

double pairing(const GroupShape& shape, const Frequency& freq, const Point& x) {
  long double phase = 0.0L;
  for (std::size_t j = 0; j < freq.torus.size(); ++j) {
    phase += static_cast<long double>(freq.torus[j]) * x.torus[j];
  }
  for (std::size_t i = 0; i < freq.finite.size(); ++i) {
    std::int64_t n = shape.finite_orders[i];
    std::int64_t r = (freq.finite[i] * x.finite[i]) % n;
    phase += static_cast<long double>(r) / static_cast<long double>(n);
  }
  return static_cast<double>(phase - std::floor(phase));
}

}  // namespace hartman
