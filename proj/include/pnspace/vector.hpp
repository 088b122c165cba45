// Copyright 2026 The pnspace Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "pnspace/common.hpp"

namespace pnspace {

/// A point of a finite-dimensional real vector space.
class VectorPoint {
 public:
  VectorPoint() = default;
  explicit VectorPoint(std::vector<double> coords) : c_(std::move(coords)) {
    for (double v : c_)
      if (!std::isfinite(v)) throw DomainError("vector entries must be finite");
  }
  VectorPoint(std::initializer_list<double> coords)
      : VectorPoint(std::vector<double>(coords)) {}

  static VectorPoint zero(std::size_t dim) {
    return VectorPoint(std::vector<double>(dim, 0.0));
  }
  /// The i-th standard basis vector.
  static VectorPoint basis(std::size_t dim, std::size_t i) {
    std::vector<double> c(dim, 0.0);
    c.at(i) = 1.0;
    return VectorPoint(std::move(c));
  }

  std::size_t dim() const { return c_.size(); }
  const std::vector<double>& coords() const { return c_; }
  double operator[](std::size_t i) const { return c_[i]; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](double v) { return v == 0.0; });
  }

  friend VectorPoint operator+(const VectorPoint& a, const VectorPoint& b) {
    check_same(a, b);
    std::vector<double> out(a.c_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.c_[i];
    return VectorPoint(std::move(out));
  }
  friend VectorPoint operator-(const VectorPoint& a, const VectorPoint& b) {
    check_same(a, b);
    std::vector<double> out(a.c_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.c_[i];
    return VectorPoint(std::move(out));
  }
  friend VectorPoint operator*(double s, const VectorPoint& a) {
    std::vector<double> out(a.c_);
    for (double& v : out) v *= s;
    return VectorPoint(std::move(out));
  }
  VectorPoint operator-() const { return -1.0 * *this; }
  friend bool operator==(const VectorPoint&, const VectorPoint&) = default;

  std::string str() const {
    std::ostringstream os;
    os.precision(10);
    os << '(';
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : "") << c_[i];
    os << ')';
    return os.str();
  }

 private:
  static void check_same(const VectorPoint& a, const VectorPoint& b) {
    if (a.dim() != b.dim()) throw DomainError("dimension mismatch");
  }
  std::vector<double> c_;
};

enum class NormKind { euclidean, sup, one };

inline const char* to_string(NormKind k) {
  switch (k) {
    case NormKind::euclidean: return "euclidean";
    case NormKind::sup: return "sup";
    case NormKind::one: return "one";
  }
  return "?";
}

inline NormKind norm_from_string(const std::string& s) {
  if (s == "euclidean") return NormKind::euclidean;
  if (s == "sup") return NormKind::sup;
  if (s == "one") return NormKind::one;
  throw ConstructionError("unknown norm '" + s + "'");
}

/// ℝⁿ with one of the classical norms.
struct NormedCarrier {
  std::size_t dim = 2;
  NormKind kind = NormKind::euclidean;

  NormedCarrier() = default;
  NormedCarrier(std::size_t d, NormKind k) : dim(d), kind(k) {
    if (d == 0) throw ConstructionError("carrier dimension must be >= 1");
  }

  double norm(const VectorPoint& p) const {
    if (p.dim() != dim)
      throw DomainError(detail::concat("dimension mismatch: expected ", dim,
                                       ", got ", p.dim()));
    double acc = 0.0;
    switch (kind) {
      case NormKind::euclidean:
        for (double v : p.coords()) acc = std::hypot(acc, v);
        return acc;
      case NormKind::sup:
        for (double v : p.coords()) acc = std::max(acc, std::abs(v));
        return acc;
      case NormKind::one:
        for (double v : p.coords()) acc += std::abs(v);
        return acc;
    }
    return acc;
  }

  VectorPoint zero() const { return VectorPoint::zero(dim); }
};

}  // namespace pnspace
