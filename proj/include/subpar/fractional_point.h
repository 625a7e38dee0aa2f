// Copyright 2026 The subpar Authors.
//
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

#ifndef SUBPAR_FRACTIONAL_POINT_H_
#define SUBPAR_FRACTIONAL_POINT_H_

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "subpar/error.h"
#include "subpar/subset.h"

namespace subpar {

// Coordinates within this distance of [0, 1] are clamped; anything further
// out is rejected.
inline constexpr double kBoxClampTolerance = 1e-12;

// A point of the unit cube [0,1]^N.
class FractionalPoint {
 public:
  FractionalPoint() = default;
  explicit FractionalPoint(std::vector<double> coords)
      : coords_(std::move(coords)) {
    for (std::size_t u = 0; u < coords_.size(); ++u) {
      double& c = coords_[u];
      if (!std::isfinite(c) || c < -kBoxClampTolerance ||
          c > 1.0 + kBoxClampTolerance) {
        throw Error(ErrorCode::kOutOfBox,
                    "coordinate " + std::to_string(u) + " = " +
                        std::to_string(c) + " outside [0, 1]");
      }
      if (c < 0.0) c = 0.0;
      if (c > 1.0) c = 1.0;
    }
  }

  static FractionalPoint Constant(int n, double value) {
    return FractionalPoint(std::vector<double>(static_cast<std::size_t>(n), value));
  }

  static FractionalPoint Indicator(const Subset& s) {
    std::vector<double> coords(static_cast<std::size_t>(s.n()), 0.0);
    for (ElementId u : s.Members()) coords[u] = 1.0;
    return FractionalPoint(std::move(coords));
  }

  int n() const { return static_cast<int>(coords_.size()); }
  double operator[](std::size_t u) const { return coords_[u]; }
  std::span<const double> coords() const { return coords_; }
  const std::vector<double>& vector() const { return coords_; }

  // x v 1_{u}: coordinate u raised to 1.
  FractionalPoint JoinElement(ElementId u) const {
    FractionalPoint p = *this;
    p.coords_.at(static_cast<std::size_t>(u)) = 1.0;
    return p;
  }

  // x ^ 1_{N-u}: coordinate u lowered to 0.
  FractionalPoint MeetComplement(ElementId u) const {
    FractionalPoint p = *this;
    p.coords_.at(static_cast<std::size_t>(u)) = 0.0;
    return p;
  }

  bool LessEq(const FractionalPoint& other) const {
    for (std::size_t u = 0; u < coords_.size(); ++u) {
      if (coords_[u] > other.coords_[u]) return false;
    }
    return true;
  }

  friend bool operator==(const FractionalPoint&, const FractionalPoint&) = default;

 private:
  std::vector<double> coords_;
};

}  // namespace subpar

#endif  // SUBPAR_FRACTIONAL_POINT_H_
