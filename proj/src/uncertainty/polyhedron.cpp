// Copyright 2026 The robnet Authors
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

#include "robnet/uncertainty/polyhedron.hpp"

#include <cmath>
#include <string>

#include "robnet/error.hpp"

namespace robnet::uncertainty {

Polyhedron Polyhedron::box(std::vector<double> lower, std::vector<double> upper) {
  Polyhedron p;
  p.lower = std::move(lower);
  p.upper = std::move(upper);
  return p;
}

Polyhedron Polyhedron::prefix(std::size_t m) const {
  if (m > num_rows())
    throw ValidationError("polyhedron prefix " + std::to_string(m) + " exceeds " +
                          std::to_string(num_rows()) + " rows");
  Polyhedron p = box(lower, upper);
  p.witness = witness;
  for (std::size_t i = 0; i < m; ++i) p.append_row(v.row(i), b[i], info[i]);
  return p;
}

void Polyhedron::append_row(std::span<const double> normal, double offset, HyperplaneInfo meta) {
  if (normal.size() != kappa())
    throw ValidationError("hyperplane dimension does not match polyhedron");
  v.append_row(normal);
  b.push_back(offset);
  info.push_back(meta);
}

void Polyhedron::validate() const {
  const std::size_t k = kappa();
  if (upper.size() != k) throw ValidationError("polyhedron bounds differ in length");
  for (std::size_t l = 0; l < k; ++l) {
    if (!(lower[l] <= upper[l]) || !std::isfinite(lower[l]) || !std::isfinite(upper[l]))
      throw ValidationError("polyhedron bounds invalid at component " + std::to_string(l));
  }
  if (b.size() != v.rows() || info.size() != b.size())
    throw ValidationError("polyhedron row data inconsistent");
  for (std::size_t i = 0; i < v.rows(); ++i) {
    if (v.cols() != k) throw ValidationError("polyhedron row has wrong dimension");
    const double norm = std::sqrt(dot(v.row(i), v.row(i)));
    if (std::abs(norm - 1.0) > 1e-9)
      throw ValidationError("polyhedron row " + std::to_string(i) + " is not unit-norm");
    if (!std::isfinite(b[i])) throw ValidationError("polyhedron offset is not finite");
  }
  if (!witness.empty() && witness.size() != k)
    throw ValidationError("polyhedron witness has wrong dimension");
}

bool contains(const Polyhedron& poly, std::span<const double> d, double tol) {
  if (d.size() != poly.kappa()) throw ValidationError("contains: dimension mismatch");
  for (std::size_t l = 0; l < d.size(); ++l) {
    if (d[l] < poly.lower[l] - tol || d[l] > poly.upper[l] + tol) return false;
  }
  for (std::size_t i = 0; i < poly.num_rows(); ++i) {
    if (dot(poly.v.row(i), d) > poly.b[i] + tol) return false;
  }
  return true;
}

}  // namespace robnet::uncertainty
