/*
 * Copyright 2026 The GES Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "ges/coeff_state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ges/errors.hpp"

namespace ges {

bool index_less(const ModeIndex& a, const ModeIndex& b) noexcept {
  return a < b;
}

CoeffState::CoeffState(std::string space, int index_dim, int components,
                       std::vector<ModeIndex> indices, std::vector<Complex> values)
    : space_(std::move(space)), index_dim_(index_dim), components_(components) {
  if (index_dim < 1 || index_dim > 3) throw UsageError("index_dim must be 1, 2 or 3");
  if (components < 1) throw UsageError("components must be positive");
  const auto ncomp = static_cast<std::size_t>(components);
  if (values.size() != indices.size() * ncomp) {
    throw UsageError("coefficient count does not match index count");
  }
  for (const auto& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw UsageError("state values must be finite");
    }
  }
  for (auto& k : indices) {
    for (int d = index_dim; d < 3; ++d) k[static_cast<std::size_t>(d)] = 0;
  }

  std::vector<std::size_t> order(indices.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (!std::is_sorted(indices.begin(), indices.end(), index_less)) {
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      return index_less(indices[i], indices[j]);
    });
  }
  indices_.reserve(indices.size());
  values_.reserve(values.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t i = order[pos];
    if (!indices_.empty() && indices_.back() == indices[i]) {
      throw UsageError("state indices must be pairwise distinct");
    }
    indices_.push_back(indices[i]);
    values_.insert(values_.end(), values.begin() + static_cast<std::ptrdiff_t>(i * ncomp),
                   values.begin() + static_cast<std::ptrdiff_t>((i + 1) * ncomp));
  }
}

CoeffState CoeffState::scalar(std::string space, std::vector<int> indices,
                              std::vector<Complex> values) {
  std::vector<ModeIndex> idx;
  idx.reserve(indices.size());
  for (int k : indices) idx.push_back({k, 0, 0});
  return CoeffState(std::move(space), 1, 1, std::move(idx), std::move(values));
}

CoeffState CoeffState::zero(std::string space, int index_dim, int components) {
  return CoeffState(std::move(space), index_dim, components, {}, {});
}

std::span<const Complex> CoeffState::find(const ModeIndex& k) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), k, index_less);
  if (it == indices_.end() || *it != k) return {};
  return value(static_cast<std::size_t>(it - indices_.begin()));
}

CoeffState CoeffState::scaled(Complex factor) const {
  CoeffState out = *this;
  for (auto& v : out.values_) v *= factor;
  return out;
}

}  // namespace ges
