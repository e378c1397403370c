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
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ges {

using Complex = std::complex<double>;

/// Integer multi-index; 1-D spaces use only the first slot.
using ModeIndex = std::array<int, 3>;

/// A phase-space point stored as a sparse list of Fourier/sequence coefficients.
///
/// Indices are kept sorted lexicographically so that two states can be merged in
/// linear time. Indices absent from the list are implicit zeros. Each index
/// carries `components()` complex amplitudes (1 for scalar sequences, 3 for
/// velocity modes).
class CoeffState {
 public:
  CoeffState() = default;

  /// Validates and canonicalizes; throws UsageError on duplicate indices,
  /// non-finite values or a size mismatch.
  CoeffState(std::string space, int index_dim, int components,
             std::vector<ModeIndex> indices, std::vector<Complex> values);

  /// Scalar 1-D convenience constructor.
  static CoeffState scalar(std::string space, std::vector<int> indices,
                           std::vector<Complex> values);

  /// The zero state of a space (no stored coefficients).
  static CoeffState zero(std::string space, int index_dim, int components);

  const std::string& space() const noexcept { return space_; }
  int index_dim() const noexcept { return index_dim_; }
  int components() const noexcept { return components_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }

  const std::vector<ModeIndex>& indices() const noexcept { return indices_; }
  const std::vector<Complex>& values() const noexcept { return values_; }

  const ModeIndex& index(std::size_t i) const { return indices_[i]; }
  std::span<const Complex> value(std::size_t i) const {
    return {values_.data() + i * static_cast<std::size_t>(components_),
            static_cast<std::size_t>(components_)};
  }

  /// Coefficient at a given index, or an empty span when the index is absent.
  std::span<const Complex> find(const ModeIndex& k) const;

  /// Same space, same layout, pointwise-scaled values.
  CoeffState scaled(Complex factor) const;

  friend bool operator==(const CoeffState&, const CoeffState&) = default;

 private:
  std::string space_;
  int index_dim_ = 1;
  int components_ = 1;
  std::vector<ModeIndex> indices_;
  std::vector<Complex> values_;
};

/// Lexicographic order used for canonical storage.
bool index_less(const ModeIndex& a, const ModeIndex& b) noexcept;

}  // namespace ges
