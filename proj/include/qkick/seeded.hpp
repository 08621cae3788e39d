// Copyright 2026 The qkick Authors
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

#pragma once

#include "qkick/model.hpp"
#include "qkick/random.hpp"

namespace qkick {

// Seeded model draw: H00, H10, H11 (in that order) from one SplitMix64
// stream, each rescaled to spectral norm `norm`, followed by rho0.
struct SeededModel {
  HamiltonianBlocks blocks;
  Matrix rho0;
};

inline SeededModel draw_model(SplitMix64& rng, Eigen::Index d, double norm, bool gaussian, bool closed) {
  Matrix h00 = random_hermitian(rng, d, norm);
  Matrix h10 = random_general(rng, d, norm);
  Matrix h11 = random_hermitian(rng, d, norm);
  if (closed) h10.setZero();
  if (closed || gaussian) h11.setZero();
  Matrix rho0 = random_density(rng, d);
  return {HamiltonianBlocks(h00, h10, h11), rho0};
}

}  // namespace qkick
