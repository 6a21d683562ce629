// Copyright 2026 The Everettropy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace everettropy {

/// Entrywise tolerance for operator identities (hermiticity, unitarity, ...).
inline constexpr double kOperatorTol = 1e-10;

/// Eigenvalues in [-kPsdTol, 0) are treated as roundoff and clipped to zero.
inline constexpr double kPsdTol = 1e-9;

/// A state whose entropy (bits) is at most this value counts as pure.
inline constexpr double kPureTol = 1e-9;

/// Eigenvalues closer than this are treated as one degenerate level.
inline constexpr double kDegeneracyTol = 1e-8;

/// Largest imaginary part of tr(rho A) that is silently discarded.
inline constexpr double kImagDiscardTol = 1e-12;

/// Imaginary parts above this signal corrupted inputs.
inline constexpr double kImagErrorTol = 1e-9;

}  // namespace everettropy
