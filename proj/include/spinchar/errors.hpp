// Copyright 2026 The spinchar Authors
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

#include <stdexcept>
#include <string>

namespace spinchar {

/// Malformed input or a precondition violated by the caller.
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A configured size cap (bond dimension, oracle n, dense sites) was exceeded.
class ResourceLimit : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A linear-algebra kernel failed, e.g. a non-converged SVD.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Rounded integers can not be certified: residual >= 1/2, amplitude beyond
/// 2^52, or the norm identity was violated.
class PrecisionFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Character values from an engine do not satisfy the orthogonality identity.
class InconsistentEngine : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Broken internal invariant.
class InternalError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

}  // namespace spinchar
