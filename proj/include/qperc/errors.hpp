// Copyright 2026 The qperc developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qperc {

/// Base class for all qperc errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input violates an operation's precondition (bad index, dimension
/// mismatch, non-hermitian operator, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// A numeric procedure failed to meet its tolerance (iteration cap hit,
/// non-finite values). The message carries the residual.
class NumericError : public Error {
  public:
    using Error::Error;
};

/// An experiment configuration is invalid. The message names the field.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
  public:
    using Error::Error;
};

} // namespace qperc
