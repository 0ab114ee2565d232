// Copyright 2026 The signdicke Authors
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

namespace signdicke {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A bitstring does not have the Hamming weight the caller claimed.
class InvalidWeightError : public Error {
  public:
    using Error::Error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// A request would exceed a configured size guard (memory or enumeration count).
class ResourceError : public Error {
  public:
    using Error::Error;
};

/// An iterative numerical method failed to converge.
class NumericalError : public Error {
  public:
    using Error::Error;
};

/// A sweep configuration violates its invariants.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// File I/O failed; the message carries the path.
class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace signdicke
