// Copyright 2026 The photodisc Authors
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

namespace photodisc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad shape, bad index, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Dimensions of two collaborating objects do not agree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The requested object is larger than the configured memory/time budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Gram-Schmidt could not find an independent vector where one must exist.
class NumericDegeneracy : public Error {
 public:
  using Error::Error;
};

/// A computed quantity violates an identity that holds by construction.
class InternalConsistency : public Error {
 public:
  using Error::Error;
};

class CacheError : public Error {
 public:
  using Error::Error;
};

class CacheMissing : public CacheError {
 public:
  using CacheError::CacheError;
};

class CacheChecksumMismatch : public CacheError {
 public:
  using CacheError::CacheError;
};

class CacheVersionMismatch : public CacheError {
 public:
  using CacheError::CacheError;
};

}  // namespace photodisc
