// Copyright 2026 The dephaser Authors
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

namespace dephaser {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit together (dimension mismatch, non-square input).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A value violates a type invariant or an operation precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A combinatorial or dimensional cap was exceeded.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Conditioning on an event whose probability is below the null floor.
class NullEventError : public Error {
 public:
  using Error::Error;
};

/// A numerical kernel failed (e.g. eigensolver non-convergence).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace dephaser
