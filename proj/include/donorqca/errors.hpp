// Copyright 2026 The donorqca Authors
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

#ifndef DONORQCA_ERRORS_HPP
#define DONORQCA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace donorqca {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mixed incompatible units.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration or argument (bad pattern, negative detuning, ...).
class SpecError : public Error {
 public:
  using Error::Error;
};

// Malformed input text (JSON, unit strings, bit strings).
class ParseError : public Error {
 public:
  using Error::Error;
};

// The requested operation is not physically realisable with the device, e.g.
// two transitions collide inside the excitation bandwidth.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Integration step violates the accuracy precondition.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace donorqca

#endif  // DONORQCA_ERRORS_HPP
