// Copyright 2026 The triadsim Authors
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

#include <stdexcept>
#include <string>

namespace triad {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two internal states cannot be compared (different widths, centre
/// frequencies, spectra or auxiliary basis sizes).
class UnsupportedModePair : public Error {
 public:
  using Error::Error;
};

class InvalidSpectrum : public Error {
 public:
  using Error::Error;
};

/// The cyclic overlap product is too small for its argument to mean anything.
class TriadPhaseUndefined : public Error {
 public:
  using Error::Error;
};

/// A quantity that must be real came out with a significant imaginary part,
/// or a probability left [0, 1] by more than the accumulation tolerance.
class NumericalInconsistency : public Error {
 public:
  using Error::Error;
};

class SizeLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace triad
