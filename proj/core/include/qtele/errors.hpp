// Copyright 2026 The qtele Authors
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

#ifndef QTELE_ERRORS_HPP
#define QTELE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qtele {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value violates its type invariant (normalisation, Hermiticity, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// An optical element references a mode outside the state's mode universe.
class ModeResolutionError : public Error {
 public:
  using Error::Error;
};

/// A zero-probability teleportation branch was requested.
class DegenerateOutcomeError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// The tomographic input set does not determine the unknown.
class IllPosedError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Ingested data needed a repair larger than the allowed cap.
class DataQualityError : public Error {
 public:
  using Error::Error;
};

class OutOfScopeError : public Error {
 public:
  using Error::Error;
};

}  // namespace qtele

#endif  // QTELE_ERRORS_HPP
