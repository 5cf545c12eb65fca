// Copyright 2026 The qobf Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qobf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed gate or circuit: index collisions, out-of-range qubits, width mismatches.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// A problem instance violates a mathematical bound (bit width too small, N unreachable).
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// The requested simulation exceeds the configured qubit cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Grover planning was asked for a search with zero marked states.
class NoSolutionError : public ConstraintError {
 public:
  using ConstraintError::ConstraintError;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string token, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what + " (token '" + token + "')"),
        line_(line),
        token_(std::move(token)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& token() const noexcept { return token_; }

 private:
  std::size_t line_;
  std::string token_;
};

}  // namespace qobf
