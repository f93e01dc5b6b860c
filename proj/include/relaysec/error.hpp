// Copyright 2026 The Authors.
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

#ifndef RELAYSEC_ERROR_HPP_
#define RELAYSEC_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace relaysec {

// Base for every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix inputs with incompatible dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Channel matrix too ill-conditioned for zero-forcing.
class SingularChannelError : public Error {
 public:
  using Error::Error;
};

// Input violates a documented precondition (e.g. Hermitian expected).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Determinant in a ratio denominator (or regularized covariance) vanished.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class BufferError : public Error {
 public:
  using Error::Error;
};

class SelectionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace relaysec

#endif  // RELAYSEC_ERROR_HPP_
