// Copyright 2026 The kickdyn Authors
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

namespace kickdyn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values, failed convergence, norm drift beyond tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent scenario, train or grid construction.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Operation requested on an input it does not support (e.g. sampling a kick).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Bad command-line or config-file input.
class UsageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace kickdyn
