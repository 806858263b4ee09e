// Copyright 2026 The bosim Authors
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

#ifndef BOSIM_ERRORS_H
#define BOSIM_ERRORS_H

#include <stdexcept>
#include <string>

namespace bosim {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed input data: bad JSON, wrong schema, invalid matrix or probe set.
class SchemaError : public Error {
   public:
    using Error::Error;
};

/// Mode-count or photon-number mismatch between arguments, or a size cap exceeded.
class DimensionError : public Error {
   public:
    using Error::Error;
};

/// A quantity is outside its numerical domain (zero denominator, negative entry, ...).
class DomainError : public Error {
   public:
    using Error::Error;
};

}  // namespace bosim

#endif
