/*
 * Copyright 2026 The woe-explain Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef WOE_ERROR_H_
#define WOE_ERROR_H_

#include <stdexcept>
#include <string>

namespace woe {

// Base class for all errors raised by the library. Callers that only care
// about "something went wrong" catch this; the subclasses let the CLI and the
// service map failures onto exit codes and HTTP statuses.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad arguments, violated preconditions, schema errors.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A referenced entity (file, row, partition, class) does not exist.
class NotFound : public Error {
 public:
  using Error::Error;
};

// The model cannot answer the query (e.g. likelihoods of a black box).
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace woe

#endif  // WOE_ERROR_H_
