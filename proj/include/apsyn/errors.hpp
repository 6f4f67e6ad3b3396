//  Copyright 2026 The apsyn authors.
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace apsyn {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad flags or configuration; the CLI maps this family to exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Malformed input or space file contents.
class FormatError : public Error {
public:
    using Error::Error;
};

// Violated numeric precondition (zero totals, empty reports, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace apsyn
