/*
   Copyright 2026 The vortexmf Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace vortexmf {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside an operation's domain (bad argument, non-finite value).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation at a singular point of G or K.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// Invalid or inconsistent configuration; the message names the field.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace vortexmf
