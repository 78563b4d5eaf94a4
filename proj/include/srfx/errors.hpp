// Copyright 2026 The srfx Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace srfx {

// Error categories map one-to-one onto the CLI exit codes (config 1, data 2,
// runtime 3). Everything thrown by the library derives from Error.
enum class ErrorKind { Config = 1, Data = 2, Runtime = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

class RuntimeError : public Error {
public:
    explicit RuntimeError(const std::string& what) : Error(ErrorKind::Runtime, what) {}
};

// Expression text could not be parsed. position is a 0-based byte offset.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t position)
        : Error(ErrorKind::Data, msg + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace srfx
