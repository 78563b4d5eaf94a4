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

// Small text helpers shared by the config, table and alias readers.

#include "srfx/errors.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace srfx::detail {

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

// Reads a whole file; failure raises an Error of the given kind.
std::string read_file(const std::string& path, ErrorKind kind);
void write_file(const std::string& path, std::string_view content);

// Parses "key = value" lines, skipping blanks and '#' comments. line_no is
// left at the last line read so callers can report positions.
std::vector<std::pair<std::string, std::string>> key_value_lines(std::string_view text, std::size_t& line_no);

int parse_int(std::string_view s, std::string_view what);
double parse_double(std::string_view s, std::string_view what);

std::uint64_t fnv1a(std::string_view data);

} // namespace srfx::detail
