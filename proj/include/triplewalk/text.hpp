/*
 * Copyright 2026 The triplewalk Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace triplewalk {

/// Percent-escapes '%', '|' and whitespace so a token can be embedded in
/// '|'-joined, whitespace-separated text formats.
std::string escape_token(std::string_view raw);
/// Inverse of escape_token. Throws ParseError on a malformed escape.
std::string unescape_token(std::string_view escaped);

/// Splits a '|'-joined token and unescapes each component.
std::vector<std::string> split_token(std::string_view token);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_real(double value);
std::string format_real(float value);

}  // namespace triplewalk
