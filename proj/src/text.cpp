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

#include "triplewalk/text.hpp"

#include <array>
#include <charconv>

#include "triplewalk/error.hpp"

namespace triplewalk {

namespace {

bool needs_escape(char c) {
    return c == '%' || c == '|' || c == ' ' || c == '\t' || c == '\n' || c == '\r' ||
           c == '\v' || c == '\f';
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

template <typename Real>
std::string format_impl(Real value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc()) throw Error("cannot format real value");
    return std::string(buf.data(), end);
}

}  // namespace

std::string escape_token(std::string_view raw) {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        if (needs_escape(c)) {
            auto u = static_cast<unsigned char>(c);
            out.push_back('%');
            out.push_back(kHex[u >> 4]);
            out.push_back(kHex[u & 0xF]);
        } else {
            out.push_back(c);
        }
    }
    return out;
}

std::string unescape_token(std::string_view escaped) {
    std::string out;
    out.reserve(escaped.size());
    for (std::size_t i = 0; i < escaped.size(); ++i) {
        if (escaped[i] != '%') {
            out.push_back(escaped[i]);
            continue;
        }
        if (i + 2 >= escaped.size()) {
            throw ParseError(0, "truncated escape in token '" + std::string(escaped) + "'");
        }
        int hi = hex_value(escaped[i + 1]);
        int lo = hex_value(escaped[i + 2]);
        if (hi < 0 || lo < 0) {
            throw ParseError(0, "bad escape in token '" + std::string(escaped) + "'");
        }
        out.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
    }
    return out;
}

std::vector<std::string> split_token(std::string_view token) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        auto bar = token.find('|', start);
        parts.push_back(unescape_token(token.substr(start, bar - start)));
        if (bar == std::string_view::npos) break;
        start = bar + 1;
    }
    return parts;
}

std::string format_real(double value) { return format_impl(value); }
std::string format_real(float value) { return format_impl(value); }

}  // namespace triplewalk
