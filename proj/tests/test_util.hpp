// Copyright 2026 The maxentgame Authors.
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

#include <cmath>

#include "doctest.h"

#define CHECK_NEAR(actual, expected, tol)                                          \
    do {                                                                           \
        const double actual_ = (actual), expected_ = (expected);                   \
        INFO("actual = " << actual_ << ", expected = " << expected_);              \
        CHECK(std::abs(actual_ - expected_) <= (tol));                             \
    } while (0)

#define CHECK_THROWS_KIND(expr, error_kind)                                        \
    do {                                                                           \
        bool thrown_ = false;                                                      \
        try {                                                                      \
            (void)(expr);                                                          \
        } catch (const maxentgame::Error& e) {                                     \
            thrown_ = e.kind() == (error_kind);                                    \
            INFO("threw " << maxentgame::to_string(e.kind()) << ": " << e.what()); \
            CHECK(thrown_);                                                        \
        }                                                                          \
        if (!thrown_) FAIL_CHECK("expected " #error_kind);                         \
    } while (0)
