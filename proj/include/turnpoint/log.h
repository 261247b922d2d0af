/*
 * Copyright 2026 The Turnpoint Authors.
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

#ifndef TURNPOINT_LOG_H_
#define TURNPOINT_LOG_H_

#include <string_view>

namespace turnpoint {

// Warnings go to stderr unless silenced (tests and benchmarks silence them).
void log_warning(std::string_view message);
void set_warnings_enabled(bool enabled);

}  // namespace turnpoint

#endif  // TURNPOINT_LOG_H_
