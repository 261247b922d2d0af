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

#include "turnpoint/config.h"

#include <gtest/gtest.h>

#include "turnpoint/error.h"

namespace turnpoint {
namespace {

TEST(Toml, ScalarsTablesAndArrays) {
  const Settings s = Settings::parse_toml(R"(# header
name = "run \"one\""   # trailing
count = 12
rate = 2.5e-1
on = true
models = ["a", "b+c"]
weights = [0.5, 1, 2]

[train]
epochs = 3
)",
                                          "t.toml");
  EXPECT_EQ(s.get_string("name"), "run \"one\"");
  EXPECT_EQ(s.get_int("count"), 12);
  EXPECT_DOUBLE_EQ(*s.get_double("rate"), 0.25);
  EXPECT_DOUBLE_EQ(*s.get_double("count"), 12.0);
  EXPECT_EQ(s.get_bool("on"), true);
  EXPECT_EQ(s.get_strings("models"), (std::vector<std::string>{"a", "b+c"}));
  EXPECT_EQ(s.get_doubles("weights"), (std::vector<double>{0.5, 1.0, 2.0}));
  EXPECT_EQ(s.get_int("train.epochs"), 3);
  EXPECT_EQ(s.get_int("missing"), std::nullopt);
}

TEST(Toml, Errors) {
  EXPECT_THROW(Settings::parse_toml("a = 1\na = 2\n", "t"), ParseError);
  EXPECT_THROW(Settings::parse_toml("a = \"open\n", "t"), ParseError);
  EXPECT_THROW(Settings::parse_toml("just words\n", "t"), ParseError);
  EXPECT_THROW(Settings::parse_toml("[x\n", "t"), ParseError);
}

TEST(Settings, WrongTypeIsUsageError) {
  const Settings s = Settings::parse_toml("n = \"ten\"\nx = 1.5\n", "t");
  EXPECT_THROW(s.get_int("n"), UsageError);
  EXPECT_THROW(s.get_int("x"), UsageError);
  EXPECT_THROW(s.get_bool("x"), UsageError);
}

TEST(Settings, JsonIsFlattened) {
  const Settings s =
      Settings::parse_json(R"({"train": {"epochs": 4, "rho": 0.9}, "seed": 1})", "c.json");
  EXPECT_EQ(s.get_int("train.epochs"), 4);
  EXPECT_DOUBLE_EQ(*s.get_double("train.rho"), 0.9);
  EXPECT_TRUE(s.contains("seed"));
  EXPECT_THROW(Settings::parse_json("{", "c.json"), ParseError);
}

TEST(Settings, RejectUnknownNamesTheKey) {
  const Settings s = Settings::parse_toml("seed = 1\nsede = 2\n", "t");
  try {
    s.reject_unknown({"seed"}, "synth config");
    FAIL() << "expected UsageError";
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("sede"), std::string::npos);
  }
  EXPECT_NO_THROW(s.reject_unknown({"seed", "sede"}, "synth config"));
}

}  // namespace
}  // namespace turnpoint
