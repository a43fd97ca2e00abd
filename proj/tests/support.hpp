// Copyright 2026 The slipeval Authors.
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

#ifndef SLIPEVAL_TESTS_SUPPORT_HPP_
#define SLIPEVAL_TESTS_SUPPORT_HPP_

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "slipeval/corpus.hpp"

namespace testing {

inline std::filesystem::path data_dir() { return SLIPEVAL_TEST_DATA_DIR; }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& s) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << s;
}

// Fresh directory under the build tree's temp area.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("slipeval_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

struct RecordSpec {
  std::string id = "r1";
  std::string audio = "a1";
  double t = 0.0;
  std::string context = "/dad";
  slipeval::ErrorClass cls = slipeval::ErrorClass::Word;
  std::optional<std::string> intended;
  std::optional<bool> complete;  // derived from the notation when unset
  bool low_confidence = false;
};

inline slipeval::ErrorRecord make_record(const RecordSpec& s) {
  slipeval::ErrorRecord r;
  r.record_id = s.id;
  r.audio_id = s.audio;
  r.timestamp_s = s.t;
  r.context_text = s.context;
  r.error_class = s.cls;
  if (s.cls == slipeval::ErrorClass::Sound) {
    r.sound_kind = slipeval::SoundErrorKind::Substitution;
  }
  if (s.complete) {
    r.complete = *s.complete;
  } else {
    const auto ctx = slipeval::read_context(s.context);
    r.complete = !(ctx.annotation && ctx.annotation->incomplete);
  }
  r.intended_word = s.intended;
  r.intended_low_confidence = s.low_confidence;
  if (auto err = slipeval::finalize_record(r)) throw std::runtime_error(*err);
  return r;
}

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

inline std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

inline CliResult cli(const std::vector<std::string>& args) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("slipeval_cli_io_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto out = dir / ("out" + std::to_string(counter) + ".txt");
  const auto err = dir / ("err" + std::to_string(counter++) + ".txt");
  std::string cmd = quote(SLIPEVAL_CLI_PATH);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " >" + quote(out.string()) + " 2>" + quote(err.string());
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = testing::read_file(out);
  r.err = testing::read_file(err);
  return r;
}

}  // namespace testing

#endif  // SLIPEVAL_TESTS_SUPPORT_HPP_
