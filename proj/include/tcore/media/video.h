// Copyright 2026 The tcore Authors
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

// Video assembly through an external encoder. The encoder is described by a
// command template; these tokens are substituted in each word:
//
//   {fps}     frames per second
//   {output}  output file
//   {list}    a text file naming every frame in order (ffmpeg concat format)
//   {frames}  a word consisting of just this token expands to one argument
//             per frame, in order

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tcore/common/error.h"

namespace tc::media {

inline constexpr const char* kDefaultVideoCommand =
    "ffmpeg -y -loglevel error -f concat -safe 0 -i {list} -r {fps} -pix_fmt yuv420p {output}";

/// Process launching, replaceable in tests.
class CommandRunner {
 public:
  virtual ~CommandRunner() = default;
  /// True if `program` can be launched.
  virtual bool available(const std::string& program) const = 0;
  /// Runs argv[0] with the given arguments and returns its exit status.
  virtual int run(const std::vector<std::string>& argv) = 0;
};

/// posix_spawnp with a PATH lookup.
class SystemCommandRunner final : public CommandRunner {
 public:
  bool available(const std::string& program) const override;
  int run(const std::vector<std::string>& argv) override;
};

struct VideoResult {
  enum class Status { encoded, encoder_unavailable, encoder_failed };
  Status status = Status::encoded;
  std::string message;
};

/// Throws tc::Error for an empty frame list or an empty template. A missing
/// encoder or a failing one is reported in the result; frames are never
/// touched.
VideoResult encode_video(const std::vector<std::filesystem::path>& frames,
                         const std::filesystem::path& output, int fps, CommandRunner& runner,
                         const std::string& command_template = kDefaultVideoCommand);

/// The argv that encode_video passes to the runner.
std::vector<std::string> expand_video_command(const std::string& command_template,
                                              const std::vector<std::filesystem::path>& frames,
                                              const std::filesystem::path& list_file,
                                              const std::filesystem::path& output, int fps);

}  // namespace tc::media
