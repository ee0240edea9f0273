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

#include "tcore/media/video.h"

#include <fmt/format.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

extern char** environ;

namespace tc::media {
namespace {

std::string replace_all(std::string s, std::string_view token, const std::string& value) {
  for (std::size_t pos = s.find(token); pos != std::string::npos;
       pos = s.find(token, pos + value.size())) {
    s.replace(pos, token.size(), value);
  }
  return s;
}

}  // namespace

bool SystemCommandRunner::available(const std::string& program) const {
  if (program.empty()) return false;
  if (program.find('/') != std::string::npos) return ::access(program.c_str(), X_OK) == 0;
  const char* path = std::getenv("PATH");
  if (path == nullptr) return false;
  std::stringstream dirs(path);
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (dir.empty()) dir = ".";
    if (::access((dir + "/" + program).c_str(), X_OK) == 0) return true;
  }
  return false;
}

int SystemCommandRunner::run(const std::vector<std::string>& argv) {
  if (argv.empty()) throw Error("empty command");
  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);
  pid_t pid = 0;
  const int rc = ::posix_spawnp(&pid, args[0], nullptr, nullptr, args.data(), environ);
  if (rc != 0) return 127;
  int status = 0;
  if (::waitpid(pid, &status, 0) < 0) return 127;
  return WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
}

std::vector<std::string> expand_video_command(const std::string& command_template,
                                              const std::vector<std::filesystem::path>& frames,
                                              const std::filesystem::path& list_file,
                                              const std::filesystem::path& output, int fps) {
  std::vector<std::string> argv;
  std::istringstream words(command_template);
  std::string word;
  while (words >> word) {
    if (word == "{frames}") {
      for (const auto& f : frames) argv.push_back(f.string());
      continue;
    }
    word = replace_all(word, "{fps}", std::to_string(fps));
    word = replace_all(word, "{output}", output.string());
    word = replace_all(word, "{list}", list_file.string());
    argv.push_back(word);
  }
  return argv;
}

VideoResult encode_video(const std::vector<std::filesystem::path>& frames,
                         const std::filesystem::path& output, int fps, CommandRunner& runner,
                         const std::string& command_template) {
  if (frames.empty()) throw Error("cannot encode a video from zero frames");
  if (fps < 1) throw ConfigError(fmt::format("video.fps must be positive (got {})", fps));
  auto list_file = output;
  list_file += ".frames.txt";
  const auto argv = expand_video_command(command_template, frames, list_file, output, fps);
  if (argv.empty()) throw ConfigError("video.command is empty");

  if (!runner.available(argv[0])) {
    return {VideoResult::Status::encoder_unavailable,
            fmt::format("encoder unavailable: '{}' not found; {} frames kept", argv[0], frames.size())};
  }
  {
    std::ofstream list(list_file);
    if (!list) throw IoError(fmt::format("cannot write '{}'", list_file.string()));
    for (const auto& f : frames) {
      list << "file '" << std::filesystem::absolute(f).string() << "'\n"
           << "duration " << fmt::format("{:.6f}", 1.0 / fps) << "\n";
    }
  }
  const int status = runner.run(argv);
  if (status != 0) {
    return {VideoResult::Status::encoder_failed,
            fmt::format("encoder '{}' exited with status {}; frames kept", argv[0], status)};
  }
  return {VideoResult::Status::encoded, fmt::format("wrote {}", output.string())};
}

}  // namespace tc::media
