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

// Snapshot stream format (all integers little-endian):
//
//   offset  size  content
//        0     8  magic "TCSNAP01"
//        8     4  format version (u32), currently 1
//       12     8  payload length in bytes (u64)
//       20     4  CRC-32 of the payload (reflected, polynomial 0xEDB88320)
//       24     n  payload
//
// The payload is a sequence of fields:
//
//   u32 key length, key bytes (UTF-8), u8 type code, value
//
// with values encoded per type code:
//
//   1 u8         1 byte
//   2 i64        8 bytes, two's complement
//   3 f64        8 bytes, raw IEEE-754 bits
//   4 f64 array  u64 element count, then count * 8 bytes
//   5 bytes      u64 length, then the bytes
//   6 nested     u64 byte length, then a field sequence of that length

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>

#include "tcore/serialization/record.h"

namespace tc::serial {

inline constexpr std::string_view kMagic = "TCSNAP01";
inline constexpr std::uint32_t kFormatVersion = 1;
inline constexpr std::size_t kHeaderSize = 24;
inline constexpr int kMaxNesting = 64;

std::uint32_t crc32(std::span<const std::uint8_t> data);

/// Field sequence only, no header.
Bytes encode_payload(const Record& record);
Record decode_payload(std::span<const std::uint8_t> payload);

/// Header + payload. Deterministic: equal records give identical bytes.
Bytes serialize(const Record& record);

/// Validates header, length and checksum before decoding. Safe on arbitrary
/// input: every failure is a SerializationError.
Record deserialize(std::span<const std::uint8_t> bytes);

/// Writes serialize(record) to a sibling temp file and renames it over
/// `path`, so readers never observe a partial snapshot.
void write_snapshot(const Record& record, const std::filesystem::path& path);
Record read_snapshot(const std::filesystem::path& path);

Bytes read_file(const std::filesystem::path& path);
void write_file_atomic(std::span<const std::uint8_t> bytes, const std::filesystem::path& path);

}  // namespace tc::serial
