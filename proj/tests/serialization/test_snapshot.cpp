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

#include <catch2/catch.hpp>

#include <bit>
#include <cstring>
#include <filesystem>
#include <limits>
#include <random>

#include "oracles/oracles.h"
#include "tcore/serialization/snapshot.h"

namespace ts = tc::serial;

namespace {

void put_u32(ts::Bytes& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(ts::Bytes& b, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

double random_double(std::mt19937_64& rng) {
  // Arbitrary bit patterns, including NaN payloads, infinities and -0.
  return std::bit_cast<double>(rng());
}

ts::Record random_record(std::mt19937_64& rng, int depth) {
  ts::Record r;
  const int n = static_cast<int>(rng() % 6);
  for (int i = 0; i < n; ++i) {
    const std::string key = "k" + std::to_string(i);
    switch (rng() % (depth < 3 ? 6 : 5)) {
      case 0: r.set(key, static_cast<std::uint8_t>(rng())); break;
      case 1: r.set(key, static_cast<std::int64_t>(rng())); break;
      case 2: r.set(key, random_double(rng)); break;
      case 3: {
        std::vector<double> v(rng() % 20);
        for (double& d : v) d = random_double(rng);
        r.set(key, v);
        break;
      }
      case 4: {
        ts::Bytes b(rng() % 30);
        for (auto& c : b) c = static_cast<std::uint8_t>(rng());
        r.set(key, b);
        break;
      }
      default: r.set(key, random_record(rng, depth + 1)); break;
    }
  }
  return r;
}

ts::ErrorKind kind_of(const ts::Bytes& bytes) {
  try {
    ts::deserialize(bytes);
  } catch (const ts::SerializationError& e) {
    return e.kind();
  }
  FAIL("expected a SerializationError");
  return ts::ErrorKind::malformed;
}

}  // namespace

TEST_CASE("crc32 agrees with zlib") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    ts::Bytes b(rng() % 1000);
    for (auto& c : b) c = static_cast<std::uint8_t>(rng());
    REQUIRE(ts::crc32(b) == oracle::crc32(b));
  }
  CHECK(ts::crc32({}) == 0u);
}

TEST_CASE("empty record encodes to a bare header") {
  const auto bytes = ts::serialize(ts::Record{});
  ts::Bytes expected{'T', 'C', 'S', 'N', 'A', 'P', '0', '1'};
  put_u32(expected, 1);
  put_u64(expected, 0);
  put_u32(expected, 0);
  CHECK(bytes == expected);
  CHECK(ts::deserialize(bytes).empty());
}

TEST_CASE("single i64 field matches the hand encoding") {
  ts::Bytes payload{5, 0, 0, 0, 's', 't', 'e', 'p', 's', 2, 5, 0, 0, 0, 0, 0, 0, 0};
  ts::Bytes expected{'T', 'C', 'S', 'N', 'A', 'P', '0', '1', 1, 0, 0, 0, 18, 0, 0, 0, 0, 0, 0, 0};
  put_u32(expected, oracle::crc32(payload));
  expected.insert(expected.end(), payload.begin(), payload.end());

  ts::Record r;
  r.set("steps", std::int64_t{5});
  CHECK(ts::serialize(r) == expected);
  CHECK(ts::deserialize(expected).get_i64("steps") == 5);
}

TEST_CASE("every type code matches its hand encoding") {
  ts::Record inner;
  inner.set("a", std::uint8_t{7});
  ts::Record r;
  r.set("f", -0.0);
  r.set("v", std::vector<double>{1.5});
  r.set("s", std::string("hi"));
  r.set("n", inner);
  ts::Bytes p;
  auto key = [&](const std::string& k, std::uint8_t code) {
    put_u32(p, static_cast<std::uint32_t>(k.size()));
    p.insert(p.end(), k.begin(), k.end());
    p.push_back(code);
  };
  key("f", 3);
  put_u64(p, 0x8000000000000000ull);
  key("v", 4);
  put_u64(p, 1);
  put_u64(p, std::bit_cast<std::uint64_t>(1.5));
  key("s", 5);
  put_u64(p, 2);
  p.push_back('h');
  p.push_back('i');
  key("n", 6);
  put_u64(p, 4 + 1 + 1 + 1);
  put_u32(p, 1);
  p.push_back('a');
  p.push_back(1);
  p.push_back(7);
  CHECK(ts::encode_payload(r) == p);
  CHECK(ts::decode_payload(p) == r);
}

TEST_CASE("randomized records round-trip bitwise") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const auto r = random_record(rng, 0);
    const auto bytes = ts::serialize(r);
    REQUIRE(ts::deserialize(bytes) == r);
    REQUIRE(ts::serialize(ts::deserialize(bytes)) == bytes);
  }
}

TEST_CASE("doubles compare by bit pattern") {
  ts::Record a, b;
  a.set("x", 0.0);
  b.set("x", -0.0);
  CHECK_FALSE(a == b);
  ts::Record n1, n2;
  n1.set("x", std::numeric_limits<double>::quiet_NaN());
  n2.set("x", std::numeric_limits<double>::quiet_NaN());
  CHECK(n1 == n2);
}

TEST_CASE("distinct errors for each failure") {
  ts::Record r;
  r.set("steps", std::int64_t{5});
  r.set("data", std::vector<double>{1, 2, 3});
  const auto good = ts::serialize(r);

  auto bad_magic = good;
  bad_magic[0] = 'X';
  CHECK(kind_of(bad_magic) == ts::ErrorKind::not_a_snapshot);
  CHECK(kind_of(ts::Bytes{}) == ts::ErrorKind::unexpected_end);

  auto version = good;
  version[8] = 99;
  CHECK(kind_of(version) == ts::ErrorKind::unsupported_version);
  CHECK_THROWS_WITH(ts::deserialize(version), Catch::Contains("unsupported version 99"));

  auto flipped = good;
  flipped[ts::kHeaderSize + 3] ^= 0x10;
  CHECK(kind_of(flipped) == ts::ErrorKind::corrupt_payload);

  const ts::Bytes truncated(good.begin(), good.end() - 5);
  CHECK(kind_of(truncated) == ts::ErrorKind::unexpected_end);
  CHECK_THROWS_WITH(ts::deserialize(truncated), Catch::Contains("unexpected end at offset"));

  const ts::Bytes header_only(good.begin(), good.begin() + 12);
  CHECK(kind_of(header_only) == ts::ErrorKind::unexpected_end);
}

TEST_CASE("payload truncation reports the offset") {
  ts::Bytes p{5, 0, 0, 0, 's', 't'};
  try {
    ts::decode_payload(p);
    FAIL("expected error");
  } catch (const ts::SerializationError& e) {
    CHECK(e.kind() == ts::ErrorKind::unexpected_end);
    CHECK(std::string(e.what()).find("offset 6") != std::string::npos);
  }
}

TEST_CASE("unsupported values name the key") {
  ts::Record r;
  CHECK_THROWS_WITH(r.set("big", std::numeric_limits<std::uint64_t>::max()),
                    Catch::Contains("big"));
  r.set("k", std::int64_t{1});
  CHECK_THROWS_AS(r.set("k", std::int64_t{2}), ts::SerializationError);
}

TEST_CASE("fuzzed streams never crash and always raise a defined error") {
  std::mt19937_64 rng(99);
  ts::Record r;
  r.set("steps", std::int64_t{5});
  r.set("pos", std::vector<double>{0.25, 0.5, 0.75, 1.0});
  ts::Record nested;
  nested.set("name", std::string("apic"));
  nested.set("flag", true);
  r.set("cfg", nested);
  const auto good = ts::serialize(r);

  int rejected = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    auto bytes = good;
    switch (rng() % 4) {
      case 0: bytes[rng() % bytes.size()] ^= static_cast<std::uint8_t>(1u << (rng() % 8)); break;
      case 1: bytes.resize(rng() % bytes.size()); break;
      case 2: {
        const int n = 1 + static_cast<int>(rng() % 8);
        for (int i = 0; i < n; ++i) bytes[rng() % bytes.size()] = static_cast<std::uint8_t>(rng());
        break;
      }
      default: bytes.insert(bytes.begin() + static_cast<long>(rng() % bytes.size()),
                            static_cast<std::uint8_t>(rng()));
    }
    // Re-seal half of the mutants so the decoder itself is exercised.
    if (trial % 2 == 0 && bytes.size() >= ts::kHeaderSize) {
      const ts::Bytes payload(bytes.begin() + ts::kHeaderSize, bytes.end());
      const std::uint32_t crc = ts::crc32(payload);
      std::uint64_t len = payload.size();
      std::memcpy(bytes.data() + 12, &len, 8);
      std::memcpy(bytes.data() + 20, &crc, 4);
    }
    try {
      ts::deserialize(bytes);
    } catch (const ts::SerializationError&) {
      ++rejected;
    }
  }
  CHECK(rejected > 5000);
}

TEST_CASE("deep nesting is bounded") {
  ts::Record r;
  for (int i = 0; i < ts::kMaxNesting + 5; ++i) {
    ts::Record outer;
    outer.set("n", r);
    r = outer;
  }
  const auto bytes = ts::serialize(r);
  CHECK(kind_of(bytes) == ts::ErrorKind::malformed);
}

TEST_CASE("snapshot files") {
  const auto dir = std::filesystem::temp_directory_path() / "tcore_snapshot_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "state.tcsnap";
  std::mt19937_64 rng(5);
  const auto r = random_record(rng, 0);
  ts::write_snapshot(r, path);
  CHECK(ts::read_file(path) == ts::serialize(r));
  CHECK(ts::read_snapshot(path) == r);
  CHECK_FALSE(std::filesystem::exists(dir / "state.tcsnap.tmp"));
  CHECK_THROWS_WITH(ts::read_snapshot(dir / "missing.tcsnap"),
                    Catch::Contains("missing.tcsnap"));
  std::filesystem::remove_all(dir);
}
