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

#include "tcore/serialization/snapshot.h"

#include <fmt/format.h>

#include <array>
#include <bit>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <system_error>

namespace tc::serial {

// ---------------------------------------------------------------------------
// Record

void Record::append(Field field) {
  if (contains(field.key)) {
    throw SerializationError(ErrorKind::malformed, "duplicate field '" + field.key + "'");
  }
  fields_.push_back(std::move(field));
}

Record& Record::set_field(Field field) {
  append(std::move(field));
  return *this;
}

bool Record::contains(std::string_view key) const { return find(key) != nullptr; }

const Field* Record::find(std::string_view key) const {
  for (const auto& f : fields_) {
    if (f.key == key) return &f;
  }
  return nullptr;
}

namespace {

const char* type_label(TypeCode code) {
  switch (code) {
    case TypeCode::u8: return "u8";
    case TypeCode::i64: return "i64";
    case TypeCode::f64: return "f64";
    case TypeCode::f64_array: return "f64 array";
    case TypeCode::bytes: return "bytes";
    case TypeCode::nested: return "nested record";
  }
  return "?";
}

template <typename T>
const T& typed_get(const Record& record, std::string_view key, TypeCode wanted) {
  const Field* f = record.find(key);
  if (f == nullptr) {
    throw SerializationError(ErrorKind::malformed, fmt::format("missing field '{}'", key));
  }
  if (const T* p = std::get_if<T>(&f->value)) return *p;
  throw SerializationError(ErrorKind::malformed,
                           fmt::format("field '{}' is {}, expected {}", key,
                                       type_label(type_code(f->value)), type_label(wanted)));
}

}  // namespace

std::uint8_t Record::get_u8(std::string_view key) const {
  return typed_get<std::uint8_t>(*this, key, TypeCode::u8);
}
std::int64_t Record::get_i64(std::string_view key) const {
  return typed_get<std::int64_t>(*this, key, TypeCode::i64);
}
double Record::get_f64(std::string_view key) const {
  return typed_get<double>(*this, key, TypeCode::f64);
}
const std::vector<double>& Record::get_f64_array(std::string_view key) const {
  return typed_get<std::vector<double>>(*this, key, TypeCode::f64_array);
}
const Bytes& Record::get_bytes(std::string_view key) const {
  return typed_get<Bytes>(*this, key, TypeCode::bytes);
}
std::string Record::get_string(std::string_view key) const {
  const auto& b = get_bytes(key);
  return std::string(b.begin(), b.end());
}
const Record& Record::get_record(std::string_view key) const {
  return typed_get<Record>(*this, key, TypeCode::nested);
}

namespace {

bool same_bits(const Value& a, const Value& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<double>(&a)) {
    return std::bit_cast<std::uint64_t>(*x) == std::bit_cast<std::uint64_t>(std::get<double>(b));
  }
  if (const auto* x = std::get_if<std::vector<double>>(&a)) {
    const auto& y = std::get<std::vector<double>>(b);
    return x->size() == y.size() &&
           (x->empty() || std::memcmp(x->data(), y.data(), x->size() * sizeof(double)) == 0);
  }
  return a == b;
}

}  // namespace

bool operator==(const Record& a, const Record& b) {
  if (a.fields_.size() != b.fields_.size()) return false;
  for (std::size_t i = 0; i < a.fields_.size(); ++i) {
    if (a.fields_[i].key != b.fields_[i].key) return false;
    if (!same_bits(a.fields_[i].value, b.fields_[i].value)) return false;
  }
  return true;
}

TypeCode type_code(const Value& value) {
  switch (value.index()) {
    case 0: return TypeCode::u8;
    case 1: return TypeCode::i64;
    case 2: return TypeCode::f64;
    case 3: return TypeCode::f64_array;
    case 4: return TypeCode::bytes;
    default: return TypeCode::nested;
  }
}

// ---------------------------------------------------------------------------
// CRC-32

namespace {

constexpr std::array<std::uint32_t, 256> make_crc_table() {
  std::array<std::uint32_t, 256> table{};
  for (std::uint32_t i = 0; i < 256; ++i) {
    std::uint32_t c = i;
    for (int k = 0; k < 8; ++k) c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
    table[i] = c;
  }
  return table;
}

constexpr auto kCrcTable = make_crc_table();

}  // namespace

std::uint32_t crc32(std::span<const std::uint8_t> data) {
  std::uint32_t c = 0xFFFFFFFFu;
  for (std::uint8_t b : data) c = kCrcTable[(c ^ b) & 0xFFu] ^ (c >> 8);
  return c ^ 0xFFFFFFFFu;
}

// ---------------------------------------------------------------------------
// Encoding

namespace {

class Writer {
 public:
  explicit Writer(Bytes& out) : out_(out) {}

  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void raw(std::span<const std::uint8_t> bytes) { out_.insert(out_.end(), bytes.begin(), bytes.end()); }

 private:
  Bytes& out_;
};

void encode_fields(const Record& record, Bytes& out);

void encode_value(const Value& value, Bytes& out) {
  Writer w(out);
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::uint8_t>) {
          w.u8(v);
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          w.u64(static_cast<std::uint64_t>(v));
        } else if constexpr (std::is_same_v<T, double>) {
          w.f64(v);
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
          w.u64(v.size());
          for (double d : v) w.f64(d);
        } else if constexpr (std::is_same_v<T, Bytes>) {
          w.u64(v.size());
          w.raw(v);
        } else {
          Bytes nested;
          encode_fields(v, nested);
          w.u64(nested.size());
          w.raw(nested);
        }
      },
      value);
}

void encode_fields(const Record& record, Bytes& out) {
  Writer w(out);
  for (const auto& f : record.fields()) {
    if (f.key.size() > 0xFFFFFFFFu) {
      throw SerializationError(ErrorKind::unsupported_field, "field key too long");
    }
    w.u32(static_cast<std::uint32_t>(f.key.size()));
    w.raw({reinterpret_cast<const std::uint8_t*>(f.key.data()), f.key.size()});
    w.u8(static_cast<std::uint8_t>(type_code(f.value)));
    encode_value(f.value, out);
  }
}

// ---------------------------------------------------------------------------
// Decoding. `base` is the absolute stream offset of data[0], used in errors.

class Reader {
 public:
  Reader(std::span<const std::uint8_t> data, std::size_t base) : data_(data), base_(base) {}

  bool done() const { return pos_ == data_.size(); }
  std::size_t remaining() const { return data_.size() - pos_; }
  std::size_t offset() const { return base_ + pos_; }

  std::span<const std::uint8_t> take(std::size_t n) {
    if (n > remaining()) {
      throw SerializationError(ErrorKind::unexpected_end,
                               fmt::format("unexpected end at offset {}", base_ + data_.size()));
    }
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint8_t u8() { return take(1)[0]; }
  std::uint32_t u32() {
    auto s = take(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(s[i]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    auto s = take(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(s[i]) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

Record decode_fields(std::span<const std::uint8_t> data, std::size_t base, int depth);

Value decode_value(TypeCode code, Reader& r, int depth) {
  switch (code) {
    case TypeCode::u8: return r.u8();
    case TypeCode::i64: return static_cast<std::int64_t>(r.u64());
    case TypeCode::f64: return r.f64();
    case TypeCode::f64_array: {
      const std::uint64_t n = r.u64();
      if (n > r.remaining() / 8) r.take(r.remaining() + 1);  // reports the end offset
      std::vector<double> v(static_cast<std::size_t>(n));
      for (auto& d : v) d = r.f64();
      return v;
    }
    case TypeCode::bytes: {
      const std::uint64_t n = r.u64();
      if (n > r.remaining()) r.take(r.remaining() + 1);
      auto s = r.take(static_cast<std::size_t>(n));
      return Bytes(s.begin(), s.end());
    }
    case TypeCode::nested: {
      const std::uint64_t n = r.u64();
      if (n > r.remaining()) r.take(r.remaining() + 1);
      const std::size_t at = r.offset();
      auto s = r.take(static_cast<std::size_t>(n));
      return decode_fields(s, at, depth + 1);
    }
  }
  throw SerializationError(ErrorKind::malformed, "unknown type code");
}

Record decode_fields(std::span<const std::uint8_t> data, std::size_t base, int depth) {
  if (depth > kMaxNesting) {
    throw SerializationError(ErrorKind::malformed,
                             fmt::format("nesting deeper than {} at offset {}", kMaxNesting, base));
  }
  Reader r(data, base);
  Record record;
  while (!r.done()) {
    const std::uint32_t key_len = r.u32();
    auto key_bytes = r.take(key_len);
    std::string key(key_bytes.begin(), key_bytes.end());
    const std::size_t code_at = r.offset();
    const std::uint8_t code = r.u8();
    if (code < 1 || code > 6) {
      throw SerializationError(ErrorKind::malformed,
                               fmt::format("unknown type code {} at offset {}", code, code_at));
    }
    auto value = decode_value(static_cast<TypeCode>(code), r, depth);
    if (record.contains(key)) {
      throw SerializationError(ErrorKind::malformed,
                               fmt::format("duplicate field '{}' at offset {}", key, code_at));
    }
    record.set_field({std::move(key), std::move(value)});
  }
  return record;
}

}  // namespace

Bytes encode_payload(const Record& record) {
  Bytes out;
  encode_fields(record, out);
  return out;
}

Record decode_payload(std::span<const std::uint8_t> payload) {
  return decode_fields(payload, 0, 0);
}

Bytes serialize(const Record& record) {
  Bytes payload = encode_payload(record);
  Bytes out;
  out.reserve(kHeaderSize + payload.size());
  out.insert(out.end(), kMagic.begin(), kMagic.end());
  Writer w(out);
  w.u32(kFormatVersion);
  w.u64(payload.size());
  w.u32(crc32(payload));
  w.raw(payload);
  return out;
}

Record deserialize(std::span<const std::uint8_t> bytes) {
  const std::size_t magic_seen = std::min(bytes.size(), kMagic.size());
  if (magic_seen > 0 && std::memcmp(bytes.data(), kMagic.data(), magic_seen) != 0) {
    throw SerializationError(ErrorKind::not_a_snapshot, "not a snapshot");
  }
  Reader header(bytes.first(std::min(bytes.size(), kHeaderSize)), 0);
  header.take(kMagic.size());
  const std::uint32_t version = header.u32();
  if (version != kFormatVersion) {
    throw SerializationError(ErrorKind::unsupported_version,
                             fmt::format("unsupported version {}", version));
  }
  const std::uint64_t length = header.u64();
  const std::uint32_t checksum = header.u32();

  const auto body = bytes.subspan(kHeaderSize);
  if (length > body.size()) {
    throw SerializationError(ErrorKind::unexpected_end,
                             fmt::format("unexpected end at offset {}", bytes.size()));
  }
  if (length < body.size()) {
    throw SerializationError(ErrorKind::malformed,
                             fmt::format("{} trailing bytes after payload at offset {}",
                                         body.size() - length, kHeaderSize + length));
  }
  if (crc32(body) != checksum) {
    throw SerializationError(ErrorKind::corrupt_payload, "corrupt payload");
  }
  return decode_fields(body, kHeaderSize, 0);
}

// ---------------------------------------------------------------------------
// Files

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError(fmt::format("cannot open '{}': {}", path.string(), std::strerror(errno)));
  }
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError(fmt::format("error reading '{}'", path.string()));
  return data;
}

void write_file_atomic(std::span<const std::uint8_t> bytes, const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError(fmt::format("cannot write '{}': {}", tmp.string(), std::strerror(errno)));
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw IoError(fmt::format("error writing '{}'", tmp.string()));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    const auto reason = ec.message();
    std::filesystem::remove(tmp, ec);
    throw IoError(fmt::format("cannot move file into place at '{}': {}", path.string(), reason));
  }
}

void write_snapshot(const Record& record, const std::filesystem::path& path) {
  write_file_atomic(serialize(record), path);
}

Record read_snapshot(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return deserialize(bytes);
  } catch (const SerializationError& e) {
    throw SerializationError(e.kind(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

}  // namespace tc::serial
