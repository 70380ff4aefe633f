#include "semweave/cache.hpp"

#include <zlib.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include "semweave/errors.hpp"

namespace semweave {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string gzip_compress(const std::string& data) {
  z_stream stream{};
  if (deflateInit2(&stream, Z_BEST_COMPRESSION, Z_DEFLATED, 15 + 16, 8,
                   Z_DEFAULT_STRATEGY) != Z_OK) {
    throw std::runtime_error("deflateInit2 failed");
  }

  gz_header header{};
  header.time = 0;
  header.os = 255;
  deflateSetHeader(&stream, &header);

  std::string out;
  std::array<unsigned char, 16384> buffer;
  stream.next_in =
      reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  stream.avail_in = static_cast<uInt>(data.size());
  int rc = Z_OK;
  do {
    stream.next_out = buffer.data();
    stream.avail_out = static_cast<uInt>(buffer.size());
    rc = deflate(&stream, Z_FINISH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      deflateEnd(&stream);
      throw std::runtime_error("deflate failed");
    }
    out.append(reinterpret_cast<char*>(buffer.data()),
               buffer.size() - stream.avail_out);
  } while (rc != Z_STREAM_END);
  deflateEnd(&stream);
  return out;
}

std::string gzip_decompress(const std::string& data) {
  z_stream stream{};
  if (inflateInit2(&stream, 15 + 16) != Z_OK) {
    throw std::runtime_error("inflateInit2 failed");
  }

  std::string out;
  std::array<unsigned char, 16384> buffer;
  stream.next_in =
      reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  stream.avail_in = static_cast<uInt>(data.size());
  int rc = Z_OK;
  do {
    stream.next_out = buffer.data();
    stream.avail_out = static_cast<uInt>(buffer.size());
    rc = inflate(&stream, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&stream);
      throw std::runtime_error("inflate failed: corrupt gzip data");
    }
    out.append(reinterpret_cast<char*>(buffer.data()),
               buffer.size() - stream.avail_out);
  } while (rc != Z_STREAM_END);
  inflateEnd(&stream);
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool file_exists(const std::string& path) {
  return std::filesystem::exists(path);
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  std::filesystem::path target(path);
  if (target.has_parent_path()) {
    std::filesystem::create_directories(target.parent_path());
  }
  std::string temp = path + ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + temp + " for writing");
    out.write(contents.data(),
              static_cast<std::streamsize>(contents.size()));
    if (!out) {
      throw std::runtime_error("short write to " + temp);
    }
  }
  std::filesystem::rename(temp, target);
}

ArtifactCache::ArtifactCache(std::string dir, bool enabled, bool compress)
    : dir_(std::move(dir)), enabled_(enabled), compress_(compress) {
  if (enabled_) std::filesystem::create_directories(dir_);
}

std::string ArtifactCache::make_key(std::string_view content,
                                    std::string_view salt) {
  std::string keyed(content);
  keyed.push_back('\x1f');
  keyed.append(salt);
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(fnv1a64(keyed)));
  return hex;
}

std::string ArtifactCache::path_for(const std::string& key) const {
  return dir_ + "/" + key + (compress_ ? ".gz" : ".dat");
}

std::optional<std::string> ArtifactCache::get(const std::string& key) {
  if (!enabled_) return std::nullopt;
  std::string path = path_for(key);
  if (!file_exists(path)) {
    misses_ += 1;
    return std::nullopt;
  }
  std::string raw = read_text_file(path);
  hits_ += 1;
  return compress_ ? gzip_decompress(raw) : raw;
}

void ArtifactCache::put(const std::string& key, const std::string& value) {
  if (!enabled_) return;
  write_file_atomic(path_for(key), compress_ ? gzip_compress(value) : value);
}

}  // namespace semweave
