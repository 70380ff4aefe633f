#ifndef SEMWEAVE_CACHE_HPP
#define SEMWEAVE_CACHE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace semweave {

std::uint64_t fnv1a64(std::string_view data);

// Deterministic gzip container (header mtime zeroed).
std::string gzip_compress(const std::string& data);
std::string gzip_decompress(const std::string& data);

std::string read_text_file(const std::string& path);  // throws FileNotFound
bool file_exists(const std::string& path);

// Writes via a temp file in the same directory, then renames over the
// destination, so readers never observe partial content.
void write_file_atomic(const std::string& path, const std::string& contents);

// Content-addressed artifact store used by the parse stage. Keys are
// hex hashes of (content, salt); values are stored one file per key,
// optionally gzip-compressed.
class ArtifactCache {
 public:
  ArtifactCache(std::string dir, bool enabled, bool compress);

  static std::string make_key(std::string_view content, std::string_view salt);

  std::optional<std::string> get(const std::string& key);
  void put(const std::string& key, const std::string& value);

  bool enabled() const { return enabled_; }
  int hits() const { return hits_; }
  int misses() const { return misses_; }

 private:
  std::string path_for(const std::string& key) const;

  std::string dir_;
  bool enabled_;
  bool compress_;
  int hits_ = 0;
  int misses_ = 0;
};

}  // namespace semweave

#endif  // SEMWEAVE_CACHE_HPP
