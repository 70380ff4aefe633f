#ifndef SEMWEAVE_VERSION_HPP
#define SEMWEAVE_VERSION_HPP

namespace semweave {

// Participates in cache keys: bump to invalidate cached parse artifacts.
inline constexpr const char* kVersion = "0.1.0";

}  // namespace semweave

#endif  // SEMWEAVE_VERSION_HPP
