#ifndef LGQK_DIGEST_HPP
#define LGQK_DIGEST_HPP

#include <cstdint>
#include <cstring>
#include <span>
#include <string>

namespace lgqk {

/// FNV-1a over the byte image of a double sequence; hex string. Used to
/// stamp Gram matrices and fit results with the dataset they came from.
inline std::string content_digest(std::span<const double> values) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : values) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof(bits));
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffULL;
      h *= 0x100000001b3ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace lgqk

#endif  // LGQK_DIGEST_HPP
