#ifndef LGQK_VERSION_HPP
#define LGQK_VERSION_HPP

namespace lgqk {

inline constexpr const char* kArtifactVersion = "lgqk 0.1.0";

}  // namespace lgqk

#endif  // LGQK_VERSION_HPP
