#pragma once

// Device profiles calibrated from published decoding-energy measurements.
//
//   sw-classB, sw-classE, hw-classB, hw-classE
//       HEVC software/hardware decoding on an RK3588 board, JVET class B
//       (1080p) and class E (720p) content.
//   vvdec-st, vvdec-mt, vtm-st
//       VVC software decoding on an Intel i7-8700, JVET HD content.
//   webapp-hw
//       Whole-laptop power of a WebRTC conferencing client (H.264, hardware
//       decoding), 1080p30 source.
//
// Frame-rate rows assume a 60 fps source for the JVET profiles.

#include <string_view>
#include <vector>

#include "greenmeta/adaptation.hpp"

namespace greenmeta {

struct VideoFormat {
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  std::uint16_t fps = 0;

  friend bool operator==(const VideoFormat&, const VideoFormat&) = default;
};

struct BuiltinProfile {
  std::string_view key;
  DeviceProfile profile;
  VideoFormat native;
};

const std::vector<BuiltinProfile>& builtin_profiles();

/// Throws InvalidArgument for an unknown key.
const BuiltinProfile& builtin_profile(std::string_view key);

}  // namespace greenmeta
