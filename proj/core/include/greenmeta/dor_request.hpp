#pragma once

// Decoder-operations-reduction request (DOR-req) message and its 48-bit wire
// codec.
//
// Wire layout, MSB-first, no padding:
//
//   dec_ops_reduction_req        6
//   disable_loop_filters         1
//   disable_bi_prediction        1
//   disable_intra_in_B           1
//   disable_fracpel_filtering    1
//   pic_width_in_luma_samples   14
//   pic_height_in_luma_samples  14
//   frames_per_second           10
//
// A zero width, height or frame rate means "no change requested".

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace greenmeta {

/// Exact percentage value num/den (den > 0, reduced).
struct Percent {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Percent make(std::int64_t num, std::int64_t den);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Percent&, const Percent&) = default;
};

std::string to_string(const Percent& p);

/// Legacy 8-bit dec_ops_reduction_req: c = 100 * x / 128, evaluated exactly.
Percent legacy_percent(std::int8_t x);

/// 6-bit codeword of the v3 dec_ops_reduction_req element.
class OpsReductionCode {
public:
  static constexpr unsigned kMax = 63;
  static constexpr unsigned kNeutral = 31;  // 0 %

  constexpr OpsReductionCode() = default;
  explicit OpsReductionCode(unsigned code);

  constexpr unsigned value() const { return code_; }
  friend constexpr auto operator<=>(const OpsReductionCode&, const OpsReductionCode&) = default;

private:
  std::uint8_t code_ = kNeutral;
};

inline constexpr int kMinOpsPercent = -62;
inline constexpr int kMaxOpsPercent = 64;

/// 2 * code - 62; always an even integer in [-62, 64].
int code_to_percent_v3(OpsReductionCode code);

/// Inverse of code_to_percent_v3. Throws OddPercentage or OutOfRange.
OpsReductionCode percent_to_code_v3(int percent);

struct DorRequest {
  static constexpr unsigned kMaxPicDimension = 16383;
  static constexpr unsigned kMaxFramesPerSecond = 1023;
  static constexpr std::size_t kWireBytes = 6;

  OpsReductionCode ops_reduction;
  bool disable_loop_filters = false;
  bool disable_bi_prediction = false;
  bool disable_intra_in_B = false;
  bool disable_fracpel_filtering = false;
  std::uint16_t pic_width_in_luma_samples = 0;
  std::uint16_t pic_height_in_luma_samples = 0;
  std::uint16_t frames_per_second = 0;

  friend bool operator==(const DorRequest&, const DorRequest&) = default;
};

using WireMessage = std::array<std::uint8_t, DorRequest::kWireBytes>;

/// Throws FieldOutOfRange naming the first offending field.
void validate(const DorRequest& req);

WireMessage encode_message(const DorRequest& req);

/// Consumes exactly the first six bytes. Throws Truncated on shorter input.
DorRequest decode_message(std::span<const std::uint8_t> bytes);

/// Uppercase, 12 characters, no separators.
std::string to_hex(const WireMessage& msg);

/// Accepts upper- or lowercase; requires exactly 12 hex digits.
WireMessage from_hex(std::string_view hex);

}  // namespace greenmeta
