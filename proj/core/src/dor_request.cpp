#include "greenmeta/dor_request.hpp"

#include <numeric>

#include "greenmeta/error.hpp"

namespace greenmeta {

namespace {

class BitWriter {
public:
  explicit BitWriter(WireMessage& out) : out_(out) { out_.fill(0); }

  void write_code(std::uint32_t value, unsigned bits) {
    for (unsigned i = bits; i-- > 0;) {
      if ((value >> i) & 1u) {
        out_[pos_ / 8] |= static_cast<std::uint8_t>(0x80u >> (pos_ % 8));
      }
      ++pos_;
    }
  }
  void write_flag(bool flag) { write_code(flag ? 1u : 0u, 1); }

  std::size_t position() const { return pos_; }

private:
  WireMessage& out_;
  std::size_t pos_ = 0;
};

class BitReader {
public:
  explicit BitReader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint32_t read_code(unsigned bits) {
    std::uint32_t value = 0;
    for (unsigned i = 0; i < bits; ++i) {
      const unsigned bit = (in_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
      value = (value << 1) | bit;
      ++pos_;
    }
    return value;
  }
  bool read_flag() { return read_code(1) != 0; }

private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

void check_field(const char* name, unsigned value, unsigned max) {
  if (value > max) {
    throw Error(ErrorCode::FieldOutOfRange,
                std::string(name) + " = " + std::to_string(value) + " exceeds " +
                    std::to_string(max));
  }
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

}  // namespace

Percent Percent::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return Percent{num / g, den / g};
}

std::string to_string(const Percent& p) {
  if (p.den == 1) return std::to_string(p.num);
  return std::to_string(p.num) + "/" + std::to_string(p.den);
}

Percent legacy_percent(std::int8_t x) {
  return Percent::make(100 * static_cast<std::int64_t>(x), 128);
}

OpsReductionCode::OpsReductionCode(unsigned code) {
  if (code > kMax) {
    throw Error(ErrorCode::OutOfRange,
                "dec_ops_reduction_req code " + std::to_string(code) + " exceeds 63");
  }
  code_ = static_cast<std::uint8_t>(code);
}

int code_to_percent_v3(OpsReductionCode code) {
  return 2 * static_cast<int>(code.value()) + kMinOpsPercent;
}

OpsReductionCode percent_to_code_v3(int percent) {
  if (percent < kMinOpsPercent || percent > kMaxOpsPercent) {
    throw Error(ErrorCode::OutOfRange,
                "operations change " + std::to_string(percent) + "% outside [-62, 64]");
  }
  if (percent % 2 != 0) {
    throw Error(ErrorCode::OddPercentage,
                "operations change " + std::to_string(percent) + "% is not even");
  }
  return OpsReductionCode(static_cast<unsigned>((percent - kMinOpsPercent) / 2));
}

void validate(const DorRequest& req) {
  check_field("dec_ops_reduction_req", req.ops_reduction.value(), OpsReductionCode::kMax);
  check_field("pic_width_in_luma_samples", req.pic_width_in_luma_samples,
              DorRequest::kMaxPicDimension);
  check_field("pic_height_in_luma_samples", req.pic_height_in_luma_samples,
              DorRequest::kMaxPicDimension);
  check_field("frames_per_second", req.frames_per_second, DorRequest::kMaxFramesPerSecond);
}

WireMessage encode_message(const DorRequest& req) {
  validate(req);
  WireMessage msg{};
  BitWriter w(msg);
  w.write_code(req.ops_reduction.value(), 6);
  w.write_flag(req.disable_loop_filters);
  w.write_flag(req.disable_bi_prediction);
  w.write_flag(req.disable_intra_in_B);
  w.write_flag(req.disable_fracpel_filtering);
  w.write_code(req.pic_width_in_luma_samples, 14);
  w.write_code(req.pic_height_in_luma_samples, 14);
  w.write_code(req.frames_per_second, 10);
  return msg;
}

DorRequest decode_message(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < DorRequest::kWireBytes) {
    throw Error(ErrorCode::Truncated, "DOR-req needs 6 bytes, got " + std::to_string(bytes.size()));
  }
  BitReader r(bytes.first(DorRequest::kWireBytes));
  DorRequest req;
  req.ops_reduction = OpsReductionCode(r.read_code(6));
  req.disable_loop_filters = r.read_flag();
  req.disable_bi_prediction = r.read_flag();
  req.disable_intra_in_B = r.read_flag();
  req.disable_fracpel_filtering = r.read_flag();
  req.pic_width_in_luma_samples = static_cast<std::uint16_t>(r.read_code(14));
  req.pic_height_in_luma_samples = static_cast<std::uint16_t>(r.read_code(14));
  req.frames_per_second = static_cast<std::uint16_t>(r.read_code(10));
  return req;
}

std::string to_hex(const WireMessage& msg) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(2 * msg.size());
  for (std::uint8_t b : msg) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0F]);
  }
  return out;
}

WireMessage from_hex(std::string_view hex) {
  if (hex.size() != 2 * DorRequest::kWireBytes) {
    throw Error(ErrorCode::ParseError,
                "expected 12 hex characters, got " + std::to_string(hex.size()));
  }
  WireMessage msg{};
  for (std::size_t i = 0; i < msg.size(); ++i) {
    const int hi = hex_digit(hex[2 * i]);
    const int lo = hex_digit(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw Error(ErrorCode::ParseError, "invalid hex digit in '" + std::string(hex) + "'");
    }
    msg[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return msg;
}

}  // namespace greenmeta
