#include "greenmeta/builtin_profiles.hpp"

#include <optional>

namespace greenmeta {

namespace {

constexpr std::optional<double> kNa = std::nullopt;

SavingsEntry row(AdaptationAction action, double savings, std::optional<double> bdr,
                 std::string label) {
  return SavingsEntry{action, savings, bdr, std::move(label)};
}

// One column pair of the HEVC measurement table.
struct HevcColumn {
  double derdo, no_dbf, no_sao, no_bi, no_intra_in_b, no_fracpel;
  double res720, res540, res360, half_fps, third_fps, quarter_fps;
};

struct HevcBdr {
  std::optional<double> derdo, no_dbf, no_sao, no_bi, no_intra_in_b, no_fracpel;
  std::optional<double> res720, res540, res360, half_fps, third_fps, quarter_fps;
};

DeviceProfile hevc_profile(std::string name, DecoderBackend backend, std::string content_class,
                           int derdo_percent, const HevcColumn& s, const HevcBdr& b) {
  DeviceProfile p;
  p.name = std::move(name);
  p.decoder_backend = backend;
  p.content_class = std::move(content_class);
  p.entries = {
      row(OpsReduction{derdo_percent}, s.derdo, b.derdo, "derdo"),
      row(DisableLoopFilters{LoopFilter::Dbf}, s.no_dbf, b.no_dbf, "no DBF"),
      row(DisableLoopFilters{LoopFilter::Sao}, s.no_sao, b.no_sao, "no SAO"),
      row(DisableBiPrediction{}, s.no_bi, b.no_bi, "no Bi"),
      row(DisableIntraInB{}, s.no_intra_in_b, b.no_intra_in_b, "no Intra In B"),
      row(DisableFracpel{}, s.no_fracpel, b.no_fracpel, "no fracpel"),
      row(SetResolution{1280, 720}, s.res720, b.res720, "Res: 720p"),
      row(SetResolution{960, 540}, s.res540, b.res540, "Res: 540p"),
      row(SetResolution{640, 360}, s.res360, b.res360, "Res: 360p"),
      row(SetFps{30}, s.half_fps, b.half_fps, "half fps"),
      row(SetFps{20}, s.third_fps, b.third_fps, "third fps"),
      row(SetFps{15}, s.quarter_fps, b.quarter_fps, "quarter fps"),
  };
  return p;
}

DeviceProfile vvc_profile(std::string name, double dbf, double sao, double alf, double bi) {
  DeviceProfile p;
  p.name = std::move(name);
  p.decoder_backend = DecoderBackend::Software;
  p.content_class = "JVET-HD";
  p.entries = {
      row(DisableLoopFilters{LoopFilter::Dbf}, dbf, 0.73, "DBF"),
      row(DisableLoopFilters{LoopFilter::Sao}, sao, 0.19, "SAO"),
      row(DisableLoopFilters{LoopFilter::Alf}, alf, 5.79, "ALF"),
      row(DisableBiPrediction{}, bi, 3.94, "Bi-pred."),
  };
  return p;
}

std::vector<BuiltinProfile> make_profiles() {
  const HevcBdr bdr_b{56.43, 20.47, 12.57, 78.97, 14.05, kNa, 72.65, kNa, kNa, kNa, kNa, kNa};
  const HevcBdr bdr_e{37.24, 18.13, 9.64, 81.03, 10.36, 130.74, 0.0, 46.44, kNa, 38.06, 95.27, kNa};

  const HevcColumn sw_b{35.76, 16.64, 6.36, 16.57, 3.79, 40.28, 58.32, 77.14, 89.64, 43.07, 58.69, 66.96};
  const HevcColumn sw_e{28.21, 7.96, 0.94, 32.97, 0.03, 24.00, 0.0, 48.77, 77.92, 43.76, 60.19, 68.43};
  const HevcColumn hw_b{3.70, 2.59, 1.81, 6.88, -0.91, 7.61, 47.27, 64.55, 78.21, 43.71, 58.27, 66.04};
  const HevcColumn hw_e{1.86, -0.40, 0.20, 7.48, 0.43, 2.11, 0.0, 34.82, 61.95, 44.76, 60.06, 67.67};

  const VideoFormat hd60{1920, 1080, 60};
  const VideoFormat p720_60{1280, 720, 60};

  DeviceProfile webapp;
  webapp.name = "webapp-hw";
  webapp.decoder_backend = DecoderBackend::Hardware;
  webapp.content_class = "Johnny-1080p30";
  webapp.entries = {
      row(SetFps{20}, 4.97, kNa, "20 fps @ 1080p"),
      row(SetFps{10}, 17.03, kNa, "10 fps @ 1080p"),
      row(SetResolution{1280, 720}, 1.65, kNa, "720p @ 30 fps"),
      row(SetResolution{960, 540}, 3.55, kNa, "540p @ 30 fps"),
      row(SetResolution{640, 360}, 9.11, kNa, "360p @ 30 fps"),
  };

  return {
      {"sw-classB", hevc_profile("sw-classB", DecoderBackend::Software, "ClassB", -36, sw_b, bdr_b), hd60},
      {"sw-classE", hevc_profile("sw-classE", DecoderBackend::Software, "ClassE", -28, sw_e, bdr_e), p720_60},
      {"hw-classB", hevc_profile("hw-classB", DecoderBackend::Hardware, "ClassB", -36, hw_b, bdr_b), hd60},
      {"hw-classE", hevc_profile("hw-classE", DecoderBackend::Hardware, "ClassE", -28, hw_e, bdr_e), p720_60},
      {"vvdec-st", vvc_profile("vvdec-st", 13.03, 2.01, 14.14, 3.74), hd60},
      {"vvdec-mt", vvc_profile("vvdec-mt", 5.88, 0.32, 12.85, 1.82), hd60},
      {"vtm-st", vvc_profile("vtm-st", 10.47, 0.49, 7.08, 1.09), hd60},
      {"webapp-hw", std::move(webapp), VideoFormat{1920, 1080, 30}},
  };
}

}  // namespace

const std::vector<BuiltinProfile>& builtin_profiles() {
  static const std::vector<BuiltinProfile> profiles = make_profiles();
  return profiles;
}

const BuiltinProfile& builtin_profile(std::string_view key) {
  for (const auto& p : builtin_profiles()) {
    if (p.key == key) return p;
  }
  std::string known;
  for (const auto& p : builtin_profiles()) {
    if (!known.empty()) known += ", ";
    known += p.key;
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown built-in profile '" + std::string(key) + "' (known: " + known + ")");
}

}  // namespace greenmeta
