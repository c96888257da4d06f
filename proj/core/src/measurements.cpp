#include "greenmeta/measurements.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <set>

#include "greenmeta/analysis.hpp"
#include "greenmeta/error.hpp"

namespace greenmeta {

namespace {

constexpr std::string_view kColumns[] = {"action", "sequence", "quality_metric", "rate",
                                         "quality", "energy_ref", "energy_test"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double to_double(std::string_view s, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line_no) + ": '" + std::string(s) + "' is not a number");
  }
  return v;
}

RdCurve make_curve(std::vector<RdPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const RdPoint& a, const RdPoint& b) { return a.quality < b.quality; });
  return RdCurve(std::move(pts));
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

std::vector<MeasurementRow> read_measurements_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<MeasurementRow> rows;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const auto fields = split(line);
    if (!have_header) {
      if (fields.size() != std::size(kColumns) || !std::equal(fields.begin(), fields.end(), std::begin(kColumns))) {
        throw Error(ErrorCode::ParseError,
                    "header must be action,sequence,quality_metric,rate,quality,energy_ref,energy_test");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != std::size(kColumns)) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 7 fields, got " +
                                             std::to_string(fields.size()));
    }
    MeasurementRow r;
    r.action = fields[0];
    r.sequence = fields[1];
    r.quality_metric = fields[2];
    r.rate = to_double(fields[3], line_no);
    r.quality = to_double(fields[4], line_no);
    r.energy_ref = to_double(fields[5], line_no);
    r.energy_test = to_double(fields[6], line_no);
    rows.push_back(std::move(r));
  }
  if (!have_header) throw Error(ErrorCode::ParseError, "empty measurement file");
  return rows;
}

DeviceProfile build_profile(const std::vector<MeasurementRow>& rows, DecoderBackend backend,
                            std::string content_class, std::string name) {
  if (rows.empty()) throw Error(ErrorCode::MisalignedMeasurements, "no measurement rows");

  const std::string& metric = rows.front().quality_metric;
  std::map<std::string, std::vector<RdPoint>> reference;
  // action text -> sequence -> rows; action order follows first appearance.
  std::vector<std::string> action_order;
  std::map<std::string, std::map<std::string, std::vector<const MeasurementRow*>>> by_action;

  for (const auto& r : rows) {
    if (r.quality_metric != metric) {
      throw Error(ErrorCode::MisalignedMeasurements,
                  "mixed quality metrics '" + metric + "' and '" + r.quality_metric + "'");
    }
    if (r.action == kReferenceAction) {
      reference[r.sequence].push_back({r.rate, r.quality});
      continue;
    }
    if (!by_action.contains(r.action)) action_order.push_back(r.action);
    by_action[r.action][r.sequence].push_back(&r);
  }
  if (action_order.empty()) throw Error(ErrorCode::MisalignedMeasurements, "no action rows");

  DeviceProfile profile;
  profile.name = std::move(name);
  profile.decoder_backend = backend;
  profile.content_class = std::move(content_class);

  for (const auto& action_text : action_order) {
    SavingsEntry entry;
    entry.action = parse_action(action_text);
    entry.label = action_text;

    std::vector<double> seq_savings;
    std::vector<double> seq_bdr;
    bool bdr_available = true;
    for (const auto& [sequence, points] : by_action.at(action_text)) {
      const auto ref_it = reference.find(sequence);
      if (ref_it == reference.end()) {
        throw Error(ErrorCode::MisalignedMeasurements,
                    "action '" + action_text + "' has rows for sequence '" + sequence +
                        "' but no reference curve");
      }
      std::vector<double> point_savings;
      std::vector<RdPoint> test_pts;
      for (const auto* r : points) {
        point_savings.push_back(relative_savings({sequence, r->energy_ref}, {action_text, r->energy_test}));
        test_pts.push_back({r->rate, r->quality});
      }
      seq_savings.push_back(mean(point_savings));

      if (ref_it->second.size() < 2 || test_pts.size() < 2) {
        throw Error(ErrorCode::MisalignedMeasurements,
                    "sequence '" + sequence + "' needs at least 2 rate points per curve");
      }
      const auto bdr = bd_rate(make_curve(ref_it->second), make_curve(std::move(test_pts)));
      if (bdr) {
        seq_bdr.push_back(*bdr);
      } else {
        bdr_available = false;
      }
    }
    entry.savings_pct = mean(seq_savings);
    if (bdr_available) entry.bdr_pct = mean(seq_bdr);
    profile.entries.push_back(std::move(entry));
  }
  validate(profile);
  return profile;
}

}  // namespace greenmeta
