#pragma once

// Raw per-rate-point measurements and their reduction to a DeviceProfile.
//
// CSV layout (header required, one row per rate point):
//
//   action,sequence,quality_metric,rate,quality,energy_ref,energy_test
//
// Rows whose action is "reference" give each sequence's anchor RD curve; their
// energy columns are ignored. Every other action uses the text form accepted
// by parse_action().

#include <iosfwd>
#include <string>
#include <vector>

#include "greenmeta/adaptation.hpp"

namespace greenmeta {

inline constexpr std::string_view kReferenceAction = "reference";

struct MeasurementRow {
  std::string action;
  std::string sequence;
  std::string quality_metric;
  double rate = 0.0;
  double quality = 0.0;
  double energy_ref = 0.0;
  double energy_test = 0.0;
};

std::vector<MeasurementRow> read_measurements_csv(std::istream& in);

/// Per action: savings is the mean over sequences of the mean per-rate-point
/// relative savings; BDR is the mean of per-sequence BD-rates, unavailable if
/// any sequence's curves do not overlap. Throws MisalignedMeasurements for an
/// empty table, a sequence without reference curve, or mixed quality metrics.
DeviceProfile build_profile(const std::vector<MeasurementRow>& rows, DecoderBackend backend,
                            std::string content_class, std::string name = {});

}  // namespace greenmeta
