#include "greenmeta/adaptation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace greenmeta {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::uint16_t parse_u16(std::string_view text, std::string_view what) {
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value > 0xFFFF) {
    throw Error(ErrorCode::ParseError, "bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return static_cast<std::uint16_t>(value);
}

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const char* first = text.data();
  if (!text.empty() && text.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::ParseError, "bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

// Codeword multipliers 1 + c/100, largest first; the 0 % code never helps.
struct Codebook {
  std::vector<int> percents;
  std::vector<double> multipliers;

  Codebook() {
    for (int c = kMaxOpsPercent; c >= kMinOpsPercent; c -= 2) {
      if (c == 0) continue;
      percents.push_back(c);
      multipliers.push_back(1.0 + c / 100.0);
    }
  }
};

const Codebook& codebook() {
  static const Codebook book;
  return book;
}

class RestorationSearch {
public:
  RestorationSearch(double factor, double lo, double hi) : factor_(factor), lo_(lo), hi_(hi) {}

  // Exactly `steps` codewords, descending; first hit in DFS order.
  bool find(int steps, std::vector<int>& out) {
    path_.clear();
    if (!dfs(steps, 0, factor_)) return false;
    out = path_;
    return true;
  }

  // Branch and bound for min |factor * P - 1| over sequences of <= max_steps.
  double best_residual(int max_steps, std::vector<int>& best_seq) {
    best_ = std::abs(factor_ - 1.0);
    best_seq_.clear();
    path_.clear();
    bnb(max_steps, 0, factor_);
    best_seq = best_seq_;
    return best_;
  }

private:
  bool dfs(int remaining, std::size_t first, double p) {
    if (remaining == 0) return p >= lo_ && p <= hi_;
    const auto& book = codebook();
    const double floor_mult = book.multipliers.back();
    for (std::size_t j = first; j < book.multipliers.size(); ++j) {
      const double m = book.multipliers[j];
      if (p * std::pow(m, remaining) < lo_) break;
      if (p * m * std::pow(floor_mult, remaining - 1) > hi_) continue;
      path_.push_back(book.percents[j]);
      if (dfs(remaining - 1, j, p * m)) return true;
      path_.pop_back();
    }
    return false;
  }

  void bnb(int remaining, std::size_t first, double p) {
    const double r = std::abs(p - 1.0);
    if (r < best_) {
      best_ = r;
      best_seq_ = path_;
    }
    if (remaining == 0) return;
    const auto& book = codebook();
    const double floor_mult = book.multipliers.back();
    for (std::size_t j = first; j < book.multipliers.size(); ++j) {
      const double m = book.multipliers[j];
      const double upper = p * std::pow(std::max(m, 1.0), remaining);
      if (upper <= 1.0 - best_) break;
      const double lower = p * m * std::pow(floor_mult, remaining - 1);
      if (lower >= 1.0 + best_) continue;
      path_.push_back(book.percents[j]);
      bnb(remaining - 1, j, p * m);
      path_.pop_back();
    }
  }

  double factor_;
  double lo_;
  double hi_;
  std::vector<int> path_;
  double best_ = 0.0;
  std::vector<int> best_seq_;
};

double bdr_rank(const SavingsEntry& e) {
  return e.bdr_pct ? *e.bdr_pct : std::numeric_limits<double>::infinity();
}

}  // namespace

std::string_view to_string(LoopFilter f) {
  switch (f) {
    case LoopFilter::All: return "all";
    case LoopFilter::Dbf: return "dbf";
    case LoopFilter::Sao: return "sao";
    case LoopFilter::Alf: return "alf";
  }
  return "all";
}

void validate(const AdaptationAction& action) {
  std::visit(Overloaded{
                 [](const OpsReduction& a) { percent_to_code_v3(a.percent); },
                 [](const DisableLoopFilters&) {},
                 [](const DisableBiPrediction&) {},
                 [](const DisableIntraInB&) {},
                 [](const DisableFracpel&) {},
                 [](const SetResolution& a) {
                   if (a.width == 0 || a.height == 0 || a.width > DorRequest::kMaxPicDimension ||
                       a.height > DorRequest::kMaxPicDimension) {
                     throw Error(ErrorCode::FieldOutOfRange,
                                 "resolution " + std::to_string(a.width) + "x" +
                                     std::to_string(a.height) + " not in [1, 16383]");
                   }
                 },
                 [](const SetFps& a) {
                   if (a.fps == 0 || a.fps > DorRequest::kMaxFramesPerSecond) {
                     throw Error(ErrorCode::FieldOutOfRange,
                                 "frame rate " + std::to_string(a.fps) + " not in [1, 1023]");
                   }
                 },
             },
             action);
}

DorRequest to_request(const AdaptationAction& action) {
  validate(action);
  DorRequest req;
  std::visit(Overloaded{
                 [&](const OpsReduction& a) { req.ops_reduction = percent_to_code_v3(a.percent); },
                 [&](const DisableLoopFilters&) { req.disable_loop_filters = true; },
                 [&](const DisableBiPrediction&) { req.disable_bi_prediction = true; },
                 [&](const DisableIntraInB&) { req.disable_intra_in_B = true; },
                 [&](const DisableFracpel&) { req.disable_fracpel_filtering = true; },
                 [&](const SetResolution& a) {
                   req.pic_width_in_luma_samples = a.width;
                   req.pic_height_in_luma_samples = a.height;
                 },
                 [&](const SetFps& a) { req.frames_per_second = a.fps; },
             },
             action);
  return req;
}

std::string to_string(const AdaptationAction& action) {
  return std::visit(
      Overloaded{
          [](const OpsReduction& a) { return "ops:" + std::to_string(a.percent); },
          [](const DisableLoopFilters& a) {
            return a.filter == LoopFilter::All
                       ? std::string("loop_filters")
                       : "loop_filters:" + std::string(to_string(a.filter));
          },
          [](const DisableBiPrediction&) { return std::string("bi_pred"); },
          [](const DisableIntraInB&) { return std::string("intra_in_B"); },
          [](const DisableFracpel&) { return std::string("fracpel"); },
          [](const SetResolution& a) {
            return "res:" + std::to_string(a.width) + "x" + std::to_string(a.height);
          },
          [](const SetFps& a) { return "fps:" + std::to_string(a.fps); },
      },
      action);
}

AdaptationAction parse_action(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const bool has_arg = colon != std::string_view::npos;

  AdaptationAction action;
  if (head == "ops" && has_arg) {
    action = OpsReduction{parse_int(arg, "operations percentage")};
  } else if (head == "loop_filters") {
    LoopFilter f = LoopFilter::All;
    if (has_arg) {
      if (arg == "all") f = LoopFilter::All;
      else if (arg == "dbf") f = LoopFilter::Dbf;
      else if (arg == "sao") f = LoopFilter::Sao;
      else if (arg == "alf") f = LoopFilter::Alf;
      else throw Error(ErrorCode::ParseError, "unknown loop filter '" + std::string(arg) + "'");
    }
    action = DisableLoopFilters{f};
  } else if (head == "bi_pred" && !has_arg) {
    action = DisableBiPrediction{};
  } else if (head == "intra_in_B" && !has_arg) {
    action = DisableIntraInB{};
  } else if (head == "fracpel" && !has_arg) {
    action = DisableFracpel{};
  } else if (head == "res" && has_arg) {
    const auto x = arg.find('x');
    if (x == std::string_view::npos) {
      throw Error(ErrorCode::ParseError, "resolution must be WIDTHxHEIGHT: '" + std::string(arg) + "'");
    }
    action = SetResolution{parse_u16(arg.substr(0, x), "width"), parse_u16(arg.substr(x + 1), "height")};
  } else if (head == "fps" && has_arg) {
    action = SetFps{parse_u16(arg, "frame rate")};
  } else {
    throw Error(ErrorCode::ParseError, "unknown action '" + std::string(text) + "'");
  }
  validate(action);
  return action;
}

std::string_view to_string(DecoderBackend b) {
  return b == DecoderBackend::Hardware ? "hardware" : "software";
}

DecoderBackend parse_backend(std::string_view text) {
  if (text == "software") return DecoderBackend::Software;
  if (text == "hardware") return DecoderBackend::Hardware;
  throw Error(ErrorCode::ParseError, "decoder backend must be 'software' or 'hardware'");
}

const SavingsEntry* DeviceProfile::find(const AdaptationAction& action) const {
  for (const auto& e : entries) {
    if (e.action == action) return &e;
  }
  return nullptr;
}

void validate(const DeviceProfile& profile) {
  for (std::size_t i = 0; i < profile.entries.size(); ++i) {
    const auto& e = profile.entries[i];
    validate(e.action);
    if (!(e.savings_pct > -100.0 && e.savings_pct < 100.0)) {
      throw Error(ErrorCode::OutOfRange,
                  "savings for " + to_string(e.action) + " must lie in (-100, 100)");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (profile.entries[j].action == e.action) {
        throw Error(ErrorCode::InvalidArgument, "duplicate profile entry " + to_string(e.action));
      }
    }
  }
}

double cumulative_ops_factor(std::span<const double> percents, OpsRangeMode mode) {
  const double lo = mode == OpsRangeMode::V3 ? kMinOpsPercent : -100.0;
  const double hi = mode == OpsRangeMode::V3 ? kMaxOpsPercent : 100.0;
  double factor = 1.0;
  for (double c : percents) {
    if (!(c >= lo && c <= hi)) {
      throw Error(ErrorCode::OutOfRange, "operations change " + std::to_string(c) + "% out of range");
    }
    factor *= 1.0 + c / 100.0;
  }
  return factor;
}

bool single_request_invertible(int percent) {
  if (percent < kMinOpsPercent || percent > kMaxOpsPercent) {
    throw Error(ErrorCode::OutOfRange,
                "operations change " + std::to_string(percent) + "% outside [-62, 64]");
  }
  for (int c = kMinOpsPercent; c <= kMaxOpsPercent; c += 2) {
    if ((100 + percent) * (100 + c) == 10000) return true;
  }
  return false;
}

UnreachableError::UnreachableError(double best_residual, std::vector<int> best_sequence, int max_steps)
    : Error(ErrorCode::Unreachable,
            "no sequence of at most " + std::to_string(max_steps) +
                " requests reaches the tolerance; best residual " + std::to_string(best_residual)),
      best_residual_(best_residual),
      best_sequence_(std::move(best_sequence)) {}

std::vector<int> restoration_plan(double current_factor, double tolerance,
                                  std::optional<int> max_steps) {
  if (!(current_factor > 0.0 && current_factor <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "current factor must lie in (0, 1]");
  }
  if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");

  const double lo = 1.0 - tolerance;
  const double hi = 1.0 + tolerance;
  if (current_factor >= lo) return {};

  const double top = codebook().multipliers.front();
  int lower_bound = 1;
  while (current_factor * std::pow(top, lower_bound) < lo) ++lower_bound;
  const int limit = max_steps.value_or(lower_bound + 2);
  if (limit < 0) throw Error(ErrorCode::InvalidArgument, "max_steps must be non-negative");

  RestorationSearch search(current_factor, lo, hi);
  std::vector<int> plan;
  for (int k = lower_bound; k <= limit; ++k) {
    if (search.find(k, plan)) return plan;
  }
  std::vector<int> best_seq;
  const double residual = search.best_residual(limit, best_seq);
  throw UnreachableError(residual, std::move(best_seq), limit);
}

PlanResult plan_request(const DeviceProfile& profile, const PowerTarget& target) {
  if (profile.entries.empty()) throw Error(ErrorCode::EmptyProfile, "device profile has no entries");
  if (!(target.required_savings > 0.0 && target.required_savings < 100.0)) {
    throw Error(ErrorCode::OutOfRange, "required savings must lie in (0, 100)");
  }

  const auto within_bdr = [&](const SavingsEntry& e) {
    return !target.max_bdr || (e.bdr_pct && *e.bdr_pct <= *target.max_bdr);
  };

  const SavingsEntry* chosen = nullptr;
  for (const auto& e : profile.entries) {
    if (e.savings_pct < target.required_savings || !within_bdr(e)) continue;
    if (!chosen || bdr_rank(e) < bdr_rank(*chosen) ||
        (bdr_rank(e) == bdr_rank(*chosen) && e.savings_pct > chosen->savings_pct)) {
      chosen = &e;
    }
  }
  if (chosen) return PlanResult{*chosen, to_request(chosen->action), false};

  const bool any_within = std::any_of(profile.entries.begin(), profile.entries.end(), within_bdr);
  for (const auto& e : profile.entries) {
    if (any_within && !within_bdr(e)) continue;
    if (!chosen || e.savings_pct > chosen->savings_pct) chosen = &e;
  }
  return PlanResult{*chosen, to_request(chosen->action), true};
}

}  // namespace greenmeta
