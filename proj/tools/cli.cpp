#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "greenmeta/adaptation.hpp"
#include "greenmeta/analysis.hpp"
#include "greenmeta/builtin_profiles.hpp"
#include "greenmeta/dor_request.hpp"
#include "greenmeta/energy_model.hpp"
#include "greenmeta/error.hpp"
#include "greenmeta/json_io.hpp"
#include "greenmeta/measurements.hpp"
#include "greenmeta/session.hpp"

namespace greenmeta::cli {

namespace {

using nlohmann::json;

enum class Format { Json, Text };

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void write_output(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text << '\n';
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + out_path + "'");
  f << text << '\n';
}

std::string request_table(const DorRequest& r) {
  std::ostringstream s;
  s << "dec_ops_reduction_req       " << r.ops_reduction.value() << " ("
    << code_to_percent_v3(r.ops_reduction) << "%)\n"
    << "disable_loop_filters        " << r.disable_loop_filters << '\n'
    << "disable_bi_prediction       " << r.disable_bi_prediction << '\n'
    << "disable_intra_in_B          " << r.disable_intra_in_B << '\n'
    << "disable_fracpel_filtering   " << r.disable_fracpel_filtering << '\n'
    << "pic_width_in_luma_samples   " << r.pic_width_in_luma_samples << '\n'
    << "pic_height_in_luma_samples  " << r.pic_height_in_luma_samples << '\n'
    << "frames_per_second           " << r.frames_per_second;
  return s.str();
}

std::string report_table(const SessionReport& rep) {
  std::ostringstream s;
  s << "   start_s      end_s   power_W    energy_J  active\n";
  for (const auto& seg : rep.final_state.segments) {
    std::string active;
    for (const auto& a : seg.active) {
      if (!active.empty()) active += ", ";
      active += a.action + " (" + fmt("%.2f", a.savings_pct) + "%" + (a.calibrated ? "" : ", uncalibrated") + ")";
    }
    s << fmt("%10.3f", seg.start_s) << ' ' << fmt("%10.3f", seg.end_s) << ' ' << fmt("%9.4f", seg.power_w)
      << ' ' << fmt("%11.4f", seg.energy_j) << "  " << (active.empty() ? "-" : active) << '\n';
  }
  const auto& l = rep.ledger();
  s << "baseline energy  " << fmt("%.4f", l.baseline_energy) << " J\n"
    << "actual energy    " << fmt("%.4f", l.actual_energy) << " J\n"
    << "realized savings " << fmt("%.4f", rep.realized_savings_pct) << " %\n"
    << "dynamic savings  " << fmt("%.4f", rep.dynamic_savings_pct) << " %";
  if (rep.battery_exhausted_at_s) s << "\nbattery empty at " << fmt("%.3f", *rep.battery_exhausted_at_s) << " s";
  return s.str();
}

RdCurve read_curve_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::vector<RdPoint> pts;
  bool header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "rate,quality") throw Error(ErrorCode::ParseError, path + ": header must be 'rate,quality'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::ParseError, path + ": bad line '" + line + "'");
    try {
      pts.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, path + ": bad line '" + line + "'");
    }
  }
  return RdCurve(std::move(pts));
}

DeviceProfile load_profile(const std::string& file, const std::string& builtin) {
  if (!builtin.empty()) return builtin_profile(builtin).profile;
  return json_io::profile_from_json(read_json(file));
}

std::string builtin_keys() {
  std::string keys;
  for (const auto& p : builtin_profiles()) {
    if (!keys.empty()) keys += ", ";
    keys += p.key;
  }
  return keys;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"DOR-req signalling, decoding-energy planning and session simulation"};
  app.name(args.empty() ? "greenmeta" : args.front());
  app.require_subcommand(1);
  app.fallthrough();

  Format format = Format::Json;
  bool format_given = false;
  app.add_option_function<std::string>(
         "--format",
         [&](const std::string& v) {
           format = v == "text" ? Format::Text : Format::Json;
           format_given = true;
         },
         "Output format")
      ->check(CLI::IsMember({"json", "text"}));

  // encode-req
  auto* enc = app.add_subcommand("encode-req", "Build a DOR-req and print it as 12 hex characters");
  int ops_pct = 0;
  std::optional<unsigned> ops_code;
  bool lf_off = false, bi_off = false, intra_off = false, fracpel_off = false;
  unsigned width = 0, height = 0, fps = 0;
  auto* pct_opt = enc->add_option("--ops-pct", ops_pct, "Change in decoder operations, even percent in [-62, 64]");
  enc->add_option("--ops-code", ops_code, "Raw 6-bit dec_ops_reduction_req codeword")->excludes(pct_opt);
  enc->add_flag("--loop-filters-off", lf_off, "Set disable_loop_filters");
  enc->add_flag("--bi-off", bi_off, "Set disable_bi_prediction");
  enc->add_flag("--intra-in-b-off", intra_off, "Set disable_intra_in_B");
  enc->add_flag("--fracpel-off", fracpel_off, "Set disable_fracpel_filtering");
  enc->add_option("--width", width, "pic_width_in_luma_samples (0 = no change)");
  enc->add_option("--height", height, "pic_height_in_luma_samples (0 = no change)");
  enc->add_option("--fps", fps, "frames_per_second (0 = no change)");

  // decode-req
  auto* dec = app.add_subcommand("decode-req", "Decode a 12-hex-character DOR-req");
  std::string hex;
  dec->add_option("hex", hex, "Message in hex, or '-' to read standard input")->required();

  // plan
  auto* plan = app.add_subcommand("plan", "Pick a single DOR-req action for a savings target");
  std::string profile_file, builtin;
  double target = 0.0;
  std::optional<double> max_bdr;
  auto* pf = plan->add_option("--profile", profile_file, "Device profile JSON")->check(CLI::ExistingFile);
  plan->add_option("--builtin", builtin, "Built-in profile: " + builtin_keys())->excludes(pf);
  plan->add_option("--target", target, "Required savings in percent, (0, 100)")->required();
  plan->add_option("--max-bdr", max_bdr, "Largest acceptable BD-rate in percent");

  // restore-plan
  auto* restore = app.add_subcommand("restore-plan", "Requests that bring the operations factor back to 1");
  double factor = 1.0, tolerance = 0.01;
  std::optional<int> max_steps;
  restore->add_option("--factor", factor, "Current remaining-operations factor, (0, 1]")->required();
  restore->add_option("--tolerance", tolerance, "Accepted distance from 1");
  restore->add_option("--max-steps", max_steps, "Longest sequence to consider");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Replay a session scenario");
  std::string scenario_file, out_path;
  sim->add_option("--scenario", scenario_file, "Scenario JSON")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", out_path, "Write the report to this file");

  // derdo-select
  auto* derdo = app.add_subcommand("derdo-select", "Minimum D + lR*R + lE*E candidate");
  std::string model_file, candidates_file;
  double lambda_rate = 0.0, lambda_energy = 0.0;
  bool avoid_fracpel = false;
  derdo->add_option("--model", model_file, "Energy model JSON")->required()->check(CLI::ExistingFile);
  derdo->add_option("--candidates", candidates_file, "Candidate set JSON")->required()->check(CLI::ExistingFile);
  derdo->add_option("--lambda-rate", lambda_rate, "Rate multiplier")->check(CLI::NonNegativeNumber);
  derdo->add_option("--lambda-energy", lambda_energy, "Energy multiplier")->check(CLI::NonNegativeNumber);
  derdo->add_flag("--avoid-fracpel", avoid_fracpel, "Replace the model by its fractional-pel avoiding variant");

  // savings
  auto* sav = app.add_subcommand("savings", "Relative energy savings of a test run");
  double e_ref = 0.0, e_test = 0.0;
  sav->add_option("--reference", e_ref, "Reference energy")->required();
  sav->add_option("--test", e_test, "Test energy")->required();

  // bdrate
  auto* bdr = app.add_subcommand("bdrate", "Akima BD-rate between two RD curves (CSV rate,quality)");
  std::string ref_csv, test_csv;
  bdr->add_option("--reference", ref_csv, "Reference curve CSV")->required()->check(CLI::ExistingFile);
  bdr->add_option("--test", test_csv, "Test curve CSV")->required()->check(CLI::ExistingFile);

  // build-profile
  auto* build = app.add_subcommand("build-profile", "Reduce measurement CSV to a device profile");
  std::string meas_csv, backend = "software", content_class, name, profile_out;
  build->add_option("--measurements", meas_csv, "Measurement CSV")->required()->check(CLI::ExistingFile);
  build->add_option("--backend", backend, "Decoder backend")->check(CLI::IsMember({"software", "hardware"}));
  build->add_option("--content-class", content_class, "Content class label")->required();
  build->add_option("--name", name, "Profile name");
  build->add_option("--out", profile_out, "Write the profile to this file");

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return 2;
  }

  try {
    if (*enc) {
      DorRequest req;
      req.ops_reduction = ops_code ? OpsReductionCode(*ops_code) : percent_to_code_v3(ops_pct);
      req.disable_loop_filters = lf_off;
      req.disable_bi_prediction = bi_off;
      req.disable_intra_in_B = intra_off;
      req.disable_fracpel_filtering = fracpel_off;
      const auto narrow = [](const char* field_name, unsigned v, unsigned max) {
        if (v > max) {
          throw Error(ErrorCode::FieldOutOfRange,
                      std::string(field_name) + " = " + std::to_string(v) + " exceeds " + std::to_string(max));
        }
        return static_cast<std::uint16_t>(v);
      };
      req.pic_width_in_luma_samples = narrow("pic_width_in_luma_samples", width, DorRequest::kMaxPicDimension);
      req.pic_height_in_luma_samples = narrow("pic_height_in_luma_samples", height, DorRequest::kMaxPicDimension);
      req.frames_per_second = narrow("frames_per_second", fps, DorRequest::kMaxFramesPerSecond);
      const auto msg = encode_message(req);
      if (format_given && format == Format::Json) {
        out << json{{"request_hex", to_hex(msg)}, {"request", json_io::to_json(req)}}.dump(2) << '\n';
      } else {
        out << to_hex(msg) << '\n';
      }
    } else if (*dec) {
      if (hex == "-") std::getline(std::cin, hex);
      while (!hex.empty() && std::isspace(static_cast<unsigned char>(hex.back()))) hex.pop_back();
      const auto req = decode_message(from_hex(hex));
      out << (format == Format::Text ? request_table(req) : json_io::to_json(req).dump(2)) << '\n';
    } else if (*plan) {
      if (profile_file.empty() && builtin.empty()) {
        err << "plan: one of --profile or --builtin is required\n" << plan->help();
        return 2;
      }
      const auto profile = load_profile(profile_file, builtin);
      const auto result = plan_request(profile, PowerTarget{target, max_bdr});
      if (format == Format::Text) {
        out << "action    " << to_string(result.entry.action)
            << (result.entry.label.empty() ? "" : " (" + result.entry.label + ")") << '\n'
            << "savings   " << fmt("%.2f", result.entry.savings_pct) << " %\n"
            << "bdr       " << (result.entry.bdr_pct ? fmt("%.2f", *result.entry.bdr_pct) + " %" : "n/a") << '\n'
            << "shortfall " << (result.shortfall ? "yes" : "no") << '\n'
            << "request   " << to_hex(encode_message(result.request)) << '\n';
      } else {
        out << json_io::to_json(result).dump(2) << '\n';
      }
    } else if (*restore) {
      try {
        const auto steps = restoration_plan(factor, tolerance, max_steps);
        std::vector<double> pcts(steps.begin(), steps.end());
        const double reached = factor * cumulative_ops_factor(pcts);
        json hexes = json::array();
        for (int c : steps) {
          DorRequest r;
          r.ops_reduction = percent_to_code_v3(c);
          hexes.push_back(to_hex(encode_message(r)));
        }
        if (format == Format::Text) {
          out << "steps  ";
          for (int c : steps) out << ' ' << (c > 0 ? "+" : "") << c << '%';
          out << "\nfactor  " << fmt("%.6f", reached) << '\n';
        } else {
          out << json{{"steps_pct", steps}, {"factor_after", reached},
                      {"residual", std::abs(reached - 1.0)}, {"requests_hex", hexes}}
                     .dump(2)
              << '\n';
        }
      } catch (const UnreachableError& e) {
        err << e.what() << '\n';
        return 1;
      }
    } else if (*sim) {
      const auto report = run_scenario(json_io::scenario_from_json(read_json(scenario_file)));
      write_output(format == Format::Text ? report_table(report) : json_io::to_json(report).dump(2), out_path, out);
    } else if (*derdo) {
      auto model = json_io::model_from_json(read_json(model_file));
      if (avoid_fracpel) model = fracpel_avoiding_model(model);
      const auto candidates = json_io::candidates_from_json(read_json(candidates_file));
      const LagrangeWeights w{lambda_rate, lambda_energy};
      const auto& best = derdo_select(candidates, w, model);
      const double j = cost(best, w, model);
      const double e = estimate_energy(model, best.counts);
      if (format == Format::Text) {
        out << "selected " << best.id << "  J=" << fmt("%.6g", j) << "  E=" << fmt("%.6g", e) << '\n';
      } else {
        out << json{{"selected", json_io::to_json(best)}, {"cost", j}, {"energy", e}}.dump(2) << '\n';
      }
    } else if (*sav) {
      const double s = relative_savings({"reference", e_ref}, {"test", e_test});
      if (format == Format::Text) {
        out << fmt("%.4f", s) << " %\n";
      } else {
        out << json{{"savings_pct", s}}.dump(2) << '\n';
      }
    } else if (*bdr) {
      const auto r = bd_rate(read_curve_csv(ref_csv), read_curve_csv(test_csv));
      if (format == Format::Text) {
        out << (r ? fmt("%.4f", *r) + " %" : "n/a") << '\n';
      } else {
        out << json{{"bdr_pct", r ? json(*r) : json(nullptr)}}.dump(2) << '\n';
      }
    } else if (*build) {
      std::istringstream in(read_file(meas_csv));
      const auto rows = read_measurements_csv(in);
      const auto profile = build_profile(rows, parse_backend(backend), content_class, name);
      write_output(json_io::to_json(profile).dump(2), profile_out, out);
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace greenmeta::cli
