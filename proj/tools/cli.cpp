#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sflow/block_code.hpp"
#include "sflow/chain_metric.hpp"
#include "sflow/entropy.hpp"
#include "sflow/error.hpp"
#include "sflow/json_io.hpp"
#include "sflow/literal.hpp"
#include "sflow/roof_prime.hpp"
#include "sflow/sequence_codec.hpp"
#include "sflow/verify.hpp"

namespace sflow::cli {

namespace {

double parse_real(std::string_view s) {
  s = literal::trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError("not a number: '" + std::string(s) + "'");
  return v;
}

std::int64_t parse_integer(std::string_view s) {
  s = literal::trim(s);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError("not an integer: '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t at = s.find(sep, start);
    parts.push_back(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return parts;
}

// Exponent e with 10^{-e} == v, if any.
std::optional<int> decade_exponent(double v) {
  if (!(v > 0.0)) return std::nullopt;
  const double e = -std::log10(v);
  const double r = std::round(e);
  if (std::abs(e - r) > 1e-9 || std::abs(r) > 300) return std::nullopt;
  return static_cast<int>(r);
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw ResourceError("cannot write output file '" + path + "'");
      stream_ = file_.get();
    }
  }

  std::ostream& operator*() { return *stream_; }

  void finish(const std::string& path) {
    if (!file_) return;
    file_->flush();
    if (!*file_) throw ResourceError("failed writing output file '" + path + "'");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void print_table(std::ostream& out, const std::vector<SuiteReport>& reports) {
  std::size_t w_suite = 5, w_check = 5;
  for (const auto& r : reports) {
    w_suite = std::max(w_suite, r.suite.size());
    for (const auto& c : r.checks) w_check = std::max(w_check, c.name.size());
  }
  out << std::left << std::setw(static_cast<int>(w_suite + 2)) << "suite" << std::setw(static_cast<int>(w_check + 2))
      << "check" << std::setw(8) << "result"
      << "detail\n";
  for (const auto& r : reports)
    for (const auto& c : r.checks)
      out << std::setw(static_cast<int>(w_suite + 2)) << r.suite << std::setw(static_cast<int>(w_check + 2)) << c.name
          << std::setw(8) << (c.passed ? "PASS" : "FAIL") << c.detail << '\n';
  out << std::right;
}

bool all_passed(const std::vector<SuiteReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const SuiteReport& r) { return r.passed(); });
}

struct Common {
  std::uint64_t seed = 1;
  std::int64_t max_crossings = kDefaultMaxCrossings;
  std::string boundary = "adjusted";
};

void write_scan_csv(std::ostream& os, const ScanResult& scan, const std::string& roof, double tol,
                    std::uint64_t seed) {
  static const char* kinds[] = {"finite", "zero", "divergent"};
  os << "# roof=" << roof << '\n'
     << "# tol=" << format_double(tol) << '\n'
     << "# seed=" << seed << '\n'
     << "# limit=" << kinds[static_cast<int>(scan.limit_kind)] << '\n'
     << "# strictly_decreasing=" << (scan.strictly_decreasing ? "true" : "false") << '\n'
     << "lambda,integral,entropy,target,abs_error\n";
  for (const auto& r : scan.rows)
    os << format_double(r.lambda) << ',' << format_double(r.integral) << ',' << format_double(r.entropy) << ','
       << format_double(r.target) << ',' << format_double(r.abs_error) << '\n';
}

nlohmann::json report_json(const Common& common, std::int64_t gap_max) {
  const Boundary b = parse_boundary(common.boundary);
  nlohmann::json j;
  j["seed"] = common.seed;
  j["boundary"] = to_string(b);
  const std::vector<double> grid = decade_grid(3, 12);
  nlohmann::json scans = nlohmann::json::object();
  for (const char* spec : {"harmonic:1", "harmonic:2", "logharmonic", "power:0.5", "trunc:1:power:0.5",
                           "trunc:2:power:0.5"})
    scans[spec] = to_json(singular_limit_scan(parse_profile(spec), grid));
  j["entropy_scans"] = scans;

  nlohmann::json fiber = nlohmann::json::array();
  for (const auto& sft : fiber_sfts()) {
    nlohmann::json counts = nlohmann::json::object();
    for (int n : {2, 4, 8, 16, 32, 40}) counts[std::to_string(n)] = sft.word_count(n).str();
    fiber.push_back({{"word_counts", counts}, {"entropy_n40", sft_entropy_wordcount(sft, 40).value}});
  }
  j["fiber_sfts"] = fiber;

  CodecSuiteOptions opts;
  opts.gap_max = gap_max;
  opts.boundary = b;
  opts.injectivity_only = true;
  nlohmann::json codec = nlohmann::json::array();
  for (const auto& c : verify_codec(opts).checks)
    codec.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["codec"] = codec;

  nlohmann::json probe = nlohmann::json::object();
  for (std::int64_t K : {250, 500, 1000, 2000, 4000})
    probe[std::to_string(K)] = roof_prime_continuity_probe(GapProfile::harmonic(1.0), K, b);
  j["roof_prime_probe_harmonic_1"] = probe;
  return j;
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  text = literal::trim(text);
  if (text.empty()) throw ParseError("lambda grid is empty");
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const double a = parse_real(text.substr(0, dots));
    const double b = parse_real(text.substr(dots + 2));
    const auto ea = decade_exponent(a);
    const auto eb = decade_exponent(b);
    if (!ea || !eb) throw ParseError("grid range endpoints must be powers of ten");
    if (*eb < *ea) throw DomainError("grid range must run toward smaller lambda");
    return decade_grid(*ea, *eb);
  }
  std::vector<double> grid;
  for (auto part : split(text, ',')) grid.push_back(parse_real(part));
  return grid;
}

std::vector<std::int64_t> parse_gap_list(std::string_view text) {
  std::vector<std::int64_t> gaps;
  for (auto part : split(literal::trim(text), ',')) {
    part = literal::trim(part);
    if (const auto dots = part.find(".."); dots != std::string_view::npos) {
      const std::int64_t a = parse_integer(part.substr(0, dots));
      const std::int64_t b = parse_integer(part.substr(dots + 2));
      if (b < a) throw DomainError("gap range must be increasing");
      if (b - a > 10'000'000) throw ResourceError("gap range too long");
      for (std::int64_t g = a; g <= b; ++g) gaps.push_back(g);
    } else {
      gaps.push_back(parse_integer(part));
    }
  }
  for (auto g : gaps)
    if (g < 1) throw DomainError("gaps must be positive");
  return gaps;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Singular suspension flows: entropy scans, the accelerated block code, and lemma suites", "sflow"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--seed", common.seed, "Seed for randomized sampling")->capture_default_str();
  app.add_option("--max-crossings", common.max_crossings, "Roof crossings allowed per flow evaluation")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--boundary", common.boundary, "Region convention for k+ = 3k-")
      ->capture_default_str()
      ->check(CLI::IsMember({"adjusted", "paper"}));

  // entropy-scan
  auto* scan = app.add_subcommand("entropy-scan", "Entropy of Bernoulli flow measures along a lambda grid");
  std::string scan_roof, scan_grid = "1e-3..1e-12", scan_format = "csv", scan_output;
  double scan_tol = kDefaultSeriesTolerance;
  scan->add_option("--roof", scan_roof, "Gap profile, e.g. harmonic:1, power:0.5, logharmonic, trunc:2:power:0.5")
      ->required();
  scan->add_option("--grid", scan_grid, "Decade range a..b or comma list")->capture_default_str();
  scan->add_option("--format", scan_format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  scan->add_option("--output", scan_output, "Output file (default stdout)");
  scan->add_option("--tol", scan_tol, "Relative series truncation tolerance")->capture_default_str();

  // codec
  auto* codec = app.add_subcommand("codec", "Block code of the accelerated shift");
  codec->require_subcommand(1);
  std::string codec_gaps, codec_word, codec_literal;
  std::int64_t codec_gap_max = 100000;
  auto* enc = codec->add_subcommand("encode", "Block words of gaps");
  enc->add_option("--gap", codec_gaps, "Gap, range a..b, or comma list")->required();
  auto* dec = codec->add_subcommand("decode", "Gap of a block word");
  dec->add_option("--word", codec_word, "Letters y^z separated by spaces")->required();
  auto* rt = codec->add_subcommand("roundtrip", "Exhaustive roundtrip and distinctness report");
  rt->add_option("--gap-max", codec_gap_max)->capture_default_str()->check(CLI::PositiveNumber);
  auto* prof = codec->add_subcommand("profile", "First-return profiles as JSON");
  prof->add_option("--gap", codec_gaps, "Gap, range a..b, or comma list")->required();
  auto* enc_seq = codec->add_subcommand("encode-sequence", "Image of a bit sequence literal");
  enc_seq->add_option("--x", codec_literal, "Bit sequence literal, e.g. (10000000000)*|[1]|(10000000000)*")
      ->required();
  auto* dec_seq = codec->add_subcommand("decode-sequence", "Preimage of a coded sequence literal");
  dec_seq->add_option("--u", codec_literal, "Coded sequence literal")->required();

  // verify
  auto* ver = app.add_subcommand("verify", "Run lemma suites and print a pass/fail table");
  std::string ver_suite = "all";
  std::int64_t ver_gap_max = 100000;
  ver->add_option("--suite", ver_suite, "all, or a comma list of regions, fr, injec, codec, fiber, roof-prime")
      ->capture_default_str();
  ver->add_option("--gap-max", ver_gap_max)->capture_default_str()->check(CLI::PositiveNumber);

  // metric
  auto* met = app.add_subcommand("metric", "Chain upper bound on the Bowen-Walters distance");
  std::string met_roof = "harmonic:1", met_a, met_b;
  double met_ta = 0.0, met_tb = 0.0;
  int met_points = 4, met_radius = 3;
  met->add_option("--roof", met_roof)->capture_default_str();
  met->add_option("--a", met_a, "Base of the first point (bit sequence literal)")->required();
  met->add_option("--ta", met_ta, "Time coordinate of the first point")->capture_default_str();
  met->add_option("--b", met_b, "Base of the second point")->required();
  met->add_option("--tb", met_tb, "Time coordinate of the second point")->capture_default_str();
  met->add_option("--points", met_points, "Maximum chain points")->capture_default_str()->check(CLI::Range(2, 64));
  met->add_option("--radius", met_radius, "Shift orbit radius of the vertex pool")
      ->capture_default_str()
      ->check(CLI::Range(0, 16));

  // report
  auto* rep = app.add_subcommand("report", "JSON summary of the standard experiments");
  std::string rep_output;
  std::int64_t rep_gap_max = 10000;
  rep->add_option("--output", rep_output, "Output file (default stdout)");
  rep->add_option("--gap-max", rep_gap_max)->capture_default_str()->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: kind=usage message=\"" << e.what() << "\"\n";
    return kExitInvalid;
  }

  try {
    const Boundary boundary = parse_boundary(common.boundary);

    if (*scan) {
      const GapProfile g = parse_profile(scan_roof);
      const ScanResult result = singular_limit_scan(g, parse_grid(scan_grid), scan_tol);
      Output o(scan_output, out);
      if (scan_format == "csv") {
        write_scan_csv(*o, result, scan_roof, scan_tol, common.seed);
      } else {
        nlohmann::json j = to_json(result);
        j["roof"] = scan_roof;
        j["tol"] = scan_tol;
        j["seed"] = common.seed;
        *o << j.dump(2) << '\n';
      }
      o.finish(scan_output);
      return kExitOk;
    }

    if (*codec) {
      if (*enc) {
        const auto gaps = parse_gap_list(codec_gaps);
        for (auto g : gaps) {
          if (gaps.size() > 1) out << g << '\t';
          out << format_word(encode_block(g, boundary)) << '\n';
        }
        return kExitOk;
      }
      if (*dec) {
        out << decode_word(parse_word(codec_word), boundary) << '\n';
        return kExitOk;
      }
      if (*rt) {
        CodecSuiteOptions opts;
        opts.gap_max = codec_gap_max;
        opts.boundary = boundary;
        opts.injectivity_only = true;
        const std::vector<SuiteReport> reports{verify_codec(opts)};
        out << "# boundary=" << to_string(boundary) << " gap_max=" << codec_gap_max << '\n';
        print_table(out, reports);
        return all_passed(reports) ? kExitOk : kExitCheckFailed;
      }
      if (*prof) {
        const auto gaps = parse_gap_list(codec_gaps);
        nlohmann::json j;
        if (gaps.size() == 1) {
          j = to_json(return_profile(gaps[0], boundary));
        } else {
          j = nlohmann::json::array();
          for (auto g : gaps) j.push_back(to_json(return_profile(g, boundary)));
        }
        out << j.dump(2) << '\n';
        return kExitOk;
      }
      if (*enc_seq) {
        out << to_literal(encode_sequence(parse_bit_sequence(codec_literal), boundary)) << '\n';
        return kExitOk;
      }
      if (*dec_seq) {
        out << to_literal(decode_sequence(parse_code_sequence(codec_literal), boundary)) << '\n';
        return kExitOk;
      }
    }

    if (*ver) {
      std::vector<std::string> names;
      if (ver_suite == "all") {
        names = suite_names();
      } else {
        for (auto part : split(ver_suite, ',')) {
          const std::string name(literal::trim(part));
          if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
            throw DomainError("unknown suite '" + name + "'");
          names.push_back(name);
        }
      }
      SuiteOptions opts;
      opts.gap_max = ver_gap_max;
      opts.boundary = boundary;
      opts.seed = common.seed;
      std::vector<SuiteReport> reports;
      for (const auto& n : names) reports.push_back(run_suite(n, opts));
      out << "# seed=" << common.seed << " boundary=" << to_string(boundary) << " gap_max=" << ver_gap_max << '\n';
      print_table(out, reports);
      return all_passed(reports) ? kExitOk : kExitCheckFailed;
    }

    if (*met) {
      const RoofFunction f = parse_roof(met_roof);
      const FlowPoint a = make_flow_point(parse_bit_sequence(met_a), met_ta, f, common.max_crossings);
      const FlowPoint b = make_flow_point(parse_bit_sequence(met_b), met_tb, f, common.max_crossings);
      const double d = bw_distance_upper(a, b, f, met_points, met_radius);
      out << "a=" << to_literal(a.base) << " t=" << format_double(a.height) << '\n'
          << "b=" << to_literal(b.base) << " t=" << format_double(b.height) << '\n'
          << "distance_upper=" << format_double(d) << '\n';
      return kExitOk;
    }

    if (*rep) {
      const nlohmann::json j = report_json(common, rep_gap_max);
      Output o(rep_output, out);
      *o << j.dump(2) << '\n';
      o.finish(rep_output);
      return kExitOk;
    }
  } catch (const DecodeError& e) {
    err << "error: kind=decode constraint=" << e.constraint() << " message=\"" << e.what() << "\"\n";
    return kExitInvalid;
  } catch (const ParseError& e) {
    err << "error: kind=parse message=\"" << e.what() << "\"\n";
    return kExitInvalid;
  } catch (const DomainError& e) {
    err << "error: kind=domain message=\"" << e.what() << "\"\n";
    return kExitInvalid;
  } catch (const ResourceError& e) {
    err << "error: kind=resource message=\"" << e.what() << "\"\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace sflow::cli
