#include "dualitykit/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>

#include <CLI11.hpp>

#include "dualitykit/abelian_group.hpp"
#include "dualitykit/center_channels.hpp"
#include "dualitykit/errors.hpp"
#include "dualitykit/fusion_ring.hpp"
#include "dualitykit/hamiltonian.hpp"
#include "dualitykit/mpo.hpp"
#include "dualitykit/reports.hpp"
#include "dualitykit/verify.hpp"

namespace dualitykit {

namespace {

struct CommonOptions {
  std::string group = "Z2";
  std::string chi;
  std::string output = "json";
  std::uint64_t seed = 0x5eed;
};

Bicharacter load_chi(const FiniteAbelianGroup& group, const std::string& spec) {
  if (spec.empty()) return Bicharacter::standard(group);
  if (!spec.empty() && spec.front() == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw DomainError("cannot open bicharacter file " + spec.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_bicharacter(group, ss.str());
  }
  return parse_bicharacter(group, spec);
}

std::pair<int, int> parse_range(const std::string& s) {
  static const std::regex re(R"(\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw DomainError("grade range must look like -2..2, got '" + s + "'");
  const int lo = std::stoi(m[1]);
  const int hi = std::stoi(m[2]);
  if (lo > hi) throw DomainError("empty grade range '" + s + "'");
  return {lo, hi};
}

void emit(std::ostream& out, OutputFormat fmt, const nlohmann::json& j, const std::string& csv, const std::string& text) {
  switch (fmt) {
    case OutputFormat::json: out << j.dump(2) << '\n'; break;
    case OutputFormat::csv: out << csv; break;
    case OutputFormat::text: out << text; break;
  }
}

bool has_fitted_scale(const IdentityReport& r) { return r.identity.find("= c ") != std::string::npos; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Duality channels, graded fusion rings and lattice duality MPOs for finite abelian groups", "dualitykit"};
  app.require_subcommand(1);

  auto add_common = [](CLI::App* sub, CommonOptions& o) {
    sub->add_option("--group", o.group, "Group spec such as Z2, Z3 or Z2xZ2")->capture_default_str();
    sub->add_option("--chi", o.chi, "Bicharacter matrix as JSON (or @file); standard pairing by default");
    sub->add_option("--output", o.output, "json, csv or text")->capture_default_str();
    sub->add_option("--seed", o.seed, "Seed for the idempotent search")->capture_default_str();
  };

  CommonOptions ft_opts;
  std::string variant = "group";
  int window = 2;
  auto* ft = app.add_subcommand("fusion-table", "Print a fusion ring");
  add_common(ft, ft_opts);
  ft->add_option("--variant", variant, "group, ty or graded")->capture_default_str();
  ft->add_option("--window", window, "Grade window for --variant graded")->capture_default_str();

  CommonOptions ch_opts;
  std::string grades = "-2..2";
  auto* ch = app.add_subcommand("channels", "Extreme duality channels per grade");
  add_common(ch, ch_opts);
  ch->add_option("--grades", grades, "Grade range lo..hi (use --grades=-2..2 for negative bounds)")->capture_default_str();

  CommonOptions vf_opts;
  int length = 4;
  std::string suite = "all";
  std::string model = "clock";
  std::optional<double> tol;
  std::string golden_dir;
  bool write_golden_flag = false;
  std::string dump;
  auto* vf = app.add_subcommand("verify", "Check operator identities by dense contraction");
  add_common(vf, vf_opts);
  vf->add_option("-L,--length", length, "Chain length")->capture_default_str();
  vf->add_option("--suite", suite, "fusion, selfdual, qca, intertwiner or all")->capture_default_str();
  vf->add_option("--model", model, "Hamiltonian for the selfdual suite: clock or cluster")->capture_default_str();
  vf->add_option("--tol", tol, "Override both tolerance rungs");
  vf->add_option("--golden-dir", golden_dir, "Directory holding fitted_scales.json");
  vf->add_flag("--write-golden", write_golden_flag, "Record fitted scales into the golden directory");
  vf->add_option("--dump", dump, "Write the dense D+ as row-major complex128");

  CommonOptions wi_opts;
  std::string ring_name = "ty";
  std::string ring_file;
  auto* wi = app.add_subcommand("weak-integral", "Decide weak integrality of a fusion ring");
  add_common(wi, wi_opts);
  wi->add_option("--ring", ring_name, "ty, group, fibonacci or graded")->capture_default_str();
  wi->add_option("--ring-file", ring_file, "Ring given as JSON");
  wi->add_option("--window", window, "Grade window for --ring graded")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (ft->parsed()) {
      const auto fmt = parse_output_format(ft_opts.output);
      const auto group = FiniteAbelianGroup::parse(ft_opts.group);
      FusionRing ring;
      if (variant == "group") ring = group_ring(group);
      else if (variant == "ty") ring = tambara_yamagami(group);
      else if (variant == "graded") ring = z_graded_extension(group, load_chi(group, ft_opts.chi), window, ft_opts.seed);
      else throw DomainError("unknown variant '" + variant + "' (expected group, ty or graded)");
      if (ring.dims().empty()) ring = ring.with_dims(fp_dimensions(ring));
      emit(out, fmt, fusion_ring_json(ring), fusion_ring_csv(ring), fusion_ring_text(ring));
      return kExitPass;
    }
    if (ch->parsed()) {
      const auto fmt = parse_output_format(ch_opts.output);
      const auto group = FiniteAbelianGroup::parse(ch_opts.group);
      const auto [lo, hi] = parse_range(grades);
      const ChannelCatalog catalog(load_chi(group, ch_opts.chi), lo, hi, ch_opts.seed);
      emit(out, fmt, channel_report_json(catalog), channel_report_csv(catalog), channel_report_text(catalog));
      return kExitPass;
    }
    if (vf->parsed()) {
      const auto fmt = parse_output_format(vf_opts.output);
      const auto group = FiniteAbelianGroup::parse(vf_opts.group);
      SuiteOptions opts;
      opts.model = parse_model(model);
      opts.seed = vf_opts.seed;
      if (tol) {
        if (!(*tol > 0)) throw DomainError("--tol must be positive");
        opts.tol_exact = opts.tol_numeric = *tol;
      }
      const Suite s = parse_suite(suite);
      const ChainConfig cfg = make_chain(load_chi(group, vf_opts.chi), length);
      auto reports = run_suite(cfg, s, opts);

      const std::filesystem::path golden_path = std::filesystem::path(golden_dir) / "fitted_scales.json";
      if (!golden_dir.empty() && !write_golden_flag && std::filesystem::exists(golden_path)) {
        const auto golden = read_golden(golden_path.string());
        for (auto& r : reports) {
          if (!has_fitted_scale(r)) continue;
          const auto it = golden.find(golden_key(r));
          if (it == golden.end()) continue;
          const double drift = std::abs(r.fitted_scale - it->second);
          if (drift > 1e-8 * std::max(1.0, std::abs(it->second))) {
            r.pass = false;
            r.detail += (r.detail.empty() ? "" : "; ") + std::string("fitted scale drifted from golden value");
          } else {
            r.detail += (r.detail.empty() ? "" : "; ") + std::string("matches golden");
          }
        }
      }
      if (write_golden_flag) {
        if (golden_dir.empty()) throw DomainError("--write-golden needs --golden-dir");
        std::filesystem::create_directories(golden_dir);
        GoldenScales golden;
        if (std::filesystem::exists(golden_path)) golden = read_golden(golden_path.string());
        for (const auto& r : reports)
          if (has_fitted_scale(r) && r.pass) golden[golden_key(r)] = r.fitted_scale;
        write_golden(golden_path.string(), golden);
      }
      if (!dump.empty()) contract(build_duality_mpo(cfg, +1), cfg.cap).write_binary(dump);

      emit(out, fmt, verify_report_json(reports), verify_report_csv(reports), verify_report_text(reports));
      return all_required_pass(reports) ? kExitPass : kExitFail;
    }
    if (wi->parsed()) {
      const auto fmt = parse_output_format(wi_opts.output);
      FusionRing ring;
      if (!ring_file.empty()) {
        ring = load_ring_file(ring_file);
      } else {
        const auto group = FiniteAbelianGroup::parse(wi_opts.group);
        if (ring_name == "ty") ring = tambara_yamagami(group);
        else if (ring_name == "group") ring = group_ring(group);
        else if (ring_name == "fibonacci") ring = fibonacci_ring();
        else if (ring_name == "graded") ring = z_graded_extension(group, load_chi(group, wi_opts.chi), window, wi_opts.seed);
        else throw DomainError("unknown ring '" + ring_name + "' (expected ty, group, fibonacci or graded)");
      }
      const auto report = weak_integrality(ring);
      emit(out, fmt, weak_integrality_json(report), weak_integrality_csv(report), weak_integrality_text(report));
      return report.weakly_integral ? kExitPass : kExitFail;
    }
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ConsistencyError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitInput;
}

}  // namespace dualitykit
