#include "nilstab/cli.hpp"

#include "nilstab/errors.hpp"
#include "nilstab/extensions.hpp"
#include "nilstab/io.hpp"
#include "nilstab/obstruction.hpp"
#include "nilstab/representation.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace nilstab::cli {

namespace {

const std::vector<std::size_t> kCertifyDefaultN{15, 16, 31, 32, 63, 64, 127, 128};
const std::vector<std::size_t> kSweepDefaultN{8, 16, 32, 64, 128, 256};

bool is_builtin_group(const std::string& s)
{
  return s == "heisenberg3" || s == "H3" || s.rfind("lattice:", 0) == 0 ||
         (s.size() > 1 && s[0] == 'Z' && !std::filesystem::exists(s));
}

std::string hex_seed(std::uint64_t seed)
{
  std::ostringstream os;
  os << "0x" << std::hex << seed;
  return os.str();
}

int exit_for(const Error& e)
{
  switch (e.kind()) {
  case ErrorKind::ParseError:
  case ErrorKind::InvalidArgument:
    return kUsage;
  default:
    return kCheckFailed;
  }
}

// Writes to --out when given, otherwise to the command's stdout.
int emit(const ExperimentConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err)
{
  if (cfg.out.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) {
    err << "error: cannot write " << cfg.out << "\n";
    return kUsage;
  }
  f << text;
  return kOk;
}

} // namespace

GroupRef resolve_group(const std::string& source)
{
  if (is_builtin_group(source))
    return std::make_shared<const MalcevGroup>(make_builtin(source));
  return std::make_shared<const MalcevGroup>(parse_group_json(read_text_file(source)));
}

PolyCocycle resolve_cocycle(const std::string& source, const GroupRef& group)
{
  if (source == "zero")
    return zero_cocycle(group);
  if (source.rfind("builtin:", 0) == 0) {
    PolyCocycle b = builtin_cocycle(source.substr(8));
    if (!(*b.group() == *group))
      throw Error(ErrorKind::InvalidArgument,
                  source + " lives on " + b.group()->name() + ", not on the selected group");
    return PolyCocycle(group, b.poly(), b.name());
  }
  return parse_cocycle_json(read_text_file(source), group);
}

Chain2 resolve_cycle(const std::string& source, std::size_t hirsch)
{
  if (source == "builtin:voiculescu") {
    if (hirsch != 2)
      throw Error(ErrorKind::InvalidArgument, "the Voiculescu cycle lives in Z^2");
    return voiculescu_cycle();
  }
  if (source == "builtin:c1")
    return central_cycle(hirsch, 1);
  if (source.rfind("builtin:ck:", 0) == 0)
    return central_cycle(hirsch, parse_integer(source.substr(11)));
  if (source.rfind("builtin:", 0) == 0)
    throw Error(ErrorKind::ParseError, "unknown builtin cycle '" + source + "'");
  return parse_chain_json(read_text_file(source), hirsch);
}

int cmd_validate(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err)
{
  GroupRef G;
  std::optional<PolyCocycle> sigma;
  try {
    G = resolve_group(cfg.group);
    if (!cfg.cocycle.empty())
      sigma = resolve_cocycle(cfg.cocycle, G);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e);
  }

  const SampleOptions sampling{cfg.samples, cfg.bound, cfg.seed};
  std::vector<ValidationReport> reports;
  reports.push_back(validate_group(*G, sampling));
  if (sigma && reports.front().passed()) {
    try {
      reports.push_back(cocycle_check(Cocycle(*sigma), {sampling, true, 2}));
      reports.push_back(skinny_check(Cocycle(*sigma), canonical_character(*G), sampling));
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return exit_for(e);
    }
  }

  bool ok = true;
  for (const auto& r : reports) {
    ok = ok && r.passed();
    (cfg.format == "json" ? err : out) << r.summary() << "\n";
  }
  const std::string doc = validation_to_json(reports, cfg.seed) + "\n";
  if (cfg.format == "json" || !cfg.out.empty())
    if (int rc = emit(cfg, doc, out, err); rc != kOk)
      return rc;
  return ok ? kOk : kCheckFailed;
}

int cmd_certify(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err)
{
  const auto n_list = cfg.n_list.empty() ? kCertifyDefaultN : cfg.n_list;
  if (cfg.cocycle.empty() || cfg.cycle.empty()) {
    err << "error: certify needs --cocycle and --cycle\n";
    return kUsage;
  }
  try {
    GroupRef G = resolve_group(cfg.group);
    PolyCocycle sigma = resolve_cocycle(cfg.cocycle, G);
    Chain2 c = resolve_cycle(cfg.cycle, G->hirsch());
    CertificateReport rep = certify_nonperturbability(sigma, c, n_list);

    const CertificateInputs inputs{cfg.group, cfg.cocycle, cfg.cycle, n_list, cfg.seed};
    const std::string doc = certificate_to_json(rep, sigma, c, inputs) + "\n";
    std::ostream& human = cfg.out.empty() ? err : out;
    for (const auto& e : rep.entries) {
      human << "n=" << e.n << " " << e.status;
      if (e.pairing)
        human << " pairing=" << (e.pairing->rounded ? to_string(*e.pairing->rounded) : "undefined")
              << " raw=" << std::setprecision(12) << e.pairing->raw;
      human << "\n";
    }
    human << (rep.ok() ? "certified" : "not certified") << ": <sigma,c>=" << to_string(rep.sigma_pairing)
          << ", expected <rho_n,c>=" << to_string(rep.expected) << "\n";
    if (int rc = emit(cfg, doc, out, err); rc != kOk)
      return rc;
    return rep.ok() ? kOk : kCheckFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e);
  }
}

int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err)
{
  const auto n_list = cfg.n_list.empty() ? kSweepDefaultN : cfg.n_list;
  if (cfg.cocycle.empty()) {
    err << "error: sweep needs --cocycle\n";
    return kUsage;
  }
  if (cfg.format != "csv" && cfg.format != "json") {
    err << "error: unknown format " << cfg.format << "\n";
    return kUsage;
  }
  GroupRef G;
  std::optional<PolyCocycle> sigma;
  try {
    G = resolve_group(cfg.group);
    sigma = resolve_cocycle(cfg.cocycle, G);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e);
  }

  ElementSampler sampler(G->hirsch(), cfg.bound, cfg.seed);
  std::vector<std::pair<GroupElement, GroupElement>> pairs;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    GroupElement x = sampler.next();
    GroupElement y = sampler.next();
    pairs.emplace_back(std::move(x), std::move(y));
  }

  std::vector<DefectRow> rows;
  bool violated = false;
  for (std::size_t n : n_list) {
    if (n == 0 || n > kMaxDenseDimension) {
      err << "error: n must lie in 1.." << kMaxDenseDimension << "\n";
      return kUsage;
    }
    const bool coprime = is_coprime(*sigma, n);
    for (const auto& [x, y] : pairs) {
      DefectRow row{n, x, y, std::nullopt, "ok"};
      if (!coprime) {
        row.status = "skipped:not_coprime";
      } else {
        try {
          row.defect = defect(*sigma, n, x, y);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::BoundViolated && e.kind() != ErrorKind::NoConvergence)
            throw;
          err << "error: " << e.what() << "\n";
          row.status = e.kind() == ErrorKind::BoundViolated ? "bound_violated" : "no_convergence";
          violated = true;
        }
      }
      rows.push_back(std::move(row));
    }
  }

  std::ostringstream doc;
  if (cfg.format == "csv") {
    doc << "# seed=" << hex_seed(cfg.seed) << " group=" << cfg.group << " cocycle=" << cfg.cocycle
        << "\n";
    doc << defect_csv_header() << "\n";
    for (const auto& r : rows)
      doc << defect_csv_row(r) << "\n";
  } else {
    doc << "{\n  \"seed\": " << cfg.seed << ",\n  \"header\": \"" << defect_csv_header()
        << "\",\n  \"rows\": [\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
      doc << "    \"" << defect_csv_row(rows[i]) << "\"" << (i + 1 < rows.size() ? "," : "") << "\n";
    doc << "  ]\n}\n";
  }
  if (int rc = emit(cfg, doc.str(), out, err); rc != kOk)
    return rc;
  return violated ? kCheckFailed : kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Asymptotic representations of nilpotent groups from skinny 2-cocycles"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string seed_text = hex_seed(kDefaultSeed);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group, "builtin (lattice:m, heisenberg3) or JSON file")
        ->capture_default_str();
    sub->add_option("--cocycle", cfg.cocycle, "builtin:z2_skinny, builtin:heisenberg_skinny, zero, or JSON file");
    sub->add_option("--samples", cfg.samples, "sample count")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--bound", cfg.bound, "coordinate bound")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed_text, "RNG seed (decimal or 0x hex)")->capture_default_str();
    sub->add_option("--out", cfg.out, "output path");
    sub->add_option("--format", cfg.format, "csv or json")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* validate = app.add_subcommand("validate", "check the group law, and the cocycle if given");
  add_common(validate);

  CLI::App* certify = app.add_subcommand("certify", "winding-number certificate over a list of n");
  add_common(certify);
  certify->add_option("--cycle", cfg.cycle, "builtin:voiculescu, builtin:c1, builtin:ck:<k>, or JSON file");
  certify->add_option("--n", cfg.n_list, "comma-separated dimensions")->delimiter(',');

  CLI::App* sweep = app.add_subcommand("sweep", "defect table over n and sampled (x, y)");
  add_common(sweep);
  sweep->add_option("--n", cfg.n_list, "comma-separated dimensions")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    std::size_t pos = 0;
    cfg.seed = std::stoull(seed_text, &pos, 0);
    if (pos != seed_text.size())
      throw std::invalid_argument(seed_text);
  } catch (const std::exception&) {
    err << "error: bad seed '" << seed_text << "'\n";
    return kUsage;
  }

  try {
    if (validate->parsed())
      return cmd_validate(cfg, out, err);
    if (certify->parsed())
      return cmd_certify(cfg, out, err);
    return cmd_sweep(cfg, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e);
  }
}

} // namespace nilstab::cli
