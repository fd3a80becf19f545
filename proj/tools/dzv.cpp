// dzv: dimensions of weight-n double zeta values over F_q(θ).

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dzv/errors.hpp"
#include "dzv/pipeline.hpp"
#include "dzv/serialize.hpp"

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kMath = 2, kVerifyFail = 3, kInconclusive = 4 };

struct Args {
  std::uint32_t q = 0;
  std::uint32_t p = 0;
  std::uint32_t e = 0;
  unsigned weight = 0;
  unsigned min = 0;
  unsigned max = 0;
  unsigned s1 = 0;
  unsigned s2 = 0;
  unsigned dmax = 12;
  unsigned margin = 10;
  unsigned jobs = 1;
  unsigned verify_max = 12;
  std::string emit = "text";
  std::string cache;
  bool verify = false;
  bool no_verify = false;
  bool telemetry = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// q = p^e with p prime; --p/--e, when given, must agree.
void resolve_field(Args& a) {
  if (a.q == 0 && a.p != 0) {
    a.q = 1;
    for (std::uint32_t i = 0; i < std::max(a.e, 1u); ++i) a.q *= a.p;
  }
  if (a.q < 2) throw UsageError("--q must be a prime power >= 2");
  std::uint32_t p = 2;
  while (a.q % p != 0) ++p;
  std::uint32_t e = 0;
  for (std::uint32_t r = a.q; r > 1; r /= p, ++e) {
    if (r % p != 0) throw UsageError("--q must be a prime power, got " + std::to_string(a.q));
  }
  if ((a.p != 0 && a.p != p) || (a.e != 0 && a.e != e)) {
    throw UsageError("--p/--e do not match --q " + std::to_string(a.q));
  }
  a.p = p;
  a.e = e;
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

// Config values become --key=value arguments unless the key was given on
// the command line.
std::vector<std::string> merge_config(CLI::App& app, std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  CLI::App* sub = nullptr;
  for (const auto& a : args) {
    if (a.empty() || a[0] == '-') continue;
    for (auto* s : app.get_subcommands({})) {
      if (s->get_name() == a) sub = s;
    }
    if (sub) break;
  }
  if (!sub) return args;
  for (const auto& [key, value] : read_config(path)) {
    if (key == "config") continue;
    const std::string flag = "--" + key;
    const bool on_cli = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (on_cli) continue;
    bool known = false;
    for (auto* s : app.get_subcommands({})) known = known || s->get_option_no_throw(flag) != nullptr;
    if (!known) throw UsageError("unknown config key '" + key + "'");
    CLI::Option* opt = sub->get_option_no_throw(flag);
    if (!opt) continue;
    if (opt->get_type_size() == 0) {
      if (value == "true" || value == "1" || value == "yes") args.push_back(flag);
    } else {
      args.push_back(flag + "=" + value);
    }
  }
  return args;
}

dzv::PipelineOptions options(const Args& a) {
  dzv::PipelineOptions o;
  if (a.verify && a.no_verify) throw UsageError("--verify and --no-verify are exclusive");
  o.verify = a.verify ? dzv::Verification::always : a.no_verify ? dzv::Verification::never : dzv::Verification::automatic;
  o.verify_max_weight = a.verify_max;
  o.d_max = a.dmax;
  o.margin = a.margin;
  o.jobs = std::max(a.jobs, 1u);
  if (!a.cache.empty()) o.cache_dir = a.cache;
  return o;
}

int status_exit(const std::vector<dzv::WeightReport>& rs) {
  int code = kOk;
  for (const auto& r : rs) {
    switch (r.status) {
      case dzv::ReportStatus::math_error:
        return kMath;
      case dzv::ReportStatus::verification_failed:
        code = kVerifyFail;
        break;
      case dzv::ReportStatus::inconclusive:
        if (code == kOk) code = kInconclusive;
        break;
      case dzv::ReportStatus::ok:
        break;
    }
  }
  return code;
}

void emit(const std::vector<dzv::WeightReport>& rs, const Args& a) {
  if (a.emit == "csv") {
    std::cout << dzv::to_csv(rs);
  } else if (a.emit == "json") {
    std::cout << dzv::to_json(rs, a.telemetry).dump(2) << '\n';
  } else {
    std::cout << dzv::to_text(rs, a.telemetry);
  }
  for (const auto& r : rs) {
    if (!r.error.empty()) std::cerr << "weight " << r.weight << ": " << r.error << '\n';
  }
}

void add_field(CLI::App* c, Args& a) {
  c->add_option("--q", a.q, "Field size q = p^e");
  c->add_option("--p", a.p, "Characteristic");
  c->add_option("--e", a.e, "Extension degree");
}

void add_run(CLI::App* c, Args& a) {
  c->add_option("--cache", a.cache, "Directory for cached points");
  c->add_option("--jobs", a.jobs, "Worker threads");
  c->add_option("--dmax", a.dmax, "Degree cutoff for zeta partial sums");
  c->add_option("--margin", a.margin, "Extra vanishing coefficients required by verification");
  c->add_option("--verify-max", a.verify_max, "Largest weight verified by default");
  c->add_flag("--verify", a.verify, "Verify every certificate numerically");
  c->add_flag("--no-verify", a.no_verify, "Skip numeric verification");
  c->add_option("--emit", a.emit, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
  c->add_flag("--telemetry", a.telemetry, "Include timings in text and json output");
}

int run(int argc, char** argv) {
  CLI::App app{"Dimensions of weight-n double zeta values in positive characteristic"};
  app.require_subcommand(1);
  Args a;
  std::string config;

  auto* dim = app.add_subcommand("dim", "Dimension report for one weight");
  add_field(dim, a);
  add_run(dim, a);
  dim->add_option("--weight", a.weight, "Weight n")->required();

  auto* table = app.add_subcommand("table", "Reports for a range of weights");
  add_field(table, a);
  add_run(table, a);
  table->add_option("--min", a.min, "Smallest weight")->required();
  table->add_option("--max", a.max, "Largest weight")->required();

  auto* rel = app.add_subcommand("relations", "Relations among the points and the zeta relations they induce");
  add_field(rel, a);
  add_run(rel, a);
  rel->add_option("--weight", a.weight, "Weight n")->required();

  auto* ver = app.add_subcommand("verify", "Check every certificate of a weight numerically");
  add_field(ver, a);
  ver->add_option("--weight", a.weight, "Weight n")->required();
  ver->add_option("--dmax", a.dmax, "Degree cutoff for zeta partial sums");
  ver->add_option("--margin", a.margin, "Extra vanishing coefficients required");
  ver->add_option("--cache", a.cache, "Directory for cached points");

  auto* pt = app.add_subcommand("point", "Coordinates of the point attached to (s1, s2)");
  add_field(pt, a);
  pt->add_option("--s1", a.s1, "First index")->required();
  pt->add_option("--s2", a.s2, "Second index, divisible by q - 1")->required();
  pt->add_option("--emit", a.emit, "Output format")->check(CLI::IsMember({"text", "json"}));
  pt->add_option("--cache", a.cache, "Directory for cached points");

  for (auto* c : {dim, table, rel, ver, pt}) c->add_option("--config", config, "key=value file mirroring the flags");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = merge_config(app, args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  resolve_field(a);

  if (*dim || *table) {
    dzv::Pipeline pl(a.p, a.e, options(a));
    std::vector<dzv::WeightReport> rs;
    if (*dim) {
      if (a.weight < 2) throw UsageError("--weight must be at least 2");
      rs.push_back(pl.dimension(a.weight));
    } else {
      if (a.min < 2 || a.min > a.max) throw UsageError("need 2 <= --min <= --max");
      rs = pl.table(a.min, a.max);
    }
    emit(rs, a);
    return status_exit(rs);
  }

  if (*rel) {
    if (a.weight < 2) throw UsageError("--weight must be at least 2");
    dzv::Pipeline pl(a.p, a.e, options(a));
    const auto r = pl.dimension(a.weight);
    if (a.emit == "json") {
      std::cout << dzv::to_json(r, a.telemetry).dump(2) << '\n';
    } else {
      std::cout << dzv::certificates_text(r);
    }
    return status_exit({r});
  }

  if (*ver) {
    if (a.weight < 2) throw UsageError("--weight must be at least 2");
    a.verify = true;
    dzv::Pipeline pl(a.p, a.e, options(a));
    const auto r = pl.dimension(a.weight);
    std::cout << "q=" << r.q << " weight " << r.weight << " d_max " << a.dmax << '\n';
    for (std::size_t i = 0; i < r.certificates.size(); ++i) {
      const auto& c = *r.certificates[i].check;
      std::cout << "relation " << i + 1 << ": " << dzv::to_string(c.status) << " (margin " << c.margin << ") "
                << c.detail << '\n';
    }
    if (r.certificates.empty()) std::cout << "no relations\n";
    return status_exit({r});
  }

  dzv::Pipeline pl(a.p, a.e, options(a));
  const auto x = pl.xi(a.s1, a.s2);
  if (a.emit == "json") {
    const auto& f = pl.context().field();
    nlohmann::json j{{"q", a.q}, {"s1", a.s1}, {"s2", a.s2}};
    j["alpha"] = dzv::to_json(f, x.alpha);
    j["xi"] = dzv::to_json(f, x.xi);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "alpha = " << x.alpha.str() << '\n';
    for (std::size_t i = 0; i < x.xi.size(); ++i) std::cout << "xi[" << i + 1 << "] = " << x.xi[i].str() << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "dzv: " << e.what() << '\n';
    return kUsage;
  } catch (const dzv::MathError& e) {
    std::cerr << "dzv: math assertion failed: " << e.what() << '\n';
    return kMath;
  } catch (const dzv::VerificationError& e) {
    std::cerr << "dzv: verification failed: " << e.what() << '\n';
    return kVerifyFail;
  } catch (const std::invalid_argument& e) {
    std::cerr << "dzv: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "dzv: " << e.what() << '\n';
    return kMath;
  }
}
