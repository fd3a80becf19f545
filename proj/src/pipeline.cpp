#include "dzv/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "dzv/chen.hpp"
#include "dzv/errors.hpp"
#include "dzv/serialize.hpp"
#include "dzv/siegel.hpp"

namespace dzv {

namespace {

template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(jobs, 1u), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string field_tag(const CarlitzContext& ctx) {
  return "q" + std::to_string(ctx.q()) + "_p" + std::to_string(ctx.p()) + "_e" + std::to_string(ctx.field().e());
}

bool same_field(const nlohmann::json& j, const CarlitzContext& ctx) {
  return j.value("q", 0u) == ctx.q() && j.value("p", 0u) == ctx.p() && j.value("e", 0u) == ctx.field().e();
}

std::string index_str(const Index& s) { return "(" + std::to_string(s.first) + "," + std::to_string(s.second) + ")"; }

}  // namespace

const char* to_string(ReportStatus s) noexcept {
  switch (s) {
    case ReportStatus::ok:
      return "ok";
    case ReportStatus::math_error:
      return "math_error";
    case ReportStatus::verification_failed:
      return "verification_failed";
    case ReportStatus::inconclusive:
      return "inconclusive";
  }
  return "?";
}

void check_report(const WeightReport& r) {
  const std::size_t expect_v = (r.weight - 1) / (r.q - 1);
  if (r.v.size() != expect_v) throw MathError("V-set has the wrong size");
  if (r.rank + r.relations != r.v.size()) throw MathError("rank and relation count do not add up to |V|");
  if (r.dimension != r.weight - r.v.size() + r.rank) throw MathError("dimension formula violated");
  if (r.dimension < 1 || r.dimension > r.weight) throw MathError("dimension out of range");
}

bool frobenius_primitive(const Index& s, std::uint32_t p) noexcept { return s.first % p != 0 || s.second % p != 0; }

PointCache::PointCache(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

void PointCache::publish(const std::filesystem::path& target, const std::string& body) const {
  static std::atomic<unsigned> counter{0};
  std::ostringstream tmp_name;
  tmp_name << target.filename().string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "."
           << counter++;
  const auto tmp = dir_ / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    out << body;
    if (!out.flush()) throw std::runtime_error("cannot write cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

std::optional<XiPoint> PointCache::load_xi(const CarlitzContext& ctx, unsigned s1, unsigned s2) const {
  const auto path = dir_ / ("xi_" + field_tag(ctx) + "_" + std::to_string(s1) + "_" + std::to_string(s2) + ".json");
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const auto j = nlohmann::json::parse(in);
    if (!same_field(j, ctx) || j.at("s1") != s1 || j.at("s2") != s2) return std::nullopt;
    XiPoint x;
    x.s1 = s1;
    x.s2 = s2;
    x.alpha = poly_from_json(ctx.field(), j.at("alpha"), Var::t);
    x.xi = point_from_json(ctx.field(), j.at("xi"));
    if (x.xi.size() != s1 + s2) return std::nullopt;
    return x;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void PointCache::store_xi(const CarlitzContext& ctx, const XiPoint& x) const {
  const auto path = dir_ / ("xi_" + field_tag(ctx) + "_" + std::to_string(x.s1) + "_" + std::to_string(x.s2) + ".json");
  nlohmann::json j{{"q", ctx.q()}, {"p", ctx.p()}, {"e", ctx.field().e()}, {"s1", x.s1}, {"s2", x.s2}};
  j["alpha"] = to_json(ctx.field(), x.alpha);
  j["xi"] = to_json(ctx.field(), x.xi);
  publish(path, j.dump());
}

std::optional<BiPoly> PointCache::load_h(const CarlitzContext& ctx, std::size_t n) const {
  const auto path = dir_ / ("h_" + field_tag(ctx) + "_" + std::to_string(n) + ".json");
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const auto j = nlohmann::json::parse(in);
    if (!same_field(j, ctx) || j.at("n") != n) return std::nullopt;
    return bipoly_from_json(ctx.field(), j.at("h"));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void PointCache::store_h(const CarlitzContext& ctx, std::size_t n, const BiPoly& h) const {
  const auto path = dir_ / ("h_" + field_tag(ctx) + "_" + std::to_string(n) + ".json");
  nlohmann::json j{{"q", ctx.q()}, {"p", ctx.p()}, {"e", ctx.field().e()}, {"n", n}};
  j["h"] = to_json(ctx.field(), h);
  publish(path, j.dump());
}

Pipeline::Pipeline(std::uint32_t p, std::uint32_t e, PipelineOptions opts)
    : opts_(std::move(opts)), ctx_(std::make_unique<CarlitzContext>(p, e)) {
  oracle_ = std::make_unique<NumericOracle>(*ctx_, opts_.max_terms);
  if (!opts_.cache_dir.empty()) {
    cache_ = std::make_unique<PointCache>(opts_.cache_dir);
    load_h();
  }
  oracle_->calibrate_euler_sign();
}

Pipeline::~Pipeline() = default;

void Pipeline::load_h() const {
  std::lock_guard lock(h_mu_);
  for (std::size_t n = ctx_->anderson_thakur_count();; ++n) {
    auto h = cache_->load_h(*ctx_, n);
    if (!h || !ctx_->install_anderson_thakur(n, std::move(*h))) break;
  }
  h_saved_ = ctx_->anderson_thakur_count();
}

void Pipeline::save_h() const {
  if (!cache_) return;
  std::lock_guard lock(h_mu_);
  const std::size_t count = ctx_->anderson_thakur_count();
  for (std::size_t n = h_saved_; n < count; ++n) cache_->store_h(*ctx_, n, ctx_->anderson_thakur(n));
  h_saved_ = std::max(h_saved_, count);
}

std::vector<Index> Pipeline::v_set(unsigned n) const {
  const unsigned step = ctx_->q() - 1;
  std::vector<Index> v;
  for (unsigned s2 = n - 1 - (n - 1) % step; s2 >= 1 && s2 < n; s2 -= step) v.emplace_back(n - s2, s2);
  return v;
}

XiPoint Pipeline::xi(unsigned s1, unsigned s2) const {
  if (cache_) {
    if (auto hit = cache_->load_xi(*ctx_, s1, s2)) return std::move(*hit);
  }
  XiPoint x = xi_point(*ctx_, s1, s2);
  if (cache_) cache_->store_xi(*ctx_, x);
  return x;
}

std::vector<XiPoint> Pipeline::xi_points(const std::vector<Index>& v, unsigned jobs) const {
  std::vector<XiPoint> out(v.size());
  parallel_for(v.size(), jobs, [&](std::size_t i) { out[i] = xi(v[i].first, v[i].second); });
  save_h();
  return out;
}

bool Pipeline::should_verify(unsigned n) const {
  switch (opts_.verify) {
    case Verification::always:
      return true;
    case Verification::never:
      return false;
    case Verification::automatic:
      return n <= opts_.verify_max_weight;
  }
  return false;
}

WeightReport Pipeline::dimension(unsigned n) const { return report(n, opts_.jobs); }

WeightReport Pipeline::report(unsigned n, unsigned jobs) const {
  if (n < 2) throw std::invalid_argument("weight must be at least 2");
  const auto start = std::chrono::steady_clock::now();
  const std::uint32_t q = ctx_->q();
  WeightReport r;
  r.q = q;
  r.p = ctx_->p();
  r.e = ctx_->field().e();
  r.weight = n;
  r.v = v_set(n);

  const std::vector<XiPoint> xs = xi_points(r.v, jobs);
  std::vector<TensorPoint> pts;
  for (const auto& x : xs) {
    pts.push_back(x.xi);
    r.sup_degree = std::max(r.sup_degree, sup_degree(x.xi).value_or(0));
  }
  const RelationResult rel = relation_rank(*ctx_, pts, n);
  r.rank = rel.rank;
  r.relations = rel.relations.size();
  r.dimension = n - r.v.size() + r.rank;
  r.anomaly = rel.homogeneous_nullity;
  r.ell = rel.ell;
  r.rows = rel.rows;
  check_report(r);

  if (n % (q - 1) == 0) r.fp_linear = fp_linear_count(*ctx_, n);
  r.zeta_like_indices = zeta_like(n);
  r.zeta_like = static_cast<std::size_t>(
      std::count_if(r.zeta_like_indices.begin(), r.zeta_like_indices.end(),
                    [&](const Index& s) { return frobenius_primitive(s, r.p); }));

  r.verified = should_verify(n);
  for (const auto& relation : rel.relations) {
    Certificate c;
    c.a = relation.a;
    c.delta = relation.delta;
    c.terms = induced_terms(*ctx_, r.v, relation.a);
    if (r.verified) {
      c.check = oracle_->verify(c.terms, n, opts_.d_max, opts_.margin);
      if (c.check->status == VerifyStatus::fail) {
        r.status = ReportStatus::verification_failed;
        r.error = "certificate " + std::to_string(r.certificates.size()) + ": " + c.check->detail;
      } else if (c.check->status == VerifyStatus::inconclusive && r.status == ReportStatus::ok) {
        r.status = ReportStatus::inconclusive;
        r.error = "certificate " + std::to_string(r.certificates.size()) + ": " + c.check->detail;
      }
    }
    r.certificates.push_back(std::move(c));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<Index> Pipeline::zeta_like(unsigned n) const {
  const std::uint32_t q = ctx_->q();
  const bool even = n % (q - 1) == 0;
  std::optional<TensorPoint> vn;
  if (!even) vn = special_point_vn(*ctx_, n);
  std::vector<Index> out;
  for (const auto& s : v_set(n)) {
    std::vector<TensorPoint> pts;
    if (vn) pts.push_back(*vn);
    pts.push_back(xi(s.first, s.second).xi);
    const std::size_t rank = relation_rank(*ctx_, pts, n).rank;
    if (rank == (even ? 0u : 1u)) out.push_back(s);
  }
  return out;
}

std::size_t Pipeline::zeta_like_count(unsigned n) const {
  const auto z = zeta_like(n);
  return static_cast<std::size_t>(
      std::count_if(z.begin(), z.end(), [&](const Index& s) { return frobenius_primitive(s, ctx_->p()); }));
}

std::vector<WeightReport> Pipeline::table(unsigned n_min, unsigned n_max) const {
  if (n_min < 2 || n_min > n_max) throw std::invalid_argument("weight range must satisfy 2 <= min <= max");
  std::vector<WeightReport> out(n_max - n_min + 1);
  // Weights share the worker pool; Ξ constructions inside a weight run serially.
  auto run = [&](std::size_t i) {
    const unsigned n = n_min + static_cast<unsigned>(i);
    try {
      out[i] = report(n, 1);
    } catch (const MathError& e) {
      out[i] = WeightReport{};
      out[i].q = ctx_->q();
      out[i].p = ctx_->p();
      out[i].e = ctx_->field().e();
      out[i].weight = n;
      out[i].status = ReportStatus::math_error;
      out[i].error = e.what();
    }
  };
  parallel_for(out.size(), opts_.jobs, run);
  return out;
}

std::string to_csv(const std::vector<WeightReport>& reports) {
  std::ostringstream os;
  os << "weight,dimension,fp_linear,zeta_like,V_size,rank,relations\n";
  for (const auto& r : reports) {
    os << r.weight << ',';
    if (r.status == ReportStatus::math_error) {
      os << ",,,,,\n";
      continue;
    }
    os << r.dimension << ',';
    if (r.fp_linear) os << *r.fp_linear;
    os << ',' << r.zeta_like << ',' << r.v.size() << ',' << r.rank << ',' << r.relations << '\n';
  }
  return os.str();
}

nlohmann::json to_json(const WeightReport& r, bool telemetry) {
  nlohmann::json j{{"q", r.q}, {"p", r.p}, {"e", r.e}, {"weight", r.weight}, {"status", to_string(r.status)}};
  if (!r.error.empty()) j["error"] = r.error;
  if (r.status == ReportStatus::math_error) return j;
  nlohmann::json v = nlohmann::json::array();
  for (const auto& s : r.v) v.push_back({s.first, s.second});
  nlohmann::json zl = nlohmann::json::array();
  for (const auto& s : r.zeta_like_indices) zl.push_back({s.first, s.second});
  j["V"] = v;
  j["V_size"] = r.v.size();
  j["rank"] = r.rank;
  j["relations"] = r.relations;
  j["dimension"] = r.dimension;
  j["fp_linear"] = r.fp_linear ? nlohmann::json(*r.fp_linear) : nlohmann::json(nullptr);
  j["zeta_like"] = r.zeta_like;
  j["zeta_like_indices"] = zl;
  j["anomaly"] = r.anomaly;
  j["ell"] = r.ell;
  j["rows"] = r.rows;
  j["sup_degree"] = r.sup_degree;
  j["verified"] = r.verified;
  nlohmann::json certs = nlohmann::json::array();
  for (const auto& c : r.certificates) {
    const FiniteField* fp = c.delta.field();
    for (const auto& x : c.a) fp = fp ? fp : x.field();
    if (!fp) continue;
    const FiniteField& f = *fp;
    nlohmann::json cj{{"points", v}, {"verified", true}};
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : c.a) a.push_back(to_json(f, x));
    cj["a"] = a;
    cj["delta"] = to_json(f, c.delta);
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : c.terms) terms.push_back({{"s", {t.s1, t.s2}}, {"coeff", to_json(f, t.coeff)}});
    cj["zeta_terms"] = terms;
    if (c.check) {
      cj["numeric"] = {{"status", to_string(c.check->status)}, {"margin", c.check->margin}};
      if (c.check->c0) cj["numeric"]["c0"] = to_json(f, *c.check->c0);
    }
    certs.push_back(cj);
  }
  j["certificates"] = certs;
  if (telemetry) j["seconds"] = r.seconds;
  return j;
}

nlohmann::json to_json(const std::vector<WeightReport>& reports, bool telemetry) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : reports) out.push_back(to_json(r, telemetry));
  return out;
}

std::string to_text(const std::vector<WeightReport>& reports, bool telemetry) {
  std::ostringstream os;
  os << std::left << std::setw(8) << "weight" << std::setw(11) << "dimension" << std::setw(11) << "fp_linear"
     << std::setw(11) << "zeta_like" << std::setw(8) << "|V|" << std::setw(7) << "rank" << std::setw(11)
     << "relations" << "status";
  if (telemetry) os << "  seconds";
  os << '\n';
  for (const auto& r : reports) {
    os << std::setw(8) << r.weight;
    if (r.status == ReportStatus::math_error) {
      os << "error: " << r.error << '\n';
      continue;
    }
    os << std::setw(11) << r.dimension << std::setw(11) << (r.fp_linear ? std::to_string(*r.fp_linear) : "")
       << std::setw(11) << r.zeta_like << std::setw(8) << r.v.size() << std::setw(7) << r.rank
       << std::setw(11) << r.relations << to_string(r.status);
    if (telemetry) os << "  " << std::fixed << std::setprecision(3) << r.seconds;
    os << '\n';
  }
  return os.str();
}

std::string certificates_text(const WeightReport& r) {
  std::ostringstream os;
  os << "q=" << r.q << " weight " << r.weight << ": " << r.relations << " relation(s) among "
     << r.v.size() << " points\n";
  for (std::size_t k = 0; k < r.certificates.size(); ++k) {
    const auto& c = r.certificates[k];
    os << "relation " << k + 1 << '\n';
    for (std::size_t i = 0; i < c.a.size(); ++i) {
      if (c.a[i].is_zero()) continue;
      os << "  a" << index_str(r.v[i]) << " = " << c.a[i].str() << '\n';
    }
    os << "  zeta relation:\n";
    for (const auto& t : c.terms) {
      if (t.coeff.is_zero()) continue;
      os << "    + (" << t.coeff.str() << ") * zeta(" << t.s1 << "," << t.s2 << ")\n";
    }
    if (c.check) {
      os << "    = ";
      if (c.check->c0) {
        os << "(" << c.check->c0->str() << ") * pi^" << r.weight;
      } else {
        os << "0";
      }
      os << "   [" << to_string(c.check->status) << ", margin " << c.check->margin << "]\n";
    }
  }
  return os.str();
}

}  // namespace dzv
