#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dzv/carlitz.hpp"
#include "dzv/fmodule.hpp"
#include "dzv/numeric.hpp"

namespace dzv {

using Index = std::pair<unsigned, unsigned>;

enum class Verification { automatic, always, never };

struct PipelineOptions {
  Verification verify = Verification::automatic;
  /// Largest weight verified in automatic mode.
  unsigned verify_max_weight = 12;
  unsigned d_max = 12;
  unsigned margin = 10;
  /// Enumeration bound for a single power sum.
  std::uint64_t max_terms = std::uint64_t{1} << 20;
  /// Empty disables the on-disk cache.
  std::filesystem::path cache_dir;
  unsigned jobs = 1;
};

struct Certificate {
  /// a_s(t) for each s in the V-set, in order.
  std::vector<Poly> a;
  /// δ with δ(t − θ^q)^n + F(t − θ^q)^n = δ^{(1)}, F = Σ a_s f_s.
  BiPoly delta;
  /// Induced zeta relation: a_s(θ) α_s(θ) Γ_{s1} Γ_{s2} ζ_A(s).
  std::vector<ZetaTerm> terms;
  std::optional<VerifyOutcome> check;
};

enum class ReportStatus { ok, math_error, verification_failed, inconclusive };

const char* to_string(ReportStatus s) noexcept;

struct WeightReport {
  std::uint32_t q = 0;
  std::uint32_t p = 0;
  std::uint32_t e = 0;
  unsigned weight = 0;
  std::vector<Index> v;
  /// r_n, rank of the span of the Ξ_s.
  std::size_t rank = 0;
  /// Independent relations among the Ξ_s.
  std::size_t relations = 0;
  std::size_t dimension = 0;
  /// Blank at A-odd weights.
  std::optional<std::size_t> fp_linear;
  /// Every s with ζ_A(s)/ζ_A(n) ∈ k.
  std::vector<Index> zeta_like_indices;
  /// Those s not of the form p·s', the count used in the published tables.
  std::size_t zeta_like = 0;
  std::vector<Certificate> certificates;
  bool verified = false;
  std::size_t anomaly = 0;
  std::size_t ell = 0;
  std::size_t rows = 0;
  std::int64_t sup_degree = 0;
  double seconds = 0;
  ReportStatus status = ReportStatus::ok;
  std::string error;
};

/// Checks |V| = ⌊(n−1)/(q−1)⌋, rank + relations = |V|,
/// dimension = n − |V| + rank and 1 ≤ dimension ≤ n. Throws MathError.
void check_report(const WeightReport& r);

/// True unless p divides both entries.
bool frobenius_primitive(const Index& s, std::uint32_t p) noexcept;

/// Ξ points and H polynomials on disk, one JSON file per key, published by
/// write-then-rename.
class PointCache {
 public:
  explicit PointCache(std::filesystem::path dir);

  std::optional<XiPoint> load_xi(const CarlitzContext& ctx, unsigned s1, unsigned s2) const;
  void store_xi(const CarlitzContext& ctx, const XiPoint& x) const;
  std::optional<BiPoly> load_h(const CarlitzContext& ctx, std::size_t n) const;
  void store_h(const CarlitzContext& ctx, std::size_t n, const BiPoly& h) const;

  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  void publish(const std::filesystem::path& target, const std::string& body) const;

  std::filesystem::path dir_;
};

class Pipeline {
 public:
  /// F_q with q = p^e. Fixes the Euler ratio sign numerically.
  Pipeline(std::uint32_t p, std::uint32_t e = 1, PipelineOptions opts = {});
  ~Pipeline();

  const CarlitzContext& context() const noexcept { return *ctx_; }
  const NumericOracle& oracle() const noexcept { return *oracle_; }
  const PipelineOptions& options() const noexcept { return opts_; }

  /// Pairs (s1, s2) with s1 + s2 = n, s1, s2 ≥ 1, (q − 1) | s2, by s1.
  std::vector<Index> v_set(unsigned n) const;

  /// Ξ_s, from the cache when present.
  XiPoint xi(unsigned s1, unsigned s2) const;

  /// Full report for weight n. Errors propagate.
  WeightReport dimension(unsigned n) const;

  /// Indices s with ζ_A(s)/ζ_A(n) ∈ k.
  std::vector<Index> zeta_like(unsigned n) const;
  /// Zeta-like indices with p ∤ s1 or p ∤ s2. When p divides both,
  /// ζ_A(s) = ζ_A(s/p)^p and the index repeats one of weight n/p.
  std::size_t zeta_like_count(unsigned n) const;

  /// Reports for n_min..n_max; a failing weight is reported with its
  /// status and the run continues.
  std::vector<WeightReport> table(unsigned n_min, unsigned n_max) const;

 private:
  bool should_verify(unsigned n) const;
  WeightReport report(unsigned n, unsigned jobs) const;
  std::vector<XiPoint> xi_points(const std::vector<Index>& v, unsigned jobs) const;
  void load_h() const;
  void save_h() const;

  PipelineOptions opts_;
  std::unique_ptr<CarlitzContext> ctx_;
  std::unique_ptr<NumericOracle> oracle_;
  std::unique_ptr<PointCache> cache_;
  mutable std::mutex h_mu_;
  mutable std::size_t h_saved_ = 0;
};

std::string to_csv(const std::vector<WeightReport>& reports);
/// Per-weight JSON. Timing is included only when `telemetry` is set, so
/// that repeated runs emit identical bytes.
nlohmann::json to_json(const WeightReport& r, bool telemetry = false);
nlohmann::json to_json(const std::vector<WeightReport>& reports, bool telemetry = false);
std::string to_text(const std::vector<WeightReport>& reports, bool telemetry = false);
/// Certificates with their induced zeta relations, one block per relation.
std::string certificates_text(const WeightReport& r);

}  // namespace dzv
