#pragma once

// CM-method pipeline: reduce catalog curves mod p, search for primes with a
// prescribed splitting, and compare predicted against computed reduction types.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cmreduce/bigint.hpp"
#include "cmreduce/catalog.hpp"
#include "cmreduce/errors.hpp"
#include "cmreduce/invariants.hpp"
#include "cmreduce/predictor.hpp"
#include "cmreduce/splitting.hpp"

namespace cmreduce {

/// Primes below this get a computed profile attached.
inline constexpr std::uint64_t kVerificationCap = std::uint64_t{1} << 20;

/// Coefficients mod p, each in [0, p).
inline ZPoly reduce_coefficients(const ZPoly& f, const BigInt& p) {
  ZPoly out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i] = f[i] % p;
    if (out[i] < 0) out[i] += p;
  }
  return out;
}

/// Throws bad_reduction when p divides the discriminant of the stored model.
inline void check_good_reduction(const CMCurveRecord& rec, const BigInt& p) {
  if (p < 3) throw domain_error("reduce_curve: p must be an odd prime");
  if (rec.discriminant % p == 0) throw bad_reduction("bad reduction of " + rec.label + " at p = " + to_string(p));
  if (rec.f.back() % p == 0) throw bad_reduction("leading coefficient of " + rec.label + " vanishes mod " + to_string(p));
}

inline ReducedCurve reduce_curve(const CMCurveRecord& rec, std::uint64_t p) {
  check_good_reduction(rec, BigInt(p));
  const PrimeField F(p);
  return ReducedCurve(F, zpoly_reduce(F, rec.f));
}

enum class TargetType { ordinary, superspecial, ssing_non_sspec, supersingular, prank0_a2, prank0_a1 };

inline TargetType parse_target_type(const std::string& s) {
  if (s == "ordinary") return TargetType::ordinary;
  if (s == "superspecial") return TargetType::superspecial;
  if (s == "ssing-non-sspec") return TargetType::ssing_non_sspec;
  if (s == "supersingular") return TargetType::supersingular;
  if (s == "prank0-a2") return TargetType::prank0_a2;
  if (s == "prank0-a1") return TargetType::prank0_a1;
  throw domain_error("unknown target type '" + s + "'");
}

inline const char* to_string(TargetType t) {
  switch (t) {
    case TargetType::ordinary: return "ordinary";
    case TargetType::superspecial: return "superspecial";
    case TargetType::ssing_non_sspec: return "ssing-non-sspec";
    case TargetType::supersingular: return "supersingular";
    case TargetType::prank0_a2: return "prank0-a2";
    case TargetType::prank0_a1: return "prank0-a1";
  }
  return "";
}

/// Splitting that yields the target type for genus g. Genus-2 supersingular
/// non-superspecial uses the Kronecker condition (D/p) = -1 instead.
inline PrimeTarget prime_target_for(int g, TargetType t) {
  auto unsupported = [&]() -> PrimeTarget {
    throw domain_error(std::string("target '") + to_string(t) + "' is not predicted for genus " + std::to_string(g));
  };
  if (t == TargetType::ordinary) return SplitTarget{2 * g};
  switch (g) {
    case 1:
      if (t == TargetType::supersingular) return SplitTarget{1};
      return unsupported();
    case 2:
      if (t == TargetType::superspecial) return SplitTarget{2};
      if (t == TargetType::ssing_non_sspec) return KroneckerTarget{-1};
      return unsupported();
    case 3:
      if (t == TargetType::superspecial) return SplitTarget{3};
      if (t == TargetType::prank0_a2) return SplitTarget{2};
      if (t == TargetType::prank0_a1) return SplitTarget{1};
      return unsupported();
    default:
      if (t == TargetType::superspecial) return SplitTarget{g};
      return unsupported();
  }
}

inline void require_primitive_type(const CMCurveRecord& rec) {
  if (rec.genus < 3) return;
  if (!rec.cm_type) throw missing_data(rec.label + ": no CM type recorded; the theorem needs a primitive type");
  if (!is_primitive(*rec.cm_type)) throw domain_error(rec.label + ": CM type is imprimitive");
}

/// Splitting type of p for prediction purposes. Ramified primes are flagged, not thrown.
inline SplittingType splitting_for_prediction(const CyclicCMField& field, const BigInt& p, std::string* method = nullptr) {
  if (field.discriminant % p == 0) {
    if (method) *method = "discriminant";
    return {0, 0, true};
  }
  if (fits_u64(p) && p < (BigInt(1) << 32) && !field.defining_polys.empty()) {
    try {
      const auto s = split_by_factorization(field, p.convert_to<std::uint64_t>());
      if (method) *method = "factor";
      return s;
    } catch (const not_squarefree&) {
    }
  }
  if (field.conductor) {
    if (method) *method = "residue";
    return split_by_residue(field, p);
  }
  if (field.two_g == 4) {
    // Cyclic quartic: (D/p) = -1 exactly when p is inert.
    if (kronecker(field.discriminant, p) == -1) {
      if (method) *method = "stickelberger";
      return {1, 4, false};
    }
  }
  throw missing_data("field " + field.label + ": cannot determine the splitting of " + to_string(p));
}

struct GenerationResult {
  BigInt p;
  ZPoly reduced;
  SplittingType split;
  Prediction prediction;
  std::optional<ReductionProfile> verified;
  std::optional<ZPoly> l_poly;
  bool verified_match = true;
  PrimeTarget target;
};

struct GenerateOptions {
  FindPrimeOptions search;
  int max_bad_reduction_retries = 16;
  InvariantsOptions invariants;
};

inline GenerationResult generate(const Catalog& catalog, const CMCurveRecord& rec, TargetType type, unsigned bits,
                                 std::uint64_t seed, const GenerateOptions& options = {}) {
  const CyclicCMField field = catalog.field(rec.field_label);
  const PrimeTarget target = prime_target_for(rec.genus, type);
  require_primitive_type(rec);
  for (int attempt = 0; attempt <= options.max_bad_reduction_retries; ++attempt) {
    const BigInt p = find_prime(field, target, bits, seed + static_cast<std::uint64_t>(attempt) * 0x9e3779b97f4a7c15ULL,
                                options.search);
    if (!satisfies_target(field, target, p)) throw internal_inconsistency("generate: prime fails its own predicate");
    try {
      check_good_reduction(rec, p);
    } catch (const bad_reduction&) {
      continue;
    }
    GenerationResult out;
    out.p = p;
    out.target = target;
    out.reduced = reduce_coefficients(rec.f, p);
    out.split = splitting_for_prediction(field, p);
    auto pred = predict(rec.genus, out.split);
    if (!pred) throw internal_inconsistency("generate: chosen splitting has no prediction");
    out.prediction = *pred;
    if (p < kVerificationCap) {
      const auto curve = reduce_curve(rec, p.convert_to<std::uint64_t>());
      auto inv = compute_invariants(curve, options.invariants);
      out.verified_match = inv.profile.p_rank == out.prediction.profile.p_rank &&
                           inv.profile.a_number == out.prediction.profile.a_number;
      out.verified = std::move(inv.profile);
      out.l_poly = std::move(inv.l_poly);
    }
    return out;
  }
  throw search_timeout("generate: every candidate prime had bad reduction");
}

enum class Verdict { match, mismatch, undetermined };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::match: return "match";
    case Verdict::mismatch: return "mismatch";
    case Verdict::undetermined: return "undetermined";
  }
  return "";
}

struct VerifyReport {
  std::uint64_t p = 0;
  SplittingType split;
  std::string split_method;
  std::optional<Prediction> prediction;
  InvariantsReport computed;
  Verdict verdict = Verdict::undetermined;
  std::vector<std::string> notes;
};

struct VerifyOptions {
  InvariantsOptions invariants;
};

/// Prediction against computation at one prime. Throws bad_reduction and ramified_prime.
inline VerifyReport verify(const Catalog& catalog, const CMCurveRecord& rec, std::uint64_t p, const VerifyOptions& options = {}) {
  if (p >= kVerificationCap) throw resource_error("verify: p must be below 2^20");
  const auto curve = reduce_curve(rec, p);
  const CyclicCMField field = catalog.field(rec.field_label);
  VerifyReport r;
  r.p = p;
  r.split = splitting_for_prediction(field, BigInt(p), &r.split_method);
  if (r.split.ramified) throw ramified_prime(std::to_string(p) + " is ramified in " + field.label);
  r.computed = compute_invariants(curve, options.invariants);
  if (rec.genus >= 3 && !(rec.cm_type && is_primitive(*rec.cm_type))) {
    r.notes.push_back("no primitive CM type recorded; theorem not applicable");
  } else {
    r.prediction = predict(rec.genus, r.split);
  }
  if (!r.prediction) {
    r.verdict = Verdict::undetermined;
    if (rec.genus >= 4) r.notes.push_back("theorem silent for this splitting");
    return r;
  }
  const auto& want = r.prediction->profile;
  const auto& got = r.computed.profile;
  r.verdict = (want.p_rank == got.p_rank && want.a_number == got.a_number) ? Verdict::match : Verdict::mismatch;
  if (!got.slopes) r.notes.push_back("L-polynomial skipped: p^g above budget");
  if (want.slopes && got.slopes && *want.slopes != *got.slopes) r.notes.push_back("predicted slopes differ from Newton polygon");
  if (got.type_name == "supersingular (outlier)") r.notes.push_back("outlier: I_{3,1} with all slopes 1/2");
  if (got.group_scheme.rfind("ambiguous", 0) == 0) r.notes.push_back("group scheme not determined by (f, a, slopes)");
  return r;
}

enum class SweepStatus { verified, bad_reduction, ramified, undetermined_split };

inline const char* to_string(SweepStatus s) {
  switch (s) {
    case SweepStatus::verified: return "verified";
    case SweepStatus::bad_reduction: return "bad-reduction";
    case SweepStatus::ramified: return "ramified";
    case SweepStatus::undetermined_split: return "undetermined-split";
  }
  return "";
}

struct SweepRow {
  std::uint64_t p = 0;
  SweepStatus status = SweepStatus::verified;
  std::optional<VerifyReport> report;
  std::string note;
};

struct SweepOptions {
  VerifyOptions verify;
  unsigned threads = 0;
};

/// verify() at every odd prime 3 <= p <= pmax, sorted by p.
inline std::vector<SweepRow> verify_sweep(const Catalog& catalog, const CMCurveRecord& rec, std::uint64_t pmax,
                                          const SweepOptions& options = {}) {
  if (pmax >= kVerificationCap) throw resource_error("verify_sweep: pmax must be below 2^20");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 3; p <= pmax; p += 2)
    if (detail::miller_rabin_u64(p)) primes.push_back(p);
  std::vector<SweepRow> rows(primes.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < primes.size();) {
      SweepRow& row = rows[i];
      row.p = primes[i];
      try {
        row.report = verify(catalog, rec, row.p, options.verify);
        row.status = SweepStatus::verified;
      } catch (const bad_reduction& e) {
        row.status = SweepStatus::bad_reduction;
        row.note = e.what();
      } catch (const ramified_prime& e) {
        row.status = SweepStatus::ramified;
        row.note = e.what();
      } catch (const missing_data& e) {
        row.status = SweepStatus::undetermined_split;
        row.note = e.what();
      }
    }
  };
  unsigned n = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(std::max<std::size_t>(primes.size(), 1)));
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_lock;
  for (unsigned t = 0; t < n; ++t)
    pool.emplace_back([&] {
      try {
        work();
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_lock);
        if (!failure) failure = std::current_exception();
        next = primes.size();
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace cmreduce
