#pragma once

#include "nilstab/representation.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nilstab {

struct LogOptions {
  double tol = 1e-14;
  int max_terms = 200;
  /// Recompute exp(log M) with the Taylor exponential and report the error.
  bool verify = true;
};

struct LogResult {
  DenseMatrix value;
  int terms = 0;
  /// Frobenius norm of exp(value) - M; negative when verification was skipped.
  double roundtrip_error = -1.0;
};

/// log M = sum_{k>=1} (-1)^{k+1} (M - I)^k / k. Stops once the Frobenius norm of a
/// term (an upper bound for its operator norm) drops below tol, or at max_terms.
/// Throws TooFarFromIdentity when ||M - I|| >= 1.
LogResult matrix_log_near_identity(const DenseMatrix& M, const LogOptions& opts = {});

/// Taylor series with scaling and squaring.
DenseMatrix matrix_exp_taylor(const DenseMatrix& A);

using UnitaryFamily = std::function<DenseMatrix(const GroupElement&)>;

enum class LogOrdering {
  /// rho(ab) rho(b)^{-1} rho(a)^{-1}
  Summand,
  /// rho(ab) rho(a)^{-1} rho(b)^{-1}
  Precondition,
};

struct PairingOptions {
  LogOrdering ordering = LogOrdering::Summand;
  /// Added to the estimated ||T - I|| before comparing with 1.
  double margin = 1e-8;
  LogOptions log;
};

struct PairingResult {
  double raw = 0.0;
  /// Present only for cycles with residual < 1e-6.
  std::optional<Integer> rounded;
  double residual = 0.0;
  bool is_cycle = false;
  /// ||T_j - I|| in operator norm for each term.
  std::vector<double> term_distances;
  /// Frobenius norm of log T_j.
  std::vector<double> per_term_log_norms;
  std::vector<Complex> traces;
  double max_roundtrip_error = 0.0;
};

/// <rho, c> = (1 / 2 pi i) sum_j c_j Tr log T_j. The family must be unitary;
/// inverses are taken as adjoints. Throws TermOutOfRangeError for the first term
/// with ||T_j - I|| + margin >= 1.
PairingResult winding_pairing(const UnitaryFamily& rho, const Chain2& c, const MalcevGroup& G,
                              const PairingOptions& opts = {});

/// Dense rho_n restricted to whatever elements are asked for.
UnitaryFamily rho_family(const PolyCocycle& sigma, std::size_t n);

struct CertificateEntry {
  std::size_t n = 0;
  /// "certified", "skipped:not_coprime", "undefined:term_out_of_range"
  std::string status;
  std::optional<PairingResult> pairing;
  /// Same pairing with the other log ordering, when defined.
  std::optional<PairingResult> alternate;
  /// Largest |Tr log T_j - (-2 pi i sigma(a_j, b_j))| over the terms.
  double scalar_log_error = 0.0;
  std::string note;
};

struct CertificateReport {
  std::string group;
  std::string cocycle;
  Integer sigma_pairing;
  Integer expected;
  std::vector<CertificateEntry> entries;
  double residual_tolerance = 1e-6;
  double scalar_log_tolerance = 1e-10;
  double margin = 1e-8;
  double distance_bound = 1.0 / 24.0;
  std::string statement;

  std::size_t certified_count() const;
  /// At least one n certified and every n that was not skipped certified.
  bool ok() const;
};

/// Evaluates <rho_n, c> for each n and compares with -<sigma, c>.
/// Throws NotACycle, TorsionPairing, or PairingMismatch (a defined pairing that
/// disagrees with -<sigma, c>).
CertificateReport certify_nonperturbability(const PolyCocycle& sigma, const Chain2& c,
                                            const std::vector<std::size_t>& n_list,
                                            const PairingOptions& opts = {});

/// g -> diag(exp(2 pi i <angles[k], g>)). A genuine representation only when the
/// first-order part of the law is additive in the coordinates used (e.g. Z^m).
UnitaryFamily diagonal_character_representation(std::vector<std::vector<double>> angles);

struct NullTestOptions {
  double epsilon = 1.0 / 25.0;
  int count = 100;
  std::uint64_t seed = kDefaultSeed;
};

struct NullTestReport {
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  int trials = 0;
  int zero_pairings = 0;
  double max_residual = 0.0;
  double max_abs_raw = 0.0;
  double max_perturbation = 0.0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty() && zero_pairings == trials; }
};

/// Perturbs each rho(g) on the support of c by exp(K_g) with K_g skew-adjoint,
/// ||K_g|| < epsilon, and checks that the pairing is defined and rounds to 0.
/// Throws InvalidArgument if epsilon > 1/24 or rep is not multiplicative on the
/// support of c.
NullTestReport perturbation_null_test(const UnitaryFamily& rep, const Chain2& c,
                                      const MalcevGroup& G, const NullTestOptions& opts = {});

} // namespace nilstab
