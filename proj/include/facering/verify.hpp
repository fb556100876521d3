#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "facering/betti.hpp"
#include "facering/field.hpp"
#include "facering/koszul.hpp"

namespace facering {

struct VerifyOptions {
  std::vector<AnyField> fields{Rationals{}, PrimeField(2), PrimeField(3)};
  /// Check non-squarefree strands up to this total degree; unset skips the check.
  std::optional<int> nonsquarefree_bound;
  unsigned threads = 1;
  std::optional<SignFlip> inject_fault;
};

/// Smallest disagreement between the two pipelines: first by |I|, then i, then I.
struct Witness {
  int i;
  VertexSet subset;
  SimplicialComplex restricted;
  std::size_t koszul_dim;
  std::size_t hochster_dim;
};

struct FieldVerification {
  std::string field;
  BettiTable koszul;
  BettiTable hochster;
  bool tables_match = false;
  std::optional<Witness> witness;
  std::vector<StrandViolation> nonsquarefree_violations;
  long euler = 0;
  long expected_euler = 0;
  long cubical_euler = 0;

  bool euler_ok() const { return euler == expected_euler && cubical_euler == 1; }
  bool ok() const { return tables_match && nonsquarefree_violations.empty() && euler_ok(); }
};

struct VerifyReport {
  SimplicialComplex complex;
  std::vector<FieldVerification> fields;
  /// Bidegrees (i, j) whose Betti number differs between two of the fields.
  std::vector<std::pair<int, int>> field_dependent_entries;

  bool ok() const;
};

VerifyReport verify_complex(const SimplicialComplex& k, const VerifyOptions& options = {});

nlohmann::ordered_json verify_to_json(const VerifyReport& report);
std::string verify_to_text(const VerifyReport& report);

}  // namespace facering
