#include "facering/verify.hpp"

#include <set>
#include <sstream>

#include "facering/hochster.hpp"
#include "facering/io.hpp"

namespace facering {

namespace {

std::optional<Witness> find_witness(const SimplicialComplex& k, const BettiTable& koszul, const BettiTable& hochster) {
  std::set<std::pair<int, VertexSet>> keys;
  for (const auto& [key, dim] : koszul.refined()) keys.insert(key);
  for (const auto& [key, dim] : hochster.refined()) keys.insert(key);
  std::optional<Witness> best;
  for (const auto& [i, subset] : keys) {
    const std::size_t a = koszul.refined_at(i, subset);
    const std::size_t b = hochster.refined_at(i, subset);
    if (a == b) continue;
    const bool better =
        !best || subset.size() < best->subset.size() ||
        (subset.size() == best->subset.size() && (i < best->i || (i == best->i && subset < best->subset)));
    if (better) best = Witness{i, subset, full_subcomplex(k, subset), a, b};
  }
  return best;
}

template <ExactField F>
FieldVerification verify_over(const SimplicialComplex& k, const F& field, const VerifyOptions& options) {
  FieldVerification out;
  out.field = field.name();
  out.koszul = betti_table(k, field, KoszulOptions{std::nullopt, options.threads, options.inject_fault});
  out.hochster = hochster_betti(k, field, options.threads);
  out.tables_match = out.koszul == out.hochster;
  if (!out.tables_match) out.witness = find_witness(k, out.koszul, out.hochster);
  if (options.nonsquarefree_bound)
    out.nonsquarefree_violations = nonsquarefree_violations(k, field, *options.nonsquarefree_bound, options.threads);
  out.euler = euler_characteristic(total_degree_dims(out.koszul));
  out.expected_euler = moment_angle_euler(k);
  out.cubical_euler = cubical_euler(k);
  return out;
}

}  // namespace

bool VerifyReport::ok() const {
  return std::all_of(fields.begin(), fields.end(), [](const FieldVerification& f) { return f.ok(); });
}

VerifyReport verify_complex(const SimplicialComplex& k, const VerifyOptions& options) {
  VerifyReport report{k, {}, {}};
  for (const AnyField& field : options.fields)
    report.fields.push_back(std::visit([&](const auto& f) { return verify_over(k, f, options); }, field));
  std::set<std::pair<int, int>> differing;
  for (std::size_t a = 0; a < report.fields.size(); ++a)
    for (std::size_t b = a + 1; b < report.fields.size(); ++b) {
      const auto& x = report.fields[a].koszul;
      const auto& y = report.fields[b].koszul;
      for (const auto& [key, dim] : x.entries())
        if (y.at(key.first, key.second) != dim) differing.insert(key);
      for (const auto& [key, dim] : y.entries())
        if (x.at(key.first, key.second) != dim) differing.insert(key);
    }
  report.field_dependent_entries.assign(differing.begin(), differing.end());
  return report;
}

nlohmann::ordered_json verify_to_json(const VerifyReport& report) {
  auto fields = nlohmann::ordered_json::array();
  for (const auto& f : report.fields) {
    nlohmann::ordered_json entry{{"field", f.field},
                                 {"ok", f.ok()},
                                 {"tables_match", f.tables_match},
                                 {"betti", betti_to_json(f.koszul)},
                                 {"euler", f.euler},
                                 {"expected_euler", f.expected_euler},
                                 {"cubical_euler", f.cubical_euler}};
    if (f.witness) {
      entry["witness"] = {{"i", -f.witness->i},
                          {"j", 2 * f.witness->subset.size()},
                          {"subset", vertex_set_to_json(f.witness->subset)},
                          {"full_subcomplex", complex_to_json(f.witness->restricted)},
                          {"koszul", f.witness->koszul_dim},
                          {"hochster", f.witness->hochster_dim}};
    }
    auto violations = nlohmann::ordered_json::array();
    for (const auto& v : f.nonsquarefree_violations)
      violations.push_back({{"multidegree", v.degree}, {"i", -v.homological_degree}, {"dim", v.dim}});
    entry["nonsquarefree_violations"] = violations;
    fields.push_back(std::move(entry));
  }
  auto differing = nlohmann::ordered_json::array();
  for (const auto& [i, j] : report.field_dependent_entries) differing.push_back({-i, 2 * j});
  return {{"complex", complex_to_json(report.complex)},
          {"ok", report.ok()},
          {"fields", fields},
          {"field_dependent_bidegrees", differing}};
}

std::string verify_to_text(const VerifyReport& report) {
  std::ostringstream out;
  out << report.complex.to_string() << "\n";
  for (const auto& f : report.fields) {
    out << "  " << f.field << ": " << (f.ok() ? "ok" : "FAILED") << "  koszul/hochster "
        << (f.tables_match ? "agree" : "DIFFER") << ", euler " << f.euler << " (expected " << f.expected_euler
        << "), cubical euler " << f.cubical_euler;
    if (!f.nonsquarefree_violations.empty())
      out << ", " << f.nonsquarefree_violations.size() << " non-squarefree strand(s) with cohomology";
    out << "\n";
    if (f.witness) {
      const auto& w = *f.witness;
      out << "    witness: bidegree (" << -w.i << "," << 2 * w.subset.size() << "), I = " << w.subset.to_string()
          << ", K_I = " << w.restricted.to_string() << ", koszul " << w.koszul_dim << " vs hochster " << w.hochster_dim
          << "\n";
    }
  }
  if (!report.field_dependent_entries.empty()) {
    out << "  field-dependent bidegrees:";
    for (const auto& [i, j] : report.field_dependent_entries) out << " (" << -i << "," << 2 * j << ")";
    out << "\n";
  }
  return out.str();
}

}  // namespace facering
