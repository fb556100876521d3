#include "facering/cohomology_ring.hpp"

namespace facering {

std::string to_string(MonomialVerdict verdict) {
  switch (verdict) {
    case MonomialVerdict::potentially_nontrivial:
      return "potentially_nontrivial";
    case MonomialVerdict::non_squarefree:
      return "non_squarefree";
    case MonomialVerdict::non_face_support:
      return "non_face_support";
    case MonomialVerdict::overlapping_supports:
      return "overlapping_supports";
  }
  return "unknown";
}

MonomialVerdict monomial_class_filter(const SimplicialComplex& k, const KoszulMonomial& mono) {
  if (mono.vertex_count() != k.vertex_count())
    throw Error(ErrorCode::dimension_mismatch, "monomial and complex have different vertex counts");
  if (!is_squarefree(mono.alpha)) return MonomialVerdict::non_squarefree;
  if (!k.is_face(mono.v_support())) return MonomialVerdict::non_face_support;
  if (mono.v_support().intersects(mono.sigma)) return MonomialVerdict::overlapping_supports;
  return MonomialVerdict::potentially_nontrivial;
}

}  // namespace facering
