#include "qchan/ensemble_spec.hpp"

namespace qchan {

std::string_view to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::ginibre: return "ginibre";
    case EnsembleKind::wishart: return "wishart";
    case EnsembleKind::hs_channel: return "hs_channel";
    case EnsembleKind::haar_unitary: return "haar_unitary";
    case EnsembleKind::stinespring_channel: return "stinespring_channel";
    case EnsembleKind::unitary_brownian: return "unitary_brownian";
  }
  return "unknown";
}

std::optional<EnsembleKind> parse_ensemble_kind(std::string_view name) {
  for (auto k : {EnsembleKind::ginibre, EnsembleKind::wishart, EnsembleKind::hs_channel,
                 EnsembleKind::haar_unitary, EnsembleKind::stinespring_channel,
                 EnsembleKind::unitary_brownian}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

void EnsembleSpec::validate() const {
  if (d1 < 1 || d2 < 1 || s < 1) {
    throw DomainError(detail::concat("ensemble dimensions must be positive (d1=", d1, ", d2=", d2,
                                     ", s=", s, ")"));
  }
  if (!(t >= 0.0)) throw DomainError(detail::concat("Brownian time must be >= 0, got ", t));
  switch (kind) {
    case EnsembleKind::wishart:
    case EnsembleKind::hs_channel:
      if (s < d1 * d2) {
        throw DomainError(detail::concat(to_string(kind), " needs s >= d1*d2 = ", d1 * d2,
                                         " for an invertible Wishart matrix, got s=", s));
      }
      break;
    case EnsembleKind::stinespring_channel:
      if (s > d1 * d2 || d2 * s < d1) {
        throw DomainError(detail::concat("stinespring_channel needs d1 <= d2*s and s <= d1*d2 (d1=",
                                         d1, ", d2=", d2, ", s=", s, ")"));
      }
      break;
    default:
      break;
  }
}

}  // namespace qchan
