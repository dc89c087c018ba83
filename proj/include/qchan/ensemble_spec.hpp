#ifndef QCHAN_ENSEMBLE_SPEC_HPP
#define QCHAN_ENSEMBLE_SPEC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qchan/types.hpp"

namespace qchan {

enum class EnsembleKind {
  ginibre,
  wishart,
  hs_channel,
  haar_unitary,
  stinespring_channel,
  unitary_brownian,
};

std::string_view to_string(EnsembleKind kind);
std::optional<EnsembleKind> parse_ensemble_kind(std::string_view name);

/// Parameters of a random-matrix ensemble. `s` is the Wishart column count
/// (or environment dimension for Stinespring channels); `t` is Brownian time.
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::hs_channel;
  Index d1 = 1;
  Index d2 = 1;
  Index s = 1;
  double t = 0.0;

  /// Throws DomainError when the parameters are infeasible for `kind`.
  void validate() const;

  friend bool operator==(const EnsembleSpec&, const EnsembleSpec&) = default;
};

}  // namespace qchan

#endif  // QCHAN_ENSEMBLE_SPEC_HPP
