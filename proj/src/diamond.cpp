#include "qchan/diamond.hpp"

#include <json.hpp>

namespace qchan {

std::string DiamondBounds::to_json() const {
  nlohmann::json j;
  j["lower"] = lower;
  j["upper"] = upper;
  j["seesaw"] = seesaw ? nlohmann::json(*seesaw) : nlohmann::json(nullptr);
  j["gap"] = gap;
  j["iterations"] = iterations;
  j["converged"] = converged;
  return j.dump(2);
}

UnitaryPairStats phase_stats(std::vector<double> phases) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  UnitaryPairStats st;
  if (phases.empty()) return st;
  for (double& p : phases) {
    p = std::fmod(p, two_pi);
    if (p < 0.0) p += two_pi;
    if (p >= two_pi) p = 0.0;
  }
  std::sort(phases.begin(), phases.end());
  // Largest circular gap; the first maximal gap after sorting wins ties.
  double gap = two_pi - phases.back() + phases.front();
  for (std::size_t i = 1; i < phases.size(); ++i) gap = std::max(gap, phases[i] - phases[i - 1]);
  st.alpha = std::clamp((two_pi - gap) / 2.0, 0.0, std::numbers::pi);
  st.diamond = arc_diamond(st.alpha);

  std::vector<Point> pts;
  pts.reserve(phases.size());
  for (double p : phases) pts.push_back(std::polar(1.0, p));
  st.nu = std::min(1.0, hull_distance_to_origin(pts));
  st.R = std::min(1.0, smallest_enclosing_disc(pts).radius);
  st.phases = std::move(phases);
  return st;
}

double success_probability(double diamond) {
  if (!(diamond >= 0.0 && diamond <= 2.0)) {
    throw DomainError(detail::concat("success_probability: diamond norm must lie in [0, 2], got ",
                                     diamond));
  }
  return 0.5 + diamond / 4.0;
}

}  // namespace qchan
