// Library walkthrough on a five-element matrix whose plain GMM and EM
// rankings disagree on the second and fourth elements.

#include <iostream>

#include "pcm/pcm.hpp"

int main() {
  const auto a = pcm::validate_matrix({
      {1, 1.0 / 6, 1.0 / 3, 1.0 / 8, 5},
      {6, 1, 2, 1, 8},
      {3, 1.0 / 2, 1, 1.0 / 2, 5},
      {8, 1, 2, 1, 5},
      {1.0 / 5, 1.0 / 8, 1.0 / 5, 1.0 / 5, 1},
  });

  const auto gmm = pcm::normalize(pcm::gmm_estimate(a));
  std::cout << pcm::render_report(gmm, pcm::ReportFormat::TEXT) << "\n";
  std::cout << pcm::render_report(pcm::rank(gmm), pcm::ReportFormat::TEXT) << "\n";
  std::cout << pcm::render_report(pcm::compare_methods(a), pcm::ReportFormat::TEXT);
  std::cout << "GCI = " << pcm::gci(a) << "\n";
}
