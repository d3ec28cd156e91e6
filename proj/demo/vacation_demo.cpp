// Compares the classical, min-max and Pareto weightings on the vacation
// problem shipped in data/.
#include <cstdio>
#include <string>

#include "maxahp/classical.hpp"
#include "maxahp/document.hpp"
#include "maxahp/multi.hpp"
#include "maxahp/pareto.hpp"

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : MAXAHP_DATA_DIR "/vacation.json";
  const maxahp::Problem p = maxahp::load_problem(path);

  const auto classical = maxahp::classical_ahp(p);
  std::printf("classical  %s\n", classical.ranking.to_string().c_str());

  const auto multi = maxahp::minmax_solution(p);
  std::printf("min-max    %s  (max error %.4f)\n", maxahp::rank_alternatives(multi.minmax).to_string().c_str(),
              multi.mu_hat);

  for (const auto& r : maxahp::pareto_point(p))
    std::printf("pareto     %s  (weighted error %.4f)\n", r.ranking.to_string().c_str(), r.weighted_objective);
  return 0;
}
