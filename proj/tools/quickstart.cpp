// Generates one instance, runs every solver under every regime, and writes an
// SVG of the plane-tree local search result to quickstart.svg.

#include <cstdio>
#include <fstream>

#include "hsupport/hsupport.hpp"

int main() {
  using namespace hsupport;
  Rng rng(2024);
  const Hypergraph h = generate(9, 3, DegreeScheme::Mid, rng);

  std::printf("mst-approx   U  %8.3f\n", mst_approximation(h).length);
  std::printf("mst-iter     U  %8.3f\n", mst_iteration(h).length);
  for (const auto c : {ConstraintSet::U(), ConstraintSet::T(), ConstraintSet::P(),
                       ConstraintSet::PT()}) {
    const auto ls = local_search(h, c);
    const auto opt = solve_exact(h, c);
    std::printf("local-search %-2s %8.3f   exact %8.3f (%zu nodes)\n", c.label().c_str(),
                ls.length, opt.length, opt.nodes_explored);
  }

  const SupportGraph g = local_search(h, ConstraintSet::PT()).support;
  std::ofstream("quickstart.svg") << render_svg(h, &g);
}
