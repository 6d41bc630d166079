#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "dagcut/graph.hpp"
#include "dagcut/piecewise.hpp"

namespace dagcut {

// Text instance format:
//   line 1:        n m k
//   next m lines:  u v c     (0-based endpoints, decimal cost)
// '#' starts a comment; blank lines are ignored; tokens are
// whitespace-separated. Emission uses shortest round-trip float formatting so
// parse(emit(inst)) reproduces the instance bit-exactly.
DagInstance parse_instance(std::istream& in);
DagInstance parse_instance_file(const std::string& path);
std::string emit_instance(const DagInstance& inst);

// Deterministic generators (same seed, same instance).
// layered: `layers` ranks of `width` vertices, edges only between
// consecutive ranks with the given density, costs uniform in [1,10].
DagInstance generate_layered(int layers, int width, double density, std::uint64_t seed,
                             int k = -1);  // k=-1 means layers-1
// bipartite: all edges directed from the first part to the second.
DagInstance generate_bipartite(int a, int b, double density, std::uint64_t seed, int k = 1);
// path: one directed path with exactly k unit-cost edges.
DagInstance generate_path(int k);

// Spec strings like "layered:L=4,width=3,density=0.8,seed=7,k=3",
// "bipartite:a=3,b=3,density=1,seed=1", "path:k=3".
DagInstance generate_from_spec(const std::string& spec);

// Shortest round-trip decimal form of a double.
std::string format_double(double v);

// CSV with header "t,F,ratio": F and F/(t+1) on a uniform grid over the CDF
// domain; the t=-1 ratio is emitted as the one-sided limit F'(-1).
void write_cdf_csv(std::ostream& out, const PiecewisePoly& F, int points = 2001);

}  // namespace dagcut
