#pragma once

// The geoflow command-line tool.
//
//   geoflow simulate        --equation E --ic EXPR [--n --length --dt --t-end --scheme --eps
//                            --store-every --no-dealias --allow-past-blowup --config FILE --output PREFIX]
//   geoflow symmetry-check  --equation E --generator vK [--epsilon S --threshold T ...numerics]
//   geoflow invariance-check [--equation E] [--generator vK|TEXT] [--pde TEXT] [--F1 P --F2 P] [--no-mutants]
//   geoflow closure-check   [--equation E] [--F1 P --F2 P] [--generators "v1; v2; ..."]
//   geoflow algebra-check   SUITE
//   geoflow cocycle-check   [--u EXPR --v EXPR [--w EXPR]] [--phi LIFT --psi LIFT [--chi LIFT]]
//
// Exit status: 0 success, 1 a check failed or the run blew up, 2 usage or
// input errors (including Hopf and grid-incompatible symmetry requests).
// Failures print one line "error: E_CODE: message" on the error stream.

#include <ostream>
#include <string>
#include <vector>

namespace geoflow {

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geoflow
