#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <string>

#include "hyperlp/hsbm.hpp"
#include "hyperlp/meanfield.hpp"
#include "hyperlp/walks.hpp"

namespace hyperlp {

// Shortest round-trip decimal rendering (%.17g).
std::string format_double(double value);

// Hypergraph text format: first line "n d", then one "w v_1 ... v_d" line per
// edge with v_1 <= ... <= v_d, vertices 0-indexed. Labels follow the even-n
// convention (first half block 0).
void write_hypergraph(std::ostream& out, const Hypergraph& h);
Hypergraph read_hypergraph(std::istream& in);

// CSV writers for the debugging interfaces. Headers are fixed; one row per
// record; floats use format_double.
void write_landing_profile_csv(std::ostream& out, const LandingProfile& profile);  // k,v,x
void write_trajectory_csv(std::ostream& out, const MeanFieldTrajectory& t);        // k,a,b,w
void write_reduced_csv(std::ostream& out, const ReducedState& s);                  // k,i,beta,zeta
void write_roots_csv(std::ostream& out, std::span<const std::complex<double>> beta_roots,
                     std::span<const std::complex<double>> zeta_roots);             // re,im,which

}  // namespace hyperlp
