#include "hyperlp/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hyperlp {

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
    out << h.n << ' ' << h.d << '\n';
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        out << format_double(h.weights[i]);
        for (std::int32_t v : h.edge(i)) out << ' ' << v;
        out << '\n';
    }
}

Hypergraph read_hypergraph(std::istream& in) {
    Hypergraph h;
    if (!(in >> h.n >> h.d)) throw std::runtime_error("read_hypergraph: missing 'n d' header");
    if (h.n <= 0 || h.n % 2 != 0 || h.d < 2)
        throw std::runtime_error("read_hypergraph: invalid header values");
    h.labels = BlockLabels::canonical(h.n);
    double w;
    while (in >> w) {
        h.weights.push_back(w);
        for (int i = 0; i < h.d; ++i) {
            std::int32_t v;
            if (!(in >> v)) throw std::runtime_error("read_hypergraph: truncated edge line");
            h.verts.push_back(v);
        }
    }
    h.validate();
    return h;
}

void write_landing_profile_csv(std::ostream& out, const LandingProfile& profile) {
    out << "k,v,x\n";
    for (int k = 0; k <= profile.K; ++k) {
        const auto row = profile.row(k);
        for (int v = 0; v < profile.n; ++v)
            out << k << ',' << v << ',' << format_double(row[static_cast<std::size_t>(v)]) << '\n';
    }
}

void write_trajectory_csv(std::ostream& out, const MeanFieldTrajectory& t) {
    out << "k,a,b,w\n";
    for (int k = 0; k <= t.K; ++k) {
        const auto i = static_cast<std::size_t>(k);
        out << k << ',' << format_double(t.a[i]) << ',' << format_double(t.b[i]) << ','
            << format_double(t.w[i]) << '\n';
    }
}

void write_reduced_csv(std::ostream& out, const ReducedState& s) {
    out << "k,i,beta,zeta\n";
    for (int k = 0; k <= s.K; ++k)
        for (int i = 0; i < s.dim; ++i)
            out << k << ',' << (i + 1) << ',' << format_double(s.beta_at(k, i)) << ','
                << format_double(s.zeta_at(k, i)) << '\n';
}

void write_roots_csv(std::ostream& out, std::span<const std::complex<double>> beta_roots,
                     std::span<const std::complex<double>> zeta_roots) {
    out << "re,im,which\n";
    for (const auto& r : beta_roots)
        out << format_double(r.real()) << ',' << format_double(r.imag()) << ",beta\n";
    for (const auto& r : zeta_roots)
        out << format_double(r.real()) << ',' << format_double(r.imag()) << ",zeta\n";
}

}  // namespace hyperlp
