#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "hyperlp/experiments.hpp"
#include "hyperlp/io.hpp"

namespace {

using namespace hyperlp;

// Exit codes: 0 success, 1 invalid arguments, 2 I/O failure, 3 refused
// degenerate parameters.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitDegenerate = 3;

int write_output(const std::string& path, const std::function<void(std::ostream&)>& writer) {
    if (path.empty()) {
        writer(std::cout);
        return std::cout ? kExitOk : kExitIo;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot open output file '" << path << "'\n";
        return kExitIo;
    }
    writer(file);
    file.flush();
    if (!file) {
        std::cerr << "error: failed writing output file '" << path << "'\n";
        return kExitIo;
    }
    return kExitOk;
}

std::string grid_meta(const GridSpec& grid) {
    std::ostringstream out;
    out << "pmin=" << format_double(grid.pmin) << " pmax=" << format_double(grid.pmax)
        << " qmin=" << format_double(grid.qmin) << " qmax=" << format_double(grid.qmax)
        << " grid-step=" << format_double(grid.step);
    return out.str();
}

std::string params_meta(const HsbmParams& params) {
    std::ostringstream out;
    out << "n=" << params.n << " d=" << params.d << " p=" << format_double(params.p)
        << " q=" << format_double(params.q);
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Landing-probability analysis of random walks on block-model hypergraphs"};
    app.require_subcommand(1);

    const std::map<std::string, Method> method_map{
        {"ce", Method::ce}, {"tensor", Method::tensor}, {"cet", Method::cet}};
    const std::map<std::string, Discriminant> discriminant_map{
        {"geometric", Discriminant::geometric}, {"fisher", Discriminant::fisher}};
    const std::map<std::string, InitMode> init_map{{"single", InitMode::single},
                                                   {"uniform", InitMode::uniform}};

    std::function<int()> action;

    // ---- sample ----
    {
        auto* cmd = app.add_subcommand("sample", "Sample a hypergraph and write its edge list");
        auto opts = std::make_shared<HsbmParams>(HsbmParams{100, 3, 0.4, 0.1});
        auto seed = std::make_shared<std::uint64_t>(0);
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--n", opts->n, "vertex count (even)");
        cmd->add_option("--d", opts->d, "hyperedge order");
        cmd->add_option("--p", opts->p, "within-block edge probability");
        cmd->add_option("--q", opts->q, "cross-block edge probability");
        cmd->add_option("--seed", *seed, "RNG seed");
        cmd->add_option("--out", *out_path, "output path (stdout when omitted)");
        cmd->callback([&action, opts, seed, out_path] {
            action = [opts, seed, out_path] {
                const Hypergraph h = sample_hsbm(*opts, *seed);
                return write_output(*out_path, [&](std::ostream& out) { write_hypergraph(out, h); });
            };
        });
    }

    // ---- meanfield-sweep ----
    {
        auto* cmd = app.add_subcommand("meanfield-sweep",
                                       "Mean-field centroid gaps for ce and tensor walks over a "
                                       "(p, q) grid");
        auto cfg = std::make_shared<SweepConfig>();
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--n", cfg->n, "vertex count (even)");
        cmd->add_option("--d", cfg->d, "hyperedge order");
        cmd->add_option("--steps", cfg->K, "walk horizon K");
        cmd->add_option("--pmin", cfg->grid.pmin, "grid lower p");
        cmd->add_option("--pmax", cfg->grid.pmax, "grid upper p");
        cmd->add_option("--qmin", cfg->grid.qmin, "grid lower q");
        cmd->add_option("--qmax", cfg->grid.qmax, "grid upper q");
        cmd->add_option("--grid-step", cfg->grid.step, "grid step");
        cmd->add_option("--out", *out_path, "output path (stdout when omitted)");
        cmd->callback([&action, cfg, out_path] {
            action = [cfg, out_path] {
                const SweepResult result = run_meanfield_sweep(*cfg);
                for (const auto& [p, q] : result.skipped)
                    std::cerr << "skipping grid point p=" << format_double(p)
                              << " q=" << format_double(q) << " (outside 0 < q < p < 1)\n";
                std::ostringstream meta;
                meta << "hyperlp v" << kVersion << " | meanfield-sweep n=" << cfg->n
                     << " d=" << cfg->d << " steps=" << cfg->K << ' ' << grid_meta(cfg->grid);
                return write_output(*out_path, [&](std::ostream& out) {
                    write_sweep_csv(out, result, meta.str());
                });
            };
        });
    }

    // ---- phase ----
    {
        auto* cmd = app.add_subcommand("phase",
                                       "Tensor-walk phase diagram: w_K and decay over a (p, q) "
                                       "grid");
        auto cfg = std::make_shared<PhaseConfig>();
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--n", cfg->n, "vertex count (even)");
        cmd->add_option("--d", cfg->d, "hyperedge order")->required();
        cmd->add_option("--steps", cfg->K, "walk horizon K");
        cmd->add_option("--pmin", cfg->grid.pmin, "grid lower p");
        cmd->add_option("--pmax", cfg->grid.pmax, "grid upper p");
        cmd->add_option("--qmin", cfg->grid.qmin, "grid lower q");
        cmd->add_option("--qmax", cfg->grid.qmax, "grid upper q");
        cmd->add_option("--grid-step", cfg->grid.step, "grid step");
        cmd->add_option("--out", *out_path, "output path (stdout when omitted)");
        cmd->callback([&action, cfg, out_path] {
            action = [cfg, out_path] {
                const PhaseResult result = run_phase_diagram(*cfg);
                for (const auto& [p, q] : result.skipped)
                    std::cerr << "skipping grid point p=" << format_double(p)
                              << " q=" << format_double(q) << " (outside 0 < q < p < 1)\n";
                std::ostringstream meta;
                meta << "hyperlp v" << kVersion << " | phase n=" << cfg->n << " d=" << cfg->d
                     << " steps=" << cfg->K << ' ' << grid_meta(cfg->grid);
                return write_output(*out_path, [&](std::ostream& out) {
                    write_phase_csv(out, result, meta.str());
                });
            };
        });
    }

    // ---- concentration ----
    {
        auto* cmd = app.add_subcommand("concentration",
                                       "Empirical vs mean-field centroids over sampled "
                                       "hypergraphs");
        auto cfg = std::make_shared<ConcentrationConfig>();
        cfg->params = {200, 3, 0.4, 0.1};
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--n", cfg->params.n, "vertex count (even)");
        cmd->add_option("--d", cfg->params.d, "hyperedge order");
        cmd->add_option("--p", cfg->params.p, "within-block edge probability");
        cmd->add_option("--q", cfg->params.q, "cross-block edge probability");
        cmd->add_option("--steps", cfg->K, "walk horizon K");
        cmd->add_option("--trials", cfg->trials, "number of sampled hypergraphs");
        cmd->add_option("--seed", cfg->master_seed, "master seed");
        cmd->add_option("--method", cfg->method, "walk method")
            ->transform(CLI::CheckedTransformer(method_map, CLI::ignore_case));
        cmd->add_option("--out", *out_path, "output path (stdout when omitted)");
        cmd->callback([&action, cfg, out_path] {
            action = [cfg, out_path] {
                if (cfg->params.degenerate()) {
                    std::cerr << "error: refusing degenerate parameters (" << params_meta(cfg->params)
                              << ")\n";
                    return kExitDegenerate;
                }
                const ConcentrationResult result = run_concentration_check(*cfg);
                std::ostringstream meta;
                meta << "hyperlp v" << kVersion << " | concentration " << params_meta(cfg->params)
                     << " steps=" << cfg->K << " trials=" << cfg->trials
                     << " seed=" << cfg->master_seed << " method=" << method_name(cfg->method);
                return write_output(*out_path, [&](std::ostream& out) {
                    write_concentration_csv(out, result, meta.str());
                });
            };
        });
    }

    // ---- cluster ----
    {
        auto* cmd = app.add_subcommand("cluster",
                                       "Seed-set clustering benchmark on sampled hypergraphs");
        auto cfg = std::make_shared<ClusterConfig>();
        cfg->params = {100, 3, 0.4, 0.1};
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--n", cfg->params.n, "vertex count (even)");
        cmd->add_option("--d", cfg->params.d, "hyperedge order");
        cmd->add_option("--p", cfg->params.p, "within-block edge probability");
        cmd->add_option("--q", cfg->params.q, "cross-block edge probability");
        cmd->add_option("--steps", cfg->steps, "walk horizon K");
        cmd->add_option("--trials", cfg->trials, "number of trials");
        cmd->add_option("--seed", cfg->master_seed, "master seed");
        cmd->add_option("--method", cfg->method, "walk method")
            ->transform(CLI::CheckedTransformer(method_map, CLI::ignore_case));
        cmd->add_option("--cet-order", cfg->cet_order, "target order for cet partial expansion");
        cmd->add_option("--discriminant", cfg->discriminant, "score weights")
            ->transform(CLI::CheckedTransformer(discriminant_map, CLI::ignore_case));
        cmd->add_option("--init", cfg->init, "walk initialization")
            ->transform(CLI::CheckedTransformer(init_map, CLI::ignore_case));
        cmd->add_option("--out", *out_path, "output path (stdout when omitted)");
        cmd->callback([&action, cfg, out_path] {
            action = [cfg, out_path] {
                if (cfg->params.degenerate()) {
                    std::cerr << "error: refusing degenerate parameters (" << params_meta(cfg->params)
                              << ")\n";
                    return kExitDegenerate;
                }
                const ClusterResult result = run_cluster_benchmark(*cfg);
                std::ostringstream meta;
                meta << "hyperlp v" << kVersion << " | cluster " << params_meta(cfg->params)
                     << " steps=" << cfg->steps << " trials=" << cfg->trials
                     << " seed=" << cfg->master_seed << " method=" << method_name(cfg->method)
                     << " discriminant=" << discriminant_name(cfg->discriminant)
                     << " init=" << init_name(cfg->init) << " metric=median-rule-accuracy";
                if (cfg->method == Method::cet) {
                    meta << " cet-order=" << cfg->cet_order
                         << " weights=empirical-gap(batch=" << cfg->calibration_trials << ")";
                }
                return write_output(*out_path, [&](std::ostream& out) {
                    write_cluster_csv(out, result, cfg->method, cfg->discriminant, meta.str());
                });
            };
        });
    }

    // ---- roots ----
    {
        auto* cmd = app.add_subcommand("roots",
                                       "Characteristic roots of the reduced recurrences (units "
                                       "of nq/2)");
        auto params = std::make_shared<HsbmParams>(HsbmParams{100, 3, 0.4, 0.1});
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--n", params->n, "vertex count (even)");
        cmd->add_option("--d", params->d, "hyperedge order");
        cmd->add_option("--p", params->p, "within-block edge probability");
        cmd->add_option("--q", params->q, "cross-block edge probability");
        cmd->add_option("--out", *out_path, "output path (stdout when omitted)");
        cmd->callback([&action, params, out_path] {
            action = [params, out_path] {
                const auto beta = characteristic_roots(*params, RootFamily::beta);
                const auto zeta = characteristic_roots(*params, RootFamily::zeta);
                std::ostringstream meta;
                meta << "# hyperlp v" << kVersion << " | roots " << params_meta(*params) << '\n';
                return write_output(*out_path, [&](std::ostream& out) {
                    out << meta.str();
                    write_roots_csv(out, beta, zeta);
                });
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\nRun with --help for usage.\n";
        return kExitUsage;
    }

    try {
        return action();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
}
