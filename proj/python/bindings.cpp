#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hyperlp/classify.hpp"
#include "hyperlp/experiments.hpp"
#include "hyperlp/hsbm.hpp"
#include "hyperlp/io.hpp"
#include "hyperlp/meanfield.hpp"
#include "hyperlp/walks.hpp"

namespace py = pybind11;
using namespace hyperlp;

namespace {

std::vector<double> profile_row(const LandingProfile& profile, int k) {
    const auto row = profile.row(k);
    return {row.begin(), row.end()};
}

}  // namespace

PYBIND11_MODULE(hyperlp, m) {
    m.doc() = "Random-walk landing probabilities on two-block hypergraph block models";
    m.attr("__version__") = std::string(kVersion);

    py::register_exception<resource_limit_error>(m, "ResourceLimitError", PyExc_RuntimeError);
    py::register_exception<walk_extinction_error>(m, "WalkExtinctionError", PyExc_RuntimeError);
    py::register_exception<singular_matrix_error>(m, "SingularMatrixError", PyExc_RuntimeError);
    py::register_exception<invalid_state_error>(m, "InvalidStateError", PyExc_RuntimeError);

    py::class_<HsbmParams>(m, "HsbmParams")
        .def(py::init([](int n, int d, double p, double q) {
                 HsbmParams params{n, d, p, q};
                 params.validate();
                 return params;
             }),
             py::arg("n"), py::arg("d"), py::arg("p"), py::arg("q"))
        .def_readonly("n", &HsbmParams::n)
        .def_readonly("d", &HsbmParams::d)
        .def_readonly("p", &HsbmParams::p)
        .def_readonly("q", &HsbmParams::q)
        .def("degenerate", &HsbmParams::degenerate)
        .def("__repr__", [](const HsbmParams& s) {
            std::ostringstream out;
            out << "HsbmParams(n=" << s.n << ", d=" << s.d << ", p=" << s.p << ", q=" << s.q
                << ")";
            return out.str();
        });

    py::class_<BlockLabels>(m, "BlockLabels")
        .def_static("canonical", &BlockLabels::canonical, py::arg("n"))
        .def("block", &BlockLabels::block, py::arg("v"))
        .def("__len__", &BlockLabels::n);

    py::class_<Hypergraph>(m, "Hypergraph")
        .def_readonly("n", &Hypergraph::n)
        .def_readonly("d", &Hypergraph::d)
        .def_property_readonly("labels", [](const Hypergraph& h) { return h.labels; })
        .def("edge_count", &Hypergraph::edge_count)
        .def("total_weight", &Hypergraph::total_weight)
        .def("edge",
             [](const Hypergraph& h, std::size_t i) {
                 const auto e = h.edge(i);
                 return std::make_pair(std::vector<int>(e.begin(), e.end()), h.weights[i]);
             },
             py::arg("i"))
        .def("to_text", [](const Hypergraph& h) {
            std::ostringstream out;
            write_hypergraph(out, h);
            return out.str();
        });

    py::class_<WeightedGraph>(m, "WeightedGraph")
        .def_readonly("n", &WeightedGraph::n)
        .def("at", [](const WeightedGraph& g, int u, int v) { return g.at(u, v); },
             py::arg("u"), py::arg("v"))
        .def("row_sum", &WeightedGraph::row_sum, py::arg("u"));

    py::class_<LandingProfile>(m, "LandingProfile")
        .def_readonly("n", &LandingProfile::n)
        .def_readonly("K", &LandingProfile::K)
        .def("row", &profile_row, py::arg("k"));

    py::class_<SeedSpec>(m, "SeedSpec")
        .def_static("single_random", &SeedSpec::single_random, py::arg("seed"))
        .def_static("uniform_block0", &SeedSpec::uniform_block0)
        .def_static("explicit_seed", &SeedSpec::explicit_seed, py::arg("vertices"));

    m.def("count_sorted_multisets", &count_sorted_multisets, py::arg("n"), py::arg("d"));
    m.def("edge_probability",
          [](const HsbmParams& params, const BlockLabels& labels, const std::vector<int>& tuple) {
              return edge_probability(params, labels, tuple);
          },
          py::arg("params"), py::arg("labels"), py::arg("tuple"));
    m.def("sample_hsbm", &sample_hsbm, py::arg("params"), py::arg("seed"),
          py::arg("budget") = kDefaultSampleBudget);
    m.def("expected_block_degrees", [](const HsbmParams& params) {
        const auto deg = expected_block_degrees(params);
        return py::make_tuple(deg.d00, deg.d01, deg.d10, deg.d11);
    });

    m.def("clique_expand", &clique_expand, py::arg("hypergraph"));
    m.def("partial_clique_expand", &partial_clique_expand, py::arg("hypergraph"),
          py::arg("target_order"));
    m.def("ce_landing_profile",
          [](const WeightedGraph& g, const SeedSpec& spec, int K) {
              return ce_landing_profile(g, spec, K);
          },
          py::arg("graph"), py::arg("seed"), py::arg("steps"));
    m.def("tensor_landing_profile",
          [](const Hypergraph& h, const SeedSpec& spec, int K) {
              return tensor_landing_profile(h, spec, K);
          },
          py::arg("hypergraph"), py::arg("seed"), py::arg("steps"));

    py::class_<MeanFieldTrajectory>(m, "MeanFieldTrajectory")
        .def_readonly("K", &MeanFieldTrajectory::K)
        .def_readonly("a", &MeanFieldTrajectory::a)
        .def_readonly("b", &MeanFieldTrajectory::b)
        .def_readonly("w", &MeanFieldTrajectory::w);

    py::class_<ReducedState>(m, "ReducedState")
        .def_readonly("K", &ReducedState::K)
        .def_readonly("dim", &ReducedState::dim)
        .def_readonly("w", &ReducedState::w)
        .def("beta", &ReducedState::beta_at, py::arg("k"), py::arg("i"))
        .def("zeta", &ReducedState::zeta_at, py::arg("k"), py::arg("i"));

    py::class_<FullMeanFieldState>(m, "FullMeanFieldState")
        .def_readonly("d", &FullMeanFieldState::d)
        .def_readonly("K", &FullMeanFieldState::K)
        .def_readonly("states", &FullMeanFieldState::states)
        .def("value", &FullMeanFieldState::raw, py::arg("k"), py::arg("j"));

    py::class_<PhaseConstants>(m, "PhaseConstants")
        .def_readonly("R", &PhaseConstants::R)
        .def_readonly("C1", &PhaseConstants::C1)
        .def_readonly("C2", &PhaseConstants::C2)
        .def_readonly("C3", &PhaseConstants::C3);

    py::class_<DecayBoundReport>(m, "DecayBoundReport")
        .def_readonly("min_step_margin", &DecayBoundReport::min_step_margin)
        .def_readonly("min_ratio_margin", &DecayBoundReport::min_ratio_margin)
        .def_readonly("min_telescoped_margin", &DecayBoundReport::min_telescoped_margin)
        .def_readonly("first_step_ratio_gap", &DecayBoundReport::first_step_ratio_gap);

    py::enum_<RootFamily>(m, "RootFamily")
        .value("beta", RootFamily::beta)
        .value("zeta", RootFamily::zeta);

    m.def("ce_trajectory", &ce_trajectory, py::arg("params"), py::arg("steps"));
    m.def("ce_gap_closed_form", &ce_gap_closed_form, py::arg("params"), py::arg("k"));
    m.def("reduced_recurrence", &reduced_recurrence, py::arg("params"), py::arg("steps"));
    m.def("fullstate_recurrence", &fullstate_recurrence, py::arg("params"), py::arg("steps"),
          py::arg("max_d") = 16);
    m.def("gap_from_fullstate", &gap_from_fullstate, py::arg("state"));
    m.def("d3_closed_form", &d3_closed_form, py::arg("params"), py::arg("k"));
    m.def("characteristic_roots", &characteristic_roots, py::arg("params"), py::arg("family"));
    m.def("phase_constants", &phase_constants, py::arg("params"));
    m.def("large_d_approximation", &large_d_approximation, py::arg("params"), py::arg("k"));
    m.def("decay_bound_check", &decay_bound_check, py::arg("params"), py::arg("steps"));

    py::enum_<WeightKind>(m, "WeightKind")
        .value("geometric", WeightKind::geometric)
        .value("ppr", WeightKind::ppr)
        .value("hpr", WeightKind::hpr)
        .value("fisher", WeightKind::fisher);

    py::class_<DiscriminantWeights>(m, "DiscriminantWeights")
        .def_readonly("kind", &DiscriminantWeights::kind)
        .def_readonly("k_min", &DiscriminantWeights::k_min)
        .def_readonly("gamma", &DiscriminantWeights::gamma);

    py::class_<CovarianceEstimate>(m, "CovarianceEstimate")
        .def_readonly("k_min", &CovarianceEstimate::k_min)
        .def_readonly("k_max", &CovarianceEstimate::k_max)
        .def_readonly("ridge", &CovarianceEstimate::ridge)
        .def("at", &CovarianceEstimate::at, py::arg("i"), py::arg("j"));

    py::class_<ClassificationResult>(m, "ClassificationResult")
        .def_readonly("scores", &ClassificationResult::scores)
        .def_readonly("predicted", &ClassificationResult::predicted)
        .def_readonly("accuracy", &ClassificationResult::accuracy);

    py::class_<AccuracySummary>(m, "AccuracySummary")
        .def_readonly("mean", &AccuracySummary::mean)
        .def_readonly("stderr_of_mean", &AccuracySummary::stderr_of_mean)
        .def_readonly("trials", &AccuracySummary::trials)
        .def_readonly("single_trial", &AccuracySummary::single_trial);

    m.def("geometric_weights",
          [](const std::vector<double>& gaps, int k_min, int k_max) {
              return geometric_weights(gaps, k_min, k_max);
          },
          py::arg("gaps"), py::arg("k_min"), py::arg("k_max"));
    m.def("schedule_weights", &schedule_weights, py::arg("kind"), py::arg("parameter"),
          py::arg("k_min"), py::arg("k_max"));
    m.def("estimate_covariance",
          [](const LandingProfile& profile, const BlockLabels* labels, int k_min, int k_max,
             double ridge_scale) {
              return estimate_covariance(profile, labels, k_min, k_max, ridge_scale);
          },
          py::arg("profile"), py::arg("labels") = nullptr, py::arg("k_min") = 1,
          py::arg("k_max") = -1, py::arg("ridge_scale") = 1e-8);
    m.def("fisher_weights", &fisher_weights, py::arg("geometric"), py::arg("covariance"));
    m.def("score_and_classify", &score_and_classify, py::arg("profile"), py::arg("weights"),
          py::arg("truth"));
    m.def("accuracy_summary",
          [](const std::vector<double>& accuracies) { return accuracy_summary(accuracies); },
          py::arg("accuracies"));

    py::enum_<Method>(m, "Method")
        .value("ce", Method::ce)
        .value("tensor", Method::tensor)
        .value("cet", Method::cet);
    py::enum_<Discriminant>(m, "Discriminant")
        .value("geometric", Discriminant::geometric)
        .value("fisher", Discriminant::fisher);
    py::enum_<InitMode>(m, "InitMode")
        .value("single", InitMode::single)
        .value("uniform", InitMode::uniform);

    py::class_<TrialRecord>(m, "TrialRecord")
        .def_readonly("trial", &TrialRecord::trial)
        .def_readonly("accuracy", &TrialRecord::accuracy)
        .def_readonly("resamples", &TrialRecord::resamples)
        .def_readonly("failed", &TrialRecord::failed);

    py::class_<ClusterResult>(m, "ClusterResult")
        .def_readonly("trials", &ClusterResult::trials)
        .def_readonly("summary", &ClusterResult::summary)
        .def_readonly("failed_trials", &ClusterResult::failed_trials)
        .def_readonly("gap_weights", &ClusterResult::gap_weights)
        .def_readonly("empirical_gap_weights", &ClusterResult::empirical_gap_weights);

    py::class_<ClusterConfig>(m, "ClusterConfig")
        .def(py::init([](const HsbmParams& params, int steps, int trials,
                         std::uint64_t master_seed, Method method, int cet_order,
                         Discriminant discriminant, InitMode init) {
                 ClusterConfig config;
                 config.params = params;
                 config.steps = steps;
                 config.trials = trials;
                 config.master_seed = master_seed;
                 config.method = method;
                 config.cet_order = cet_order;
                 config.discriminant = discriminant;
                 config.init = init;
                 return config;
             }),
             py::arg("params"), py::arg("steps") = 6, py::arg("trials") = 20,
             py::arg("master_seed") = 0, py::arg("method") = Method::ce,
             py::arg("cet_order") = 0, py::arg("discriminant") = Discriminant::geometric,
             py::arg("init") = InitMode::uniform);

    m.def("run_cluster_benchmark", &run_cluster_benchmark, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("meanfield_gaps", &meanfield_gaps, py::arg("params"), py::arg("method"),
          py::arg("steps"));
}
