#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "hcg/errors.hpp"
#include "hcg/harness.hpp"

namespace py = pybind11;
using namespace hcg;

namespace {

std::vector<double> coords_of(const Point& p) { return {p.coords().begin(), p.coords().end()}; }

nlohmann::json parse_settings(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("settings: ") + e.what());
    }
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hedged category game core";
    m.attr("__version__") = std::string(library_version);

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<UndefinedError>(m, "UndefinedError", PyExc_ArithmeticError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<Point>(m, "Point")
        .def(py::init<std::vector<double>>(), py::arg("coords"))
        .def_property_readonly("coords", &coords_of)
        .def("__len__", &Point::dimension)
        .def("__getitem__", [](const Point& p, std::size_t i) {
            if (i >= p.dimension()) {
                throw py::index_error();
            }
            return p[i];
        })
        .def("validate", &Point::validate)
        .def(py::self == py::self)
        .def("__repr__", [](const Point& p) { return "Point(" + py::repr(py::cast(coords_of(p))).cast<std::string>() + ")"; });
    py::implicitly_convertible<py::list, Point>();
    py::implicitly_convertible<py::tuple, Point>();

    py::enum_<HedgeKind>(m, "Hedge")
        .value("very", HedgeKind::very)
        .value("basic", HedgeKind::basic)
        .value("quite", HedgeKind::quite);
    py::enum_<Polarity>(m, "Polarity").value("positive", Polarity::positive).value("negated", Polarity::negated);

    py::class_<HedgeScales>(m, "HedgeScales")
        .def(py::init([](double very, double quite) { return HedgeScales{very, quite}; }), py::arg("very") = 0.5,
             py::arg("quite") = 2.0)
        .def_readwrite("very", &HedgeScales::very)
        .def_readwrite("quite", &HedgeScales::quite)
        .def("scale", &HedgeScales::scale)
        .def("validate", &HedgeScales::validate);

    py::class_<LabelDef>(m, "Label")
        .def(py::init([](Point p, double bound, int index) { return LabelDef{std::move(p), bound, index}; }),
             py::arg("prototype"), py::arg("bound"), py::arg("index") = 0)
        .def_readwrite("prototype", &LabelDef::prototype)
        .def_readwrite("bound", &LabelDef::bound)
        .def_readwrite("index", &LabelDef::index)
        .def("validate", &LabelDef::validate)
        .def(py::self == py::self);

    py::class_<PriorConfig>(m, "Priors")
        .def(py::init([](double pp, double pv, double pq) { return PriorConfig{pp, pv, pq}; }), py::arg("pp") = 0.5,
             py::arg("pv") = 0.0, py::arg("pq") = 0.0)
        .def_readwrite("pp", &PriorConfig::pp)
        .def_readwrite("pv", &PriorConfig::pv)
        .def_readwrite("pq", &PriorConfig::pq)
        .def_property_readonly("pn", &PriorConfig::pn)
        .def_property_readonly("pb", &PriorConfig::pb)
        .def("validate", &PriorConfig::validate);

    py::class_<Assertion>(m, "Assertion")
        .def(py::init([](Polarity pol, HedgeKind h, int label) { return Assertion{pol, h, label}; }), py::arg("polarity"),
             py::arg("hedge"), py::arg("label"))
        .def_readonly("polarity", &Assertion::polarity)
        .def_readonly("hedge", &Assertion::hedge)
        .def_readonly("label", &Assertion::label)
        .def(py::self == py::self)
        .def("__str__", [](const Assertion& a) { return to_string(a); })
        .def("__repr__", [](const Assertion& a) { return "<Assertion " + to_string(a) + ">"; });

    m.def("assertion_index", &assertion_index, py::arg("assertion"), py::arg("label_count"));
    m.def("assertion_at", &assertion_at, py::arg("index"), py::arg("label_count"));
    m.def("assertion_prior", &assertion_prior, py::arg("assertion"), py::arg("priors"), py::arg("label_count"));

    m.def("distance", &distance, py::arg("x"), py::arg("y"));
    m.def("appropriateness", &appropriateness, py::arg("label"), py::arg("scale"), py::arg("x"));
    m.def("negated_appropriateness", &negated_appropriateness, py::arg("label"), py::arg("scale"), py::arg("x"));

    py::class_<MassChain>(m, "MassChain")
        .def_property_readonly("order",
                               [](const MassChain& c) {
                                   std::vector<std::tuple<HedgeKind, int, double>> out;
                                   for (const auto& e : c.order) {
                                       out.emplace_back(e.label.hedge, e.label.label, e.appropriateness);
                                   }
                                   return out;
                               })
        .def_readonly("prefix_mass", &MassChain::prefix_mass)
        .def_property_readonly("empty_mass", &MassChain::empty_mass);
    m.def(
        "consonant_mass",
        [](const std::vector<std::tuple<HedgeKind, int, double>>& entries) {
            std::vector<ChainEntry> in;
            for (const auto& [h, l, mu] : entries) {
                in.push_back({{h, l}, mu});
            }
            return consonant_mass(std::move(in));
        },
        py::arg("entries"), "Mass chain from (hedge, label, appropriateness) triples.");
    m.def(
        "label_set_mass",
        [](const std::vector<LabelDef>& labels, const HedgeScales& hedges, const Point& x) {
            return consonant_mass(labels, hedges, x);
        },
        py::arg("labels"), py::arg("hedges"), py::arg("x"));

    py::class_<Posterior>(m, "Posterior")
        .def_property_readonly("label_count", &Posterior::label_count)
        .def_property_readonly("values", [](const Posterior& p) { return std::vector<double>(p.values().begin(), p.values().end()); })
        .def("__getitem__", [](const Posterior& p, const Assertion& a) { return p[a]; })
        .def("argmax", &Posterior::argmax);
    m.def(
        "posterior_from_chain",
        [](const MassChain& chain, const PriorConfig& priors, std::size_t n) { return posterior(chain, priors, n); },
        py::arg("chain"), py::arg("priors"), py::arg("label_count"));
    m.def(
        "posterior",
        [](const std::vector<LabelDef>& labels, const HedgeScales& hedges, const Point& x, const PriorConfig& priors) {
            return posterior(labels, hedges, x, priors);
        },
        py::arg("labels"), py::arg("hedges"), py::arg("x"), py::arg("priors"));
    m.def(
        "choose_assertion",
        [](const std::vector<LabelDef>& labels, const HedgeScales& hedges, const Point& x, const PriorConfig& priors) {
            return choose_assertion(labels, hedges, x, priors);
        },
        py::arg("labels"), py::arg("hedges"), py::arg("x"), py::arg("priors"));

    py::class_<UpdateOutcome>(m, "UpdateOutcome")
        .def_readonly("applied", &UpdateOutcome::applied)
        .def_readonly("lambda_", &UpdateOutcome::lambda)
        .def_readonly("alpha", &UpdateOutcome::alpha)
        .def_readonly("label_index", &UpdateOutcome::label_index);

    py::class_<WeightRange>(m, "WeightRange")
        .def(py::init([](double lo, double hi) { return WeightRange{lo, hi}; }), py::arg("min") = 0.2, py::arg("max") = 0.8)
        .def_readwrite("min", &WeightRange::min)
        .def_readwrite("max", &WeightRange::max);

    py::class_<Agent>(m, "Agent")
        .def(py::init([](std::vector<LabelDef> labels, double weight, int id) { return Agent{std::move(labels), weight, id}; }),
             py::arg("labels"), py::arg("weight") = 0.2, py::arg("id") = 0)
        .def_readwrite("labels", &Agent::labels)
        .def_readwrite("weight", &Agent::weight)
        .def_readwrite("id", &Agent::id);

    m.def("compute_update", &compute_update, py::arg("label"), py::arg("assertion"), py::arg("x"), py::arg("speaker_weight"),
          py::arg("hedges"));
    m.def("listener_update", &listener_update, py::arg("listener"), py::arg("assertion"), py::arg("x"),
          py::arg("speaker_weight"), py::arg("hedges"));

    m.def("label_distance", &label_distance, py::arg("a"), py::arg("b"));
    m.def("ipd", &ipd, py::arg("a"), py::arg("b"));
    m.def("apd", [](const std::vector<Agent>& agents) { return apd(agents); }, py::arg("agents"));
    m.def("pair_overlap", &pair_overlap, py::arg("a"), py::arg("b"));
    m.def("ilo", &ilo, py::arg("agent"));
    m.def("alo", [](const std::vector<Agent>& agents) { return alo(agents); }, py::arg("agents"));

    py::class_<MetricSample>(m, "MetricSample")
        .def_readonly("round", &MetricSample::round)
        .def_readonly("apd", &MetricSample::apd)
        .def_readonly("alo", &MetricSample::alo)
        .def("__repr__", [](const MetricSample& s) {
            return "MetricSample(round=" + std::to_string(s.round) + ", apd=" + format_number(s.apd) +
                   ", alo=" + format_number(s.alo) + ")";
        });

    py::class_<GameConfig>(m, "GameConfig")
        .def(py::init<>())
        .def_readwrite("agents", &GameConfig::agents)
        .def_readwrite("steps", &GameConfig::steps)
        .def_readwrite("labels", &GameConfig::labels)
        .def_readwrite("dimension", &GameConfig::dimension)
        .def_readwrite("priors", &GameConfig::priors)
        .def_readwrite("hedges", &GameConfig::hedges)
        .def_readwrite("weights", &GameConfig::weights)
        .def_readwrite("seed", &GameConfig::seed)
        .def_readwrite("checkpoint_every", &GameConfig::checkpoint_every)
        .def("validate", &GameConfig::validate);

    py::class_<Population>(m, "Population")
        .def_readonly("agents", &Population::agents)
        .def_readonly("round", &Population::round);
    m.def("initialize", &initialize, py::arg("config"));
    m.def(
        "step", [](Population& pop, const GameConfig& cfg) { step(pop, cfg); }, py::arg("population"), py::arg("config"));

    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("config", &RunRecord::config)
        .def_readonly("checkpoints", &RunRecord::checkpoints)
        .def_readonly("wall_seconds", &RunRecord::wall_seconds)
        .def_property_readonly("seed", &RunRecord::seed)
        .def("timeseries_csv", [](const RunRecord& r) { return timeseries_csv(r); });
    m.def(
        "run", [](const GameConfig& cfg) {
            py::gil_scoped_release release;
            return run(cfg);
        },
        py::arg("config"));

    py::class_<Regime>(m, "Regime")
        .def_readonly("name", &Regime::name)
        .def_readonly("pv", &Regime::pv)
        .def_readonly("pb", &Regime::pb)
        .def_readonly("pq", &Regime::pq);
    m.def("named_regime", [](const std::string& name) { return named_regime(name); }, py::arg("name"));

    py::class_<SweepRun>(m, "SweepRun")
        .def_readonly("pp", &SweepRun::pp)
        .def_readonly("regime", &SweepRun::regime)
        .def_readonly("replicate", &SweepRun::replicate)
        .def_readonly("record", &SweepRun::record)
        .def_property_readonly("file_name", [](const SweepRun& r) { return run_file_name(r); });

    m.def(
        "profile_defaults", [](const std::string& profile) { return profile_defaults(profile).dump(); }, py::arg("profile"));
    m.def(
        "resolve_settings",
        [](const std::string& profile, const std::string& overrides) {
            return merge_settings(profile_defaults(profile), parse_settings(overrides)).dump();
        },
        py::arg("profile"), py::arg("overrides"));
    m.def(
        "sweep",
        [](const std::string& settings, int workers) {
            const SweepSpec spec = sweep_spec_from_settings(parse_settings(settings));
            py::gil_scoped_release release;
            return sweep(spec, workers);
        },
        py::arg("settings"), py::arg("workers") = 1, "Runs the sweep described by a JSON settings string.");
    m.def("summary_csv", [](const std::vector<SweepRun>& runs) { return summary_csv(runs); }, py::arg("runs"));
    m.def(
        "emit",
        [](const std::vector<SweepRun>& runs, const std::string& settings, const std::filesystem::path& out) {
            emit(runs, parse_settings(settings), out);
        },
        py::arg("runs"), py::arg("settings"), py::arg("out_dir"));
}
