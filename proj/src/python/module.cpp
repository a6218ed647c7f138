#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spde/diagnostics.hpp"
#include "spde/experiments.hpp"
#include "spde/integrators.hpp"
#include "spde/mcmc.hpp"
#include "spde/modified_equation.hpp"
#include "spde/slowfast.hpp"

namespace py = pybind11;
using namespace spde;

namespace {

Representation rep_of(const std::string& s) {
  if (s == "nodal") return Representation::nodal;
  if (s == "modal") return Representation::modal;
  throw std::invalid_argument("representation must be 'nodal' or 'modal'");
}

FieldState make_field(py::array_t<double, py::array::c_style | py::array::forcecast> a,
                      const std::string& rep) {
  if (a.ndim() != 1) throw std::invalid_argument("field values must be one-dimensional");
  std::vector<double> v(a.data(), a.data() + a.size());
  return FieldState(std::move(v), rep_of(rep));
}

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out({static_cast<py::ssize_t>(v.size())});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_spde, m) {
  m.doc() = "modified Euler scheme toolkit for semilinear SPDEs";
  m.attr("__version__") = kVersion;

  py::class_<FieldState>(m, "FieldState")
      .def(py::init(&make_field), py::arg("values"), py::arg("rep") = "modal")
      .def_property_readonly("values", [](const FieldState& x) { return to_array(x.values); })
      .def_property_readonly(
          "rep", [](const FieldState& x) { return std::string(representation_name(x.rep)); })
      .def("__len__", [](const FieldState& x) { return x.size(); });

  py::class_<SpectralOperator>(m, "SpectralOperator")
      .def_readonly("J", &SpectralOperator::J)
      .def_property_readonly("lambdas",
                             [](const SpectralOperator& op) { return to_array(op.lambdas); })
      .def("basis", &SpectralOperator::basis, py::arg("j"), py::arg("xi"));
  m.def("build_spectral", &build_spectral, py::arg("J"));

  py::class_<FDOperator>(m, "FDOperator")
      .def_readonly("J", &FDOperator::J)
      .def_readonly("h", &FDOperator::h)
      .def_property_readonly("diag", [](const FDOperator& op) { return to_array(op.diag); })
      .def_property_readonly("offdiag", [](const FDOperator& op) { return to_array(op.offdiag); });
  m.def("build_fd",
        [](int J, const std::function<double(double)>& a) {
          return a ? build_fd(J, a) : build_fd(J);
        },
        py::arg("J"), py::arg("a") = nullptr);

  py::class_<ResolventFactors>(m, "ResolventFactors")
      .def_readonly("tau", &ResolventFactors::tau)
      .def_readonly("J", &ResolventFactors::J)
      .def_property_readonly("representation", [](const ResolventFactors& f) {
        return std::string(representation_name(f.representation()));
      });
  m.def("factorize_resolvent",
        py::overload_cast<const SpectralOperator&, double>(&factorize_resolvent), py::arg("op"),
        py::arg("tau"));
  m.def("factorize_resolvent", py::overload_cast<const FDOperator&, double>(&factorize_resolvent),
        py::arg("op"), py::arg("tau"));

  m.def("apply_A_tau", &apply_A_tau, py::arg("factors"), py::arg("x"));
  m.def("sample_modified_noise", &sample_modified_noise, py::arg("factors"), py::arg("g1"),
        py::arg("g2"));
  m.def("sobolev_norm", &sobolev_norm, py::arg("op"), py::arg("x"), py::arg("alpha"));

  py::class_<SineTransform>(m, "SineTransform")
      .def(py::init<int>(), py::arg("J"))
      .def("to_nodal", py::overload_cast<const FieldState&>(&SineTransform::to_nodal, py::const_))
      .def("to_modal", py::overload_cast<const FieldState&>(&SineTransform::to_modal, py::const_));

  py::class_<NoiseStream>(m, "NoiseStream")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("master_seed"),
           py::arg("replica_id") = 0)
      .def("normal", &NoiseStream::normal)
      .def("uniform", &NoiseStream::uniform)
      .def("draw_cylindrical",
           [](NoiseStream& s, int J, const std::string& rep) {
             return s.draw_cylindrical(J, rep_of(rep));
           },
           py::arg("J"), py::arg("rep") = "modal")
      .def("draw_coupled_pair", [](NoiseStream& s, int J, const std::string& rep) {
        const auto d = s.draw_coupled_pair(J, rep_of(rep));
        return py::make_tuple(d.g1, d.g2, d.g);
      }, py::arg("J"), py::arg("rep") = "modal");

  py::class_<ProblemSpec>(m, "ProblemSpec")
      .def_readonly("label", &ProblemSpec::label)
      .def_readonly("lipschitz", &ProblemSpec::lipschitz)
      .def("has_drift", &ProblemSpec::has_drift)
      .def("has_potential", &ProblemSpec::has_potential);
  m.def("make_ou", &make_ou);
  m.def("make_sine", &make_sine);
  m.def("make_gradient_cos", &make_gradient_cos, py::arg("beta"));
  m.def("problem_by_name", &problem_by_name, py::arg("name"));
  m.def("apply_F", &apply_F, py::arg("problem"), py::arg("x"));
  m.def("evaluate_V", &evaluate_V, py::arg("problem"), py::arg("x"));

  py::enum_<Scheme>(m, "Scheme")
      .value("modified", Scheme::modified)
      .value("modified_bform", Scheme::modified_bform)
      .value("modified_expform", Scheme::modified_expform)
      .value("standard", Scheme::standard)
      .value("exponential", Scheme::exponential)
      .value("exact_ou", Scheme::exact_ou);

  m.def("step_modified", &step_modified, py::arg("factors"), py::arg("problem"),
        py::arg("dst").none(true), py::arg("x"), py::arg("g1"), py::arg("g2"));
  m.def("step_standard", &step_standard, py::arg("factors"), py::arg("problem"),
        py::arg("dst").none(true), py::arg("x"), py::arg("g"));
  m.def("step_modified_bform", &step_modified_bform, py::arg("op"), py::arg("tau"),
        py::arg("problem"), py::arg("dst").none(true), py::arg("x"), py::arg("g"));
  m.def("step_modified_expform", &step_modified_expform, py::arg("op"), py::arg("tau"),
        py::arg("problem"), py::arg("dst").none(true), py::arg("x"), py::arg("g"));
  m.def("step_exponential", &step_exponential, py::arg("op"), py::arg("tau"), py::arg("problem"),
        py::arg("dst").none(true), py::arg("x"), py::arg("stream"));
  m.def("step_exact_ou", &step_exact_ou, py::arg("op"), py::arg("tau"), py::arg("x"),
        py::arg("stream"));

  py::class_<SchemeConfig>(m, "SchemeConfig")
      .def(py::init([](double tau, long n_steps, Scheme scheme) {
             return SchemeConfig{tau, n_steps, scheme};
           }),
           py::arg("tau"), py::arg("n_steps"), py::arg("scheme"))
      .def_readwrite("tau", &SchemeConfig::tau)
      .def_readwrite("n_steps", &SchemeConfig::n_steps)
      .def_readwrite("scheme", &SchemeConfig::scheme);

  m.def("run_trajectory",
        [](const SchemeConfig& cfg, const SpectralOperator& op, const ProblemSpec& p,
           const FieldState& x0, NoiseStream& stream, bool record_path) {
          const auto res = run_trajectory(cfg, op, p, x0, stream,
                                          record_path ? RecordMode::path : RecordMode::final_state);
          py::list path;
          for (const auto& s : res.path.states) path.append(s);
          return py::make_tuple(res.final_state, to_array(res.path.times), path);
        },
        py::arg("cfg"), py::arg("op"), py::arg("problem"), py::arg("x0"), py::arg("stream"),
        py::arg("record_path") = false);

  py::class_<ModifiedSpectra>(m, "ModifiedSpectra")
      .def_property_readonly("lambda_tau",
                             [](const ModifiedSpectra& s) { return to_array(s.lambda_tau); })
      .def_property_readonly("q_tau", [](const ModifiedSpectra& s) { return to_array(s.q_tau); })
      .def("semigroup", [](const ModifiedSpectra& s, double t) { return to_array(s.semigroup(t)); });
  m.def("compute_modified_spectra", &compute_modified_spectra, py::arg("op"), py::arg("tau"));
  m.def("check_identities",
        [](const ModifiedSpectra& s, const ResolventFactors& f, const SpectralOperator& op) {
          const auto rep = check_identities(s, f, op);
          return py::make_tuple(rep.violations, rep.max_residual);
        });

  py::class_<ModeVarianceTable>(m, "ModeVarianceTable")
      .def_property_readonly("variances",
                             [](const ModeVarianceTable& t) { return to_array(t.variances); })
      .def("variance_at", &ModeVarianceTable::variance_at);
  m.def("mode_variances", &mode_variances, py::arg("scheme"), py::arg("op"), py::arg("tau"),
        py::arg("n_steps") = -1);
  m.def("sobolev_moment",
        [](const ModeVarianceTable& t, double alpha) {
          const auto s = sobolev_moment(t, alpha);
          py::dict d;
          d["value"] = s.value;
          d["tail_converges"] = s.tail_converges;
          d["analytic_converges"] = s.analytic_converges;
          d["increment_ratio"] = s.increment_ratio;
          return d;
        },
        py::arg("table"), py::arg("alpha"));
  m.def("feldman_hajek_indicator",
        [](const SpectralOperator& op, double tau, long N) {
          const auto ind = feldman_hajek_indicator(op, tau, N);
          return py::make_tuple(ind.modified_sum, ind.exact_sum);
        },
        py::arg("op"), py::arg("tau"), py::arg("N"));
  m.def("hellinger_diag",
        [](const std::vector<double>& v1, const std::vector<double>& v2) {
          return hellinger_diag(v1, v2);
        },
        py::arg("v1"), py::arg("v2"));
  m.def("quadratic_variation", &quadratic_variation, py::arg("x"));
  m.def("stationary_bias", &stationary_bias, py::arg("scheme"), py::arg("op"), py::arg("tau"),
        py::arg("alpha") = 0.0);

  py::class_<RateFit>(m, "RateFit")
      .def_readonly("slope", &RateFit::slope)
      .def_readonly("intercept", &RateFit::intercept)
      .def_readonly("residual", &RateFit::residual)
      .def_readonly("ok", &RateFit::ok)
      .def_readonly("diagnostic", &RateFit::diagnostic)
      .def_property_readonly("taus", [](const RateFit& f) { return to_array(f.taus); })
      .def_property_readonly("errors", [](const RateFit& f) { return to_array(f.errors); });
  m.def("fit_rate",
        [](const std::vector<double>& taus, const std::vector<double>& errors) {
          return fit_rate(taus, errors);
        },
        py::arg("taus"), py::arg("errors"));
  m.def("deterministic_weak_error",
        [](const SpectralOperator& op, const std::vector<double>& taus, double T, Scheme scheme,
           double alpha) {
          return deterministic_weak_error(op, taus, T, scheme,
                                          alpha == 0.0 ? WeakFunctional::squared_norm
                                                       : WeakFunctional::alpha_moment,
                                          alpha);
        },
        py::arg("op"), py::arg("taus"), py::arg("T"), py::arg("scheme"), py::arg("alpha") = 0.0);

  m.def("strong_error",
        [](int J, double T, const std::vector<double>& taus, long replicas, std::uint64_t seed,
           const ProblemSpec& problem, Scheme scheme, int threads) {
          CoupledConfig cfg;
          cfg.J = J;
          cfg.T = T;
          cfg.taus = taus;
          cfg.replicas = replicas;
          cfg.seed = seed;
          cfg.problem = problem;
          cfg.threads = threads;
          return strong_error(cfg, scheme);
        },
        py::arg("J"), py::arg("T"), py::arg("taus"), py::arg("replicas"), py::arg("seed"),
        py::arg("problem"), py::arg("scheme"), py::arg("threads") = 1);
  m.def("mc_weak_error",
        [](int J, double T, const std::vector<double>& taus, long replicas, std::uint64_t seed,
           const ProblemSpec& problem, Scheme scheme, int threads) {
          CoupledConfig cfg;
          cfg.J = J;
          cfg.T = T;
          cfg.taus = taus;
          cfg.replicas = replicas;
          cfg.seed = seed;
          cfg.problem = problem;
          cfg.threads = threads;
          return mc_weak_error(cfg, scheme, exp_neg_sqnorm);
        },
        py::arg("J"), py::arg("T"), py::arg("taus"), py::arg("replicas"), py::arg("seed"),
        py::arg("problem"), py::arg("scheme"), py::arg("threads") = 1);

  py::class_<SlowFastSpec>(m, "SlowFastSpec")
      .def(py::init([](const std::function<double(double, double)>& G,
                       const std::function<double(const FieldState&)>& sigma, double epsilon) {
             SlowFastSpec sf;
             sf.G = G;
             sf.sigma = sigma;
             sf.epsilon = epsilon;
             return sf;
           }),
           py::arg("G"), py::arg("sigma"), py::arg("epsilon") = 1.0);
  py::class_<SlowFastState>(m, "SlowFastState")
      .def(py::init([](const FieldState& X, const FieldState& Y, double epsilon) {
             return SlowFastState{X, Y, epsilon};
           }),
           py::arg("X"), py::arg("Y"), py::arg("epsilon"))
      .def_readwrite("X", &SlowFastState::X)
      .def_readwrite("Y", &SlowFastState::Y)
      .def_readwrite("epsilon", &SlowFastState::epsilon);
  m.def("step_ap", &step_ap, py::arg("slow"), py::arg("fast"), py::arg("spec"),
        py::arg("dst").none(true), py::arg("state"), py::arg("stream"));
  m.def("step_limiting", &step_limiting, py::arg("op"), py::arg("slow"), py::arg("spec"),
        py::arg("dst"), py::arg("x"), py::arg("stream"));
  m.def("averaged_drift_mc",
        [](const FieldState& x, const SlowFastSpec& sf, const SpectralOperator& op,
           const SineTransform& dst, long M, NoiseStream& stream) {
          const auto avg = averaged_drift_mc(x, sf, op, dst, M, stream);
          return py::make_tuple(avg.mean, to_array(avg.stderrs));
        },
        py::arg("x"), py::arg("spec"), py::arg("op"), py::arg("dst"), py::arg("M"),
        py::arg("stream"));

  m.def("propose", &propose, py::arg("factors"), py::arg("x"), py::arg("g1"), py::arg("g2"));
  m.def("acceptance_prob", &acceptance_prob, py::arg("v_x"), py::arg("v_xhat"));
  py::class_<ChainStats>(m, "ChainStats")
      .def_readonly("acceptance_rate", &ChainStats::acceptance_rate)
      .def_readonly("samples", &ChainStats::samples)
      .def_property_readonly("means", [](const ChainStats& s) { return to_array(s.means); })
      .def_property_readonly("stderrs", [](const ChainStats& s) { return to_array(s.stderrs); });
  m.def("run_chain",
        [](const ResolventFactors& f, const ProblemSpec& p, const SineTransform& dst, long n_steps,
           long burn_in, long thin, NoiseStream& stream, const FieldState& x0) {
          const auto obs = default_observables();
          return run_chain(f, p, &dst, ChainOptions{n_steps, burn_in, thin}, x0, stream, obs);
        },
        py::arg("factors"), py::arg("problem"), py::arg("dst"), py::arg("n_steps"),
        py::arg("burn_in"), py::arg("thin"), py::arg("stream"), py::arg("x0"));
  m.def("run_chains",
        [](const ResolventFactors& f, const ProblemSpec& p, const SineTransform& dst, long n_steps,
           long burn_in, long thin, std::uint64_t master_seed, int n_chains, int threads,
           const FieldState& x0) {
          const auto obs = default_observables();
          return run_chains(f, p, &dst, ChainOptions{n_steps, burn_in, thin}, x0, master_seed,
                            n_chains, threads, obs);
        },
        py::arg("factors"), py::arg("problem"), py::arg("dst"), py::arg("n_steps"),
        py::arg("burn_in"), py::arg("thin"), py::arg("master_seed"), py::arg("n_chains"),
        py::arg("threads"), py::arg("x0"));

  m.def("run_coupled_fd_paths",
        [](const FDOperator& op, const ProblemSpec& p, double tau, long n_steps,
           NoiseStream& stream) {
          const auto res = run_coupled_fd_paths(op, p, tau, n_steps, stream);
          py::dict d;
          d["times"] = to_array(res.times);
          d["qv_modified"] = to_array(res.qv_modified);
          d["qv_standard"] = to_array(res.qv_standard);
          d["final_modified"] = res.final_modified;
          d["final_standard"] = res.final_standard;
          return d;
        },
        py::arg("op"), py::arg("problem"), py::arg("tau"), py::arg("n_steps"), py::arg("stream"));
}
