#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tailinv/bi_lower.hpp"
#include "tailinv/conjugate.hpp"
#include "tailinv/errors.hpp"
#include "tailinv/moment_bridge.hpp"
#include "tailinv/oracle.hpp"
#include "tailinv/saddle.hpp"
#include "tailinv/tauber.hpp"
#include "tailinv/uni_lower.hpp"
#include "tailinv/validation.hpp"

namespace py = pybind11;
using namespace tailinv;

namespace {

py::dict certificate(const LowerEnvelopeCertificate& c) {
  py::dict d;
  d["eps"] = c.eps;
  d["m_bound"] = c.m_bound;
  d["c1"] = c.c1;
  d["c2"] = c.c2;
  d["dilation"] = c.dilation;
  d["lambda1"] = c.lambda1;
  d["linear_rate"] = c.linear_rate;
  d["x_valid_from"] = c.x_valid_from;
  d["class_w_certified"] = c.w.certified;
  return d;
}

py::dict ladder(const LadderEstimate& l) {
  py::dict d;
  d["points"] = l.points;
  d["ratios"] = l.ratios;
  d["estimate"] = l.estimate;
  d["estimate_change"] = l.estimate_change;
  d["converged"] = l.converged;
  d["dropped"] = l.dropped;
  return d;
}

}  // namespace

PYBIND11_MODULE(_tailinv, m) {
  m.doc() = "Tail envelopes from MGF exponents";

  auto base = py::register_exception<Error>(m, "TailinvError", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<Divergent>(m, "Divergent", base.ptr());
  py::register_exception<UnboundedObjective>(m, "UnboundedObjective", base.ptr());
  py::register_exception<GeometryInvalid>(m, "GeometryInvalid", base.ptr());
  py::register_exception<AbsorptionFailed>(m, "AbsorptionFailed", base.ptr());
  py::register_exception<NotConverged>(m, "NotConverged", base.ptr());
  py::register_exception<NonInvertible>(m, "NonInvertible", base.ptr());
  py::register_exception<OutOfDomain>(m, "OutOfDomain", base.ptr());

  py::class_<Domain>(m, "Domain")
      .def(py::init([](double lo, double hi) { return Domain{lo, hi}; }), py::arg("lo") = 0.0,
           py::arg("hi") = kInf)
      .def_readwrite("lo", &Domain::lo)
      .def_readwrite("hi", &Domain::hi)
      .def("contains", &Domain::contains);

  py::class_<PhiFunction>(m, "PhiFunction")
      .def_static("quadratic", &PhiFunction::quadratic, py::arg("scale") = 1.0, py::arg("domain") = Domain{0.0})
      .def_static("power_log", &PhiFunction::power_log, py::arg("p"), py::arg("r"), py::arg("domain") = Domain{0.0})
      .def_static(
          "expression",
          [](std::string name, std::function<double(double)> fn, Domain domain, bool convex) {
            PhiTraits t;
            t.convex = convex;
            return PhiFunction::expression(std::move(name), std::move(fn), domain, t);
          },
          py::arg("name"), py::arg("fn"), py::arg("domain") = Domain{0.0}, py::arg("convex") = false)
      .def_static("grid", &PhiFunction::grid, py::arg("knots"), py::arg("values"), py::arg("open_ended") = false)
      .def_static("from_csv", [](const std::string& path) { return PhiFunction::from_csv(path); })
      .def("__call__", &PhiFunction::evaluate)
      .def("slope", &PhiFunction::slope)
      .def_property_readonly("name", &PhiFunction::name)
      .def_property_readonly("domain", &PhiFunction::domain);

  py::enum_<Side>(m, "Side").value("UPPER", Side::kUpper).value("LOWER", Side::kLower);

  py::class_<TailEnvelope>(m, "TailEnvelope")
      .def_readonly("x", &TailEnvelope::x_grid)
      .def_readonly("log_values", &TailEnvelope::log_values)
      .def_readonly("side", &TailEnvelope::side)
      .def_readonly("valid_from", &TailEnvelope::valid_from)
      .def_readonly("provenance", &TailEnvelope::provenance)
      .def_readonly("annotations", &TailEnvelope::annotations)
      .def("__len__", &TailEnvelope::size);

  m.def(
      "conjugate",
      [](const PhiFunction& f, std::vector<double> x) {
        ConjugateOptions co;
        co.allow_infinite = true;
        const ConjugateResult r = conjugate(f, x, co);
        return py::make_tuple(r.values, r.argmax);
      },
      py::arg("phi"), py::arg("x"), "(values, argmax) of sup_l (l x - phi(l)) on the grid");
  m.def(
      "biconjugate",
      [](const PhiFunction& f, std::vector<double> l) { return biconjugate(f, l).values; }, py::arg("phi"),
      py::arg("lam"));

  m.def(
      "chernoff_envelope", [](const PhiFunction& phi, std::vector<double> x) { return chernoff_envelope(phi, x); },
      py::arg("phi"), py::arg("x"));
  m.def(
      "optimized_compound_upper",
      [](const PhiFunction& zeta, double lambda) {
        const OptimizedCompound r = optimized_compound_upper(zeta, lambda);
        return py::make_tuple(r.eps, r.log_bound);
      },
      py::arg("zeta"), py::arg("lam"), "(eps, log bound) of the compound estimate");
  m.def(
      "log_laplace_integral", [](const PhiFunction& zeta, double lambda) { return laplace_integral(zeta, lambda).log_value; },
      py::arg("zeta"), py::arg("lam"));
  m.def(
      "damped_integral", [](const PhiFunction& zeta, double eps) { return damped_integral(zeta, eps).value; },
      py::arg("zeta"), py::arg("eps"));

  m.def("m_surrogate_from_upper", [](const PhiFunction& nu, double eps) { return m_surrogate_from_upper(nu, eps); },
        py::arg("nu"), py::arg("eps"));
  m.def(
      "unilateral_lower_envelope",
      [](const PhiFunction& phi, double eps, double m_bound, std::vector<double> x) {
        const UnilateralResult r = unilateral_lower_envelope(phi, eps, m_bound, x);
        return py::make_tuple(r.envelope, certificate(r.certificate));
      },
      py::arg("phi"), py::arg("eps"), py::arg("m_bound"), py::arg("x"));

  m.def(
      "closure_lower_envelope",
      [](const PhiFunction& phi1, const PhiFunction& phi2, std::vector<double> z) {
        return closure_lower_envelope(phi1, phi2, z);
      },
      py::arg("phi1"), py::arg("phi2"), py::arg("z"));
  m.def(
      "pinched_lower_envelope",
      [](const PhiFunction& phi, double delta, std::vector<double> z) {
        const PinchedEnvelope p = pinched_lower_envelope(phi, delta, z);
        return py::make_tuple(p.envelope, p.c);
      },
      py::arg("phi"), py::arg("delta"), py::arg("z"));
  m.def(
      "richter_sandwich",
      [](const PhiFunction& phi, std::vector<double> x) {
        const RichterSandwich r = richter_sandwich(phi, x);
        return py::make_tuple(r.lower, r.upper, r.c2);
      },
      py::arg("phi"), py::arg("x"));
  m.def(
      "verify_regularity",
      [](const PhiFunction& phi) {
        const RegularityReport r = verify_regularity(phi);
        py::dict d;
        d["v"] = r.v;
        d["v_positive"] = r.v_positive;
        d["c0"] = r.c0;
        d["c0_feasible"] = r.c0_feasible;
        return d;
      },
      py::arg("phi"));

  m.def(
      "weibull_recovery",
      [](double shape, double c_low, double c_high, std::vector<double> x) {
        const WeibullRecovery r = weibull_recovery(shape, c_low, c_high, x);
        py::dict d;
        d["lower"] = r.lower;
        d["upper"] = r.upper;
        d["c1"] = r.c1;
        d["c2"] = r.c2;
        d["slope_upper"] = r.slope_upper;
        d["slope_lower"] = r.slope_lower;
        d["recovered_exponent"] = r.recovered_exponent;
        d["cramer_certified"] = r.cramer.certified;
        return d;
      },
      py::arg("m"), py::arg("c_low"), py::arg("c_high"), py::arg("x"));

  py::class_<OracleDistribution>(m, "Oracle")
      .def_static(
          "by_name",
          [](const std::string& name) {
            auto law = oracle_by_name(name);
            if (!law) throw InputError("oracle", 0, "unknown law '" + name + "'");
            return *law;
          },
          py::arg("name"))
      .def_property_readonly("name", &OracleDistribution::name)
      .def("log_tail", &OracleDistribution::log_tail)
      .def("tail", &OracleDistribution::tail)
      .def("quantile", &OracleDistribution::quantile)
      .def_property_readonly("cramer", &OracleDistribution::cramer)
      .def("mgf_exponent", &OracleDistribution::mgf_exponent)
      .def("sample", &OracleDistribution::sample, py::arg("seed"), py::arg("n"));

  m.def(
      "tauberian_check",
      [](const PhiFunction& phi, const OracleDistribution& law, bool monte_carlo, std::size_t samples,
         std::uint64_t seed) {
        TauberianReport r;
        if (monte_carlo) {
          MonteCarloOptions mc;
          mc.samples = samples;
          mc.seed = seed;
          r = tauberian_check_monte_carlo(phi, law, mc);
        } else {
          r = tauberian_check(phi, law);
        }
        py::dict d;
        d["k_mgf"] = r.k_mgf;
        d["k_tail"] = r.k_tail;
        d["product"] = r.product;
        d["consistent"] = r.consistent;
        d["mgf"] = ladder(r.mgf);
        d["tail"] = ladder(r.tail);
        return d;
      },
      py::arg("phi"), py::arg("law"), py::arg("monte_carlo") = false, py::arg("samples") = 10'000'000,
      py::arg("seed") = 42);

  m.def(
      "validate_law",
      [](const OracleDistribution& law, std::uint64_t seed, std::size_t samples) {
        ValidationOptions opts;
        opts.seed = seed;
        opts.samples = samples;
        const LawValidation v = validate_law(law, opts);
        py::list checks;
        for (const auto& c : v.checks) {
          py::dict d;
          d["envelope"] = c.envelope;
          d["passed"] = c.passed;
          d["worst_slack"] = c.worst_slack;
          d["nontrivial_points"] = c.nontrivial_points;
          d["error"] = c.error;
          checks.append(d);
        }
        py::dict d;
        d["law"] = v.law;
        d["passed"] = v.passed;
        d["checks"] = checks;
        d["empirical_max_z"] = v.empirical.max_z;
        return d;
      },
      py::arg("law"), py::arg("seed") = 42, py::arg("samples") = 100'000);
}
