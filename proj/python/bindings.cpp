#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "ekac/constraints.hpp"
#include "ekac/distribution.hpp"
#include "ekac/errors.hpp"
#include "ekac/factor.hpp"
#include "ekac/omega_window.hpp"
#include "ekac/primes.hpp"
#include "ekac/report_json.hpp"
#include "ekac/statistics.hpp"

namespace py = pybind11;
using namespace ekac;

namespace {

// Reports are converted through their JSON form so Python sees plain dicts
// with the same keys as the CLI output.
py::object to_python(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::null:
      return py::none();
    case nlohmann::json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer:
      return py::int_(j.get<std::int64_t>());
    case nlohmann::json::value_t::number_unsigned:
      return py::int_(j.get<std::uint64_t>());
    case nlohmann::json::value_t::number_float:
      return py::float_(j.get<double>());
    case nlohmann::json::value_t::string:
      return py::str(j.get<std::string>());
    case nlohmann::json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(to_python(v));
      return out;
    }
    default: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it) out[py::str(it.key())] = to_python(it.value());
      return out;
    }
  }
}

template <class T>
py::object report(const T& value) {
  return to_python(nlohmann::json(value));
}

WideInteger wide_from(const py::int_& v) { return WideInteger::parse(py::str(v).cast<std::string>()); }

py::int_ int_from(u128 v) {
  return py::module_::import("builtins").attr("int")(py::str(to_string(v)));
}

PerturbedDistribution make(const std::string& kind, std::uint64_t n, double s) {
  switch (parse_distribution_kind(kind)) {
    case DistributionKind::uniform:
      return PerturbedDistribution::uniform(n);
    case DistributionKind::harmonic:
      return PerturbedDistribution::harmonic(n);
    case DistributionKind::zipf:
      return PerturbedDistribution::zipf(n, s);
    default:
      throw UsageError("use Distribution.custom(table) for custom distributions");
  }
}

}  // namespace

PYBIND11_MODULE(_ekac, m) {
  m.doc() = "Distinct-prime-factor statistics under perturbed uniform distributions";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<UsageError>(m, "UsageError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<OverflowError>(m, "OverflowError", base.ptr());
  py::register_exception<FactorizationError>(m, "FactorizationError", base.ptr());

  m.def("omega_range", [](std::uint64_t lo, std::uint64_t hi, unsigned threads) {
    const OmegaTable t = omega_range(lo, hi, {threads});
    return std::vector<unsigned>(t.counts.begin(), t.counts.end());
  }, py::arg("lo"), py::arg("hi"), py::arg("threads") = 1);

  m.def("omega_window", [](const py::int_& center, std::uint64_t radius, std::uint64_t bound,
                           unsigned threads) {
    WindowOptions options;
    options.small_prime_bound = bound;
    options.parallelism.threads = threads;
    const WideInteger c = wide_from(center);
    OmegaWindow w;
    {
      py::gil_scoped_release release;
      w = omega_window(c, radius, options);
    }
    py::dict out;
    out["lo"] = int_from(w.lo.raw());
    out["counts"] = std::vector<unsigned>(w.counts.begin(), w.counts.end());
    out["total"] = w.total;
    out["mean"] = w.mean;
    out["small_prime_bound"] = w.small_prime_bound;
    return out;
  }, py::arg("center"), py::arg("radius"), py::arg("small_prime_bound") = 0,
     py::arg("threads") = 1);

  m.def("is_prime", [](const py::int_& n) { return is_prime(wide_from(n).raw()); });
  m.def("factorize", [](const py::int_& n) {
    py::list out;
    for (auto [p, e] : factorize(wide_from(n).raw())) out.append(py::make_tuple(int_from(p), e));
    return out;
  });
  m.def("primes_upto", &primes_upto);
  m.def("mertens_sum", &mertens_sum);
  m.def("log_log", &log_log);
  m.def("alpha", &alpha);
  m.def("normal_cdf", &normal_cdf);

  py::class_<PerturbedDistribution>(m, "Distribution")
      .def(py::init(&make), py::arg("kind"), py::arg("n"), py::arg("s") = 0.0)
      .def_static("custom", &PerturbedDistribution::custom, py::arg("table"))
      .def_static("from_csv", &read_table_csv_file, py::arg("path"))
      .def_property_readonly("kind", [](const PerturbedDistribution& d) { return to_string(d.kind()); })
      .def_property_readonly("n", &PerturbedDistribution::n)
      .def_property_readonly("s", &PerturbedDistribution::s)
      .def_property_readonly("renormalization_adjustment",
                             &PerturbedDistribution::renormalization_adjustment)
      .def("pmf", &PerturbedDistribution::pmf)
      .def("epsilon", &PerturbedDistribution::epsilon)
      .def("cdf", &PerturbedDistribution::cdf)
      .def("sample", [](const PerturbedDistribution& d, std::size_t count, std::uint64_t seed) {
        return SampleStream(d, seed).sample(count);
      }, py::arg("count"), py::arg("seed"))
      .def("__repr__", [](const PerturbedDistribution& d) { return "<Distribution " + d.label() + ">"; });

  m.def("sup_distance", &sup_distance);

  m.def("partial_epsilon_sum", [](const PerturbedDistribution& d, std::vector<std::uint64_t> primes) {
    return partial_epsilon_sum(d, PrimeTuple::of(std::move(primes))).value;
  });
  m.def("check", [](const PerturbedDistribution& d, unsigned k_max, double C, double D) {
    std::vector<ConstraintReport> reports = check_axioms(d);
    reports.push_back(check_large_prime_bound(d, C));
    reports.push_back(check_small_tuple_bound(d, D, k_max));
    return report(reports);
  }, py::arg("dist"), py::arg("k_max") = 3, py::arg("C") = 1.0, py::arg("D") = 1.0);
  m.def("infer_constants", [](const PerturbedDistribution& d, unsigned k_max) {
    return report(infer_constants(d, k_max));
  }, py::arg("dist"), py::arg("k_max") = 3);

  m.def("omega_distribution", [](const PerturbedDistribution& d) {
    return omega_distribution(d).mass;
  });
  m.def("omega_mean", [](const PerturbedDistribution& d) { return omega_distribution(d).mean(); });
  m.def("ks_statistic", [](const PerturbedDistribution& d, unsigned threads) {
    return report(ks_statistic(d, {threads}));
  }, py::arg("dist"), py::arg("threads") = 1);
  m.def("model_sn", [](std::uint64_t n, unsigned r_max) { return report(model_sn(n, r_max)); },
        py::arg("n"), py::arg("r_max") = 4);
  m.def("moment_gaps", [](const PerturbedDistribution& d, unsigned r_max, double C) {
    return report(moment_gaps(d, r_max, C));
  }, py::arg("dist"), py::arg("r_max") = 3, py::arg("C") = 1.0);
  m.def("independence_gap", [](const PerturbedDistribution& d, std::vector<std::uint64_t> primes) {
    return report(independence_gap(d, PrimeTuple::of(std::move(primes))));
  });
  m.def("tail_sum", [](const PerturbedDistribution& d, double D) { return report(tail_sum(d, D)); },
        py::arg("dist"), py::arg("D") = 1.0);
}
