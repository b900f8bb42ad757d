// Python bindings for the main library operations.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eephnd/distributions.hpp"
#include "eephnd/estimation.hpp"
#include "eephnd/moments.hpp"
#include "eephnd/sampling.hpp"
#include "eephnd/survival.hpp"

namespace py = pybind11;
using namespace eephnd;

namespace {

EephndParams params_from_dict(const py::dict& d) {
    return {d["alpha"].cast<double>(), d["beta"].cast<double>(),
            d["theta"].cast<double>(),  d["lambda"].cast<double>(),
            d["sigma"].cast<double>(),  d["p1"].cast<double>()};
}

py::dict fit_to_dict(const FitResult& fr) {
    py::dict out;
    out["model"] = model_name(fr.model_tag);
    py::dict params;
    auto names = model_param_names(fr.model_tag);
    for (std::size_t i = 0; i < names.size(); ++i) {
        params[names[i].c_str()] = fr.params[i];
    }
    out["params"] = params;
    out["loglik"] = fr.loglik;
    out["k"] = fr.k;
    out["n"] = fr.n;
    out["converged"] = fr.converged;
    return out;
}

}  // namespace

PYBIND11_MODULE(_eephnd, m) {
    m.doc() = "mixture survival distribution toolkit";

    m.def("pdf", [](double x, const py::dict& d) { return eephnd_pdf(x, params_from_dict(d)); },
          py::arg("x"), py::arg("params"));
    m.def("cdf", [](double x, const py::dict& d) { return eephnd_cdf(x, params_from_dict(d)); },
          py::arg("x"), py::arg("params"));
    m.def("survival", [](double x, const py::dict& d) { return survival(x, params_from_dict(d)); },
          py::arg("x"), py::arg("params"));
    m.def("hazard", [](double x, const py::dict& d) { return hazard(x, params_from_dict(d)); },
          py::arg("x"), py::arg("params"));
    m.def("odds", [](double x, const py::dict& d) { return odds(x, params_from_dict(d)); },
          py::arg("x"), py::arg("params"));
    m.def("quantile", [](double q, const py::dict& d) { return quantile(q, params_from_dict(d)); },
          py::arg("q"), py::arg("params"));

    m.def("mean", [](const py::dict& d) { return mean(params_from_dict(d)); },
          py::arg("params"));
    m.def("variance", [](const py::dict& d) { return variance(params_from_dict(d)); },
          py::arg("params"));
    m.def("raw_moment", [](int r, const py::dict& d) {
              return raw_moment_numeric(r, params_from_dict(d));
          },
          py::arg("r"), py::arg("params"));

    m.def("sample",
          [](std::size_t n, const py::dict& d, std::uint64_t seed,
             std::uint64_t stream_id) {
              RngStream stream(seed, stream_id);
              return sample_eephnd(n, params_from_dict(d), stream).values;
          },
          py::arg("n"), py::arg("params"), py::arg("seed"), py::arg("stream_id") = 0);

    m.def("fit_mle",
          [](const std::vector<double>& data, const std::string& model,
             std::uint64_t seed) {
              FitResult fr = fit_mle(data, model_from_name(model), {.seed = seed});
              py::dict out = fit_to_dict(fr);
              if (fr.converged) {
                  InfoCriteria ic = information_criteria(fr);
                  py::dict crit;
                  crit["aic"] = ic.aic;
                  crit["bic"] = ic.bic;
                  crit["caic_bozdogan"] = ic.caic_bozdogan;
                  crit["aicc"] = ic.aicc;
                  out["criteria"] = crit;
              }
              return out;
          },
          py::arg("data"), py::arg("model") = "eephnd", py::arg("seed") = 0);

    m.def("kaplan_meier",
          [](const std::vector<double>& times, const std::vector<bool>& events) {
              std::vector<SurvivalSample> data;
              for (std::size_t i = 0; i < times.size(); ++i) {
                  data.push_back({times[i], events[i], {}});
              }
              KmCurve km = kaplan_meier(data);
              py::dict out;
              out["event_times"] = km.event_times;
              out["survival"] = km.survival;
              out["greenwood_var"] = km.greenwood_var;
              out["n_at_risk"] = km.n_at_risk;
              out["n_events"] = km.n_events;
              out["ci_lower"] = km.ci_lower;
              out["ci_upper"] = km.ci_upper;
              return out;
          },
          py::arg("times"), py::arg("events"));

    m.def("cox_ph",
          [](const std::vector<double>& times, const std::vector<bool>& events,
             const std::map<std::string, std::vector<double>>& covariates) {
              std::vector<SurvivalSample> data;
              std::vector<std::string> names;
              for (const auto& [name, col] : covariates) names.push_back(name);
              for (std::size_t i = 0; i < times.size(); ++i) {
                  SurvivalSample s{times[i], static_cast<bool>(events[i]), {}};
                  for (const auto& [name, col] : covariates) {
                      s.covariates[name] = col.at(i);
                  }
                  data.push_back(std::move(s));
              }
              CoxFit fit = cox_ph_fit(data, names);
              py::dict out;
              py::list coefs;
              for (const auto& c : fit.coefficients) {
                  py::dict row;
                  row["covariate"] = c.name;
                  row["coef"] = c.coef;
                  row["se"] = c.se;
                  row["hazard_ratio"] = c.hazard_ratio;
                  row["p_value"] = c.p_value;
                  coefs.append(row);
              }
              out["coefficients"] = coefs;
              out["loglik"] = fit.loglik;
              out["converged"] = fit.converged;
              return out;
          },
          py::arg("times"), py::arg("events"), py::arg("covariates"));

    m.def("concordance_index",
          [](const std::vector<double>& scores, const std::vector<double>& times,
             const std::vector<bool>& events) {
              std::vector<SurvivalSample> data;
              for (std::size_t i = 0; i < times.size(); ++i) {
                  data.push_back({times[i], events[i], {}});
              }
              return concordance_index(scores, data);
          },
          py::arg("scores"), py::arg("times"), py::arg("events"));
}
