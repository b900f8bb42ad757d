// Command-line front end: fit | compare | sample | curves | km | cox | cindex
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "eephnd/distributions.hpp"
#include "eephnd/estimation.hpp"
#include "eephnd/io.hpp"
#include "eephnd/moments.hpp"
#include "eephnd/numerics.hpp"
#include "eephnd/sampling.hpp"
#include "eephnd/survival.hpp"

using json = nlohmann::ordered_json;
using namespace eephnd;

namespace {

constexpr const char* kToolVersion = "eephnd 0.1.0";

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CommonOpts {
    std::string input;
    std::string output;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string time_col = "time";
    std::string status_col = "status";
    std::string status_coding = "12";
    bool rescale = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_input) {
    auto* in = cmd->add_option("--input", o.input, "input CSV path");
    if (needs_input) in->required();
    cmd->add_option("--output", o.output, "output path (default: stdout)");
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--threads", o.threads, "worker threads (never affects values)");
    cmd->add_option("--time-col", o.time_col, "time column name");
    cmd->add_option("--status-col", o.status_col, "status column name");
    cmd->add_option("--status-coding", o.status_coding,
                    "status coding: 01 (0=censored) or 12 (1=censored)")
        ->check(CLI::IsMember({"01", "12"}));
    cmd->add_flag("--rescale-time", o.rescale, "divide times by their maximum");
}

Dataset load_dataset(const CommonOpts& o, std::vector<std::string> covariates = {}) {
    CsvSchema schema;
    schema.time_col = o.time_col;
    schema.status_col = o.status_col;
    schema.status_coding =
        (o.status_coding == "12") ? StatusCoding::OneTwo : StatusCoding::ZeroOne;
    schema.covariate_cols = std::move(covariates);
    Dataset ds = load_csv(o.input, schema);
    if (o.rescale) ds = rescale_time(ds);
    return ds;
}

json provenance_json(const Dataset& ds) {
    json p;
    p["source"] = ds.source_path;
    p["raw_rows"] = ds.raw_row_count;
    p["rows"] = static_cast<int>(ds.rows.size());
    p["dropped_rows"] = ds.dropped_rows;
    if (ds.rescale_factor) {
        p["rescale_factor"] = fmt17(*ds.rescale_factor);
    }
    return p;
}

json header_json(const CommonOpts& o, const std::string& command) {
    json h;
    h["tool"] = kToolVersion;
    h["command"] = command;
    json cfg;
    // --threads never changes any computed value, so it is deliberately
    // left out of the emitted configuration to keep reruns byte-identical
    cfg["seed"] = o.seed;
    cfg["rescale_time"] = o.rescale;
    cfg["status_coding"] = o.status_coding;
    h["config"] = cfg;
    h["rng_algorithm"] = RngStream::algorithm;
    return h;
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(o.output, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + o.output);
        out << text;
    }
}

json fit_json(const FitResult& fr) {
    json f;
    f["model"] = model_name(fr.model_tag);
    json params;
    auto names = model_param_names(fr.model_tag);
    for (std::size_t i = 0; i < names.size(); ++i) {
        params[names[i]] = fmt17(fr.params[i]);
    }
    f["params"] = params;
    f["loglik"] = fmt17(fr.loglik);
    f["k"] = fr.k;
    f["n"] = fr.n;
    f["converged"] = fr.converged;
    f["iterations"] = fr.iterations;
    f["restarts_used"] = fr.restarts_used;
    return f;
}

json criteria_json(const InfoCriteria& ic) {
    json c;
    c["aic"] = fmt17(ic.aic);
    c["bic"] = fmt17(ic.bic);
    c["caic_bozdogan"] = fmt17(ic.caic_bozdogan);
    c["aicc"] = fmt17(ic.aicc);
    return c;
}

std::vector<double> parse_params(const std::vector<std::string>& kv, ModelTag tag) {
    std::map<std::string, double> values;
    for (const auto& item : kv) {
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("bad --params item (want name=value): " + item);
        }
        values[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    std::vector<double> out;
    for (const auto& name : model_param_names(tag)) {
        auto it = values.find(name);
        if (it == values.end()) {
            throw std::runtime_error("missing parameter: " + name);
        }
        out.push_back(it->second);
        values.erase(it);
    }
    if (!values.empty()) {
        throw std::runtime_error("unknown parameter: " + values.begin()->first);
    }
    return out;
}

int cmd_fit(const CommonOpts& o, const std::string& model, int bootstrap_b,
            double level) {
    Dataset ds = load_dataset(o);
    ModelTag tag = model_from_name(model);
    auto times = ds.times();
    FitResult fr = fit_mle(times, tag, {.seed = o.seed});
    json doc = header_json(o, "fit");
    doc["provenance"] = provenance_json(ds);
    doc["fit"] = fit_json(fr);
    doc["criteria"] = criteria_json(information_criteria(fr));
    if (bootstrap_b > 0) {
        BootstrapCI ci = bootstrap_ci(times, tag, bootstrap_b, level, o.seed,
                                      {.restarts = 2}, o.threads);
        json b;
        b["B"] = ci.B;
        b["level"] = fmt17(ci.level);
        b["failed_resamples"] = ci.failed;
        json per;
        auto names = model_param_names(tag);
        for (std::size_t i = 0; i < names.size(); ++i) {
            json iv;
            iv["lower"] = fmt17(ci.lower[i]);
            iv["upper"] = fmt17(ci.upper[i]);
            if (ci.degenerate[i]) iv["degenerate"] = true;
            per[names[i]] = iv;
        }
        b["intervals"] = per;
        doc["bootstrap"] = b;
    }
    emit(o, doc.dump(2) + "\n");
    return 0;
}

int cmd_compare(const CommonOpts& o, std::vector<std::string> models) {
    Dataset ds = load_dataset(o);
    if (models.empty()) {
        models = {"eephnd", "eep", "half_normal", "log_normal", "gamma_rayleigh"};
    }
    auto times = ds.times();
    json doc = header_json(o, "compare");
    doc["provenance"] = provenance_json(ds);
    json fits = json::array();
    std::vector<std::pair<std::string, InfoCriteria>> rows;
    for (const auto& m : models) {
        ModelTag tag = model_from_name(m);
        FitResult fr = fit_mle(times, tag, {.seed = o.seed});
        InfoCriteria ic = information_criteria(fr);
        json f = fit_json(fr);
        f["criteria"] = criteria_json(ic);
        fits.push_back(f);
        rows.emplace_back(model_name(tag), ic);
    }
    doc["fits"] = fits;
    json ranking;
    auto rank_by = [&](auto key) {
        auto sorted = rows;
        std::stable_sort(sorted.begin(), sorted.end(),
                         [&](const auto& a, const auto& b) { return key(a.second) < key(b.second); });
        json arr = json::array();
        for (const auto& r : sorted) arr.push_back(r.first);
        return arr;
    };
    ranking["aic"] = rank_by([](const InfoCriteria& c) { return c.aic; });
    ranking["bic"] = rank_by([](const InfoCriteria& c) { return c.bic; });
    ranking["caic_bozdogan"] = rank_by([](const InfoCriteria& c) { return c.caic_bozdogan; });
    ranking["aicc"] = rank_by([](const InfoCriteria& c) { return c.aicc; });
    doc["ranking"] = ranking;
    emit(o, doc.dump(2) + "\n");
    return 0;
}

int cmd_sample(const CommonOpts& o, const std::string& model,
               const std::vector<std::string>& kv, std::size_t n, bool labels) {
    ModelTag tag = model_from_name(model);
    std::vector<double> p = parse_params(kv, tag);
    RngStream stream(o.seed, 0);
    SampleBatch batch;
    if (tag == ModelTag::Eephnd) {
        batch = sample_eephnd(n, {p[0], p[1], p[2], p[3], p[4], p[5]}, stream, labels);
    } else if (tag == ModelTag::Eep) {
        batch = sample_eep(n, {p[0], p[1], p[2], p[3]}, stream);
    } else if (tag == ModelTag::HalfNormal) {
        batch = sample_half_normal(n, {p[0]}, stream);
    } else {
        throw std::runtime_error("sampling supports eephnd, eep, half_normal");
    }
    std::string text;
    text += "# " + std::string(kToolVersion) + " sample model=" + model_name(tag) +
            " n=" + std::to_string(n) + " seed=" + std::to_string(o.seed) +
            " stream=0 rng=" + RngStream::algorithm + "\n";
    text += batch.component_labels ? "value,component\n" : "value\n";
    for (std::size_t i = 0; i < batch.values.size(); ++i) {
        text += fmt17(batch.values[i]);
        if (batch.component_labels) {
            text += (*batch.component_labels)[i] == Component::Eep ? ",eep" : ",hn";
        }
        text += "\n";
    }
    emit(o, text);
    return 0;
}

int cmd_curves(const CommonOpts& o, const std::vector<std::string>& kv,
               const std::string& grid_spec, std::vector<std::string> which) {
    std::vector<double> p = parse_params(kv, ModelTag::Eephnd);
    EephndParams params{p[0], p[1], p[2], p[3], p[4], p[5]};
    double lo, hi;
    int steps;
    if (std::sscanf(grid_spec.c_str(), "%lf:%lf:%d", &lo, &hi, &steps) != 3 ||
        steps < 2 || !(hi > lo)) {
        throw std::runtime_error("bad --grid, want lo:hi:steps");
    }
    if (which.empty()) which = {"pdf", "cdf", "hazard", "survival", "odds"};
    std::string text;
    text += "# " + std::string(kToolVersion) + " curves grid=" + grid_spec + "\n";
    text += "x";
    for (const auto& w : which) text += "," + w;
    text += "\n";
    for (int i = 0; i < steps; ++i) {
        double x = lo + (hi - lo) * i / (steps - 1);
        if (x <= 0.0) continue;
        text += fmt17(x);
        for (const auto& w : which) {
            double v;
            if (w == "pdf") v = eephnd_pdf(x, params);
            else if (w == "cdf") v = eephnd_cdf(x, params);
            else if (w == "hazard") v = hazard(x, params);
            else if (w == "survival") v = survival(x, params);
            else if (w == "odds") v = odds(x, params);
            else throw std::runtime_error("unknown curve: " + w);
            text += "," + fmt17(v);
        }
        text += "\n";
    }
    emit(o, text);
    return 0;
}

int cmd_km(const CommonOpts& o) {
    Dataset ds = load_dataset(o);
    KmCurve km = kaplan_meier(ds.rows);
    json doc = header_json(o, "km");
    doc["provenance"] = provenance_json(ds);
    json curve;
    auto arr = [&](const auto& v) {
        json a = json::array();
        for (auto x : v) a.push_back(fmt17(static_cast<double>(x)));
        return a;
    };
    curve["event_times"] = arr(km.event_times);
    curve["survival"] = arr(km.survival);
    curve["greenwood_var"] = arr(km.greenwood_var);
    json risk = json::array(), events = json::array();
    for (std::size_t i = 0; i < km.n_at_risk.size(); ++i) {
        risk.push_back(km.n_at_risk[i]);
        events.push_back(km.n_events[i]);
    }
    curve["n_at_risk"] = risk;
    curve["n_events"] = events;
    curve["ci_lower"] = arr(km.ci_lower);
    curve["ci_upper"] = arr(km.ci_upper);
    doc["kaplan_meier"] = curve;
    emit(o, doc.dump(2) + "\n");
    return 0;
}

int cmd_cox(const CommonOpts& o, const std::vector<std::string>& covariates) {
    Dataset ds = load_dataset(o, covariates);
    CoxFit fit = cox_ph_fit(ds.rows, covariates);
    json doc = header_json(o, "cox");
    doc["provenance"] = provenance_json(ds);
    json coefs = json::array();
    for (const auto& c : fit.coefficients) {
        json j;
        j["covariate"] = c.name;
        j["coef"] = fmt17(c.coef);
        j["se"] = fmt17(c.se);
        j["hazard_ratio"] = fmt17(c.hazard_ratio);
        j["ci95_lower"] = fmt17(c.ci95_lower);
        j["ci95_upper"] = fmt17(c.ci95_upper);
        j["p_value"] = fmt17(c.p_value);
        coefs.push_back(j);
    }
    json f;
    f["coefficients"] = coefs;
    f["loglik"] = fmt17(fit.loglik);
    f["converged"] = fit.converged;
    f["iterations"] = fit.iterations;
    doc["cox"] = f;
    emit(o, doc.dump(2) + "\n");
    return 0;
}

int cmd_cindex(const CommonOpts& o, const std::string& model) {
    Dataset ds = load_dataset(o);
    ModelTag tag = model_from_name(model);
    FitResult fr = fit_mle(ds.times(), tag, {.seed = o.seed});
    ProtocolConcordance pc = model_concordance_protocol(fr, ds.rows);
    json doc = header_json(o, "cindex");
    doc["provenance"] = provenance_json(ds);
    doc["fit"] = fit_json(fr);
    doc["concordance_index"] = fmt17(pc.value);
    doc["protocol"] = pc.protocol;
    emit(o, doc.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"EEPHND mixture distribution and survival analysis toolkit"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string model = "eephnd";
    std::vector<std::string> models;
    std::vector<std::string> kv;
    std::vector<std::string> which;
    std::vector<std::string> covariates = {"age", "sex"};
    std::size_t n = 1000;  // recommended default batch size
    int bootstrap_b = 0;
    double level = 0.95;
    std::string grid_spec = "0.01:5:200";
    bool labels = false;

    auto* fit = app.add_subcommand("fit", "fit one model by maximum likelihood");
    add_common(fit, o, true);
    fit->add_option("--model", model, "model tag");
    fit->add_option("--bootstrap", bootstrap_b, "bootstrap resamples (0 = off)");
    fit->add_option("--level", level, "confidence level");

    auto* compare = app.add_subcommand("compare", "fit a model roster and rank");
    add_common(compare, o, true);
    compare->add_option("--model", models, "model tags (default: full roster)");

    auto* sample = app.add_subcommand("sample", "draw random variates");
    add_common(sample, o, false);
    sample->add_option("--model", model, "model tag");
    sample->add_option("--params", kv, "name=value parameter list")->required();
    sample->add_option("--n", n, "number of draws");
    sample->add_flag("--labels", labels, "record mixture component labels");

    auto* curves = app.add_subcommand("curves", "evaluate curves on a grid");
    add_common(curves, o, false);
    curves->add_option("--params", kv, "name=value parameter list")->required();
    curves->add_option("--grid", grid_spec, "lo:hi:steps");
    curves->add_option("--which", which, "curve subset: pdf,cdf,hazard,survival,odds");

    auto* km = app.add_subcommand("km", "Kaplan-Meier estimate");
    add_common(km, o, true);

    auto* cox = app.add_subcommand("cox", "Cox proportional hazards fit");
    add_common(cox, o, true);
    cox->add_option("--covariates", covariates, "covariate column names");

    auto* cindex = app.add_subcommand("cindex", "fitted-model concordance index");
    add_common(cindex, o, true);
    cindex->add_option("--model", model, "model tag");

    CLI11_PARSE(app, argc, argv);

    try {
        if (fit->parsed()) return cmd_fit(o, model, bootstrap_b, level);
        if (compare->parsed()) return cmd_compare(o, models);
        if (sample->parsed()) return cmd_sample(o, model, kv, n, labels);
        if (curves->parsed()) return cmd_curves(o, kv, grid_spec, which);
        if (km->parsed()) return cmd_km(o);
        if (cox->parsed()) return cmd_cox(o, covariates);
        if (cindex->parsed()) return cmd_cindex(o, model);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
