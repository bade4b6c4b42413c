#include <sympjet/cli.hpp>

#include <sympjet/acceptance.hpp>
#include <sympjet/moduli.hpp>
#include <sympjet/normal_forms.hpp>

#include <algorithm>
#include <sstream>

namespace sympjet
{

namespace
{

struct Job {
    std::string command;
    unsigned n = 0;
    unsigned order = 0;
    std::uint64_t seed = 1;
    Json inputs = Json::object();
};

[[noreturn]] void bad_field(const std::string &field, const std::string &what)
{
    fail(ErrorKind::ParseError, "field '" + field + "': " + what);
}

bool non_negative(const Json &v)
{
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

unsigned unsigned_field(const Json &job, const std::string &key)
{
    if (!job.contains(key)) {
        bad_field(key, "missing");
    }
    if (!non_negative(job[key])) {
        bad_field(key, "expected a non-negative integer");
    }
    return job[key].get<unsigned>();
}

const Json &input(const Job &job, const std::string &key)
{
    if (!job.inputs.contains(key)) {
        bad_field("inputs." + key, "missing");
    }
    return job.inputs[key];
}

// Parse errors inside an input carry the field name.
template <class F>
auto with_field(const std::string &field, F &&f)
{
    try {
        return f();
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::ParseError) {
            bad_field(field, e.what());
        }
        throw;
    }
}

Jet input_jet(const Job &job, const std::string &key, const VariableSpace &s)
{
    return with_field("inputs." + key, [&] { return jet_from_json(input(job, key), s, job.order); });
}

Json jets_to_json(const std::vector<Jet> &v)
{
    Json out = Json::array();
    for (const auto &j : v) {
        out.push_back(jet_to_json(j));
    }
    return out;
}

bool residual_zero(const Json &j)
{
    if (j.is_object()) {
        if (j.contains("terms")) {
            for (const auto &t : j["terms"]) {
                if (t.is_array() && t.size() == 2) {
                    if (!residual_zero(t[1])) {
                        return false;
                    }
                } else {
                    return false;
                }
            }
            return true;
        }
        for (const auto &[k, v] : j.items()) {
            if (!residual_zero(v)) {
                return false;
            }
        }
        return true;
    }
    if (j.is_array()) {
        for (const auto &v : j) {
            if (!residual_zero(v)) {
                return false;
            }
        }
    }
    return true;
}

// Largest absolute coefficient anywhere in a serialized residual.
void max_abs(const Json &j, Rational &m)
{
    if (j.is_array() && j.size() == 3 && j[0].is_string() && j[1].is_string()) {
        Rational c(j[0].get<std::string>() + "/" + j[1].get<std::string>());
        c.canonicalize();
        m = std::max(m, Rational(abs(c)));
    } else if (j.is_array() || j.is_object()) {
        for (const auto &v : j) {
            max_abs(v, m);
        }
    }
}

Json relabeling_to_json(const Relabeling &r)
{
    Json out;
    out["identity"] = r.is_identity();
    out["target_pairs"] = r.target_pairs;
    out["source_pairs"] = r.source_pairs;
    out["twisted"] = r.twisted;
    out["target_components"] = r.target_components;
    return out;
}

void cmd_normalize_diffeo(const Job &job, Json &report)
{
    if (job.n < 1) {
        bad_field("n", "normalize-diffeo needs n >= 1");
    }
    const auto s = VariableSpace::symplectic(job.n);
    const MapJet phi = with_field("inputs.map", [&] { return map_from_json(input(job, "map"), s, s, job.order); });
    const DiffeoNormalForm nf = normalize_diffeo(phi);
    Json &out = report["outputs"];
    out["normalizer"] = map_to_json(nf.normalizer);
    out["normalized"] = map_to_json(nf.normalized);
    out["q_tilde"] = jets_to_json(nf.q_tilde);
    out["p_tilde"] = jets_to_json(nf.p_tilde);
    out["relabeling"] = relabeling_to_json(nf.relabeling);
    out["isotropy_steps_ok"] = nf.isotropy_steps_ok;

    // Phi o Psi must equal the normal form in the relabeled target order.
    const unsigned c = nf.certified_order;
    const MapJet moved = compose_maps(phi, nf.normalizer);
    Json diff = Json::array();
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const std::size_t src = nf.relabeling.target_components.empty() ? i : nf.relabeling.target_components[i];
        diff.push_back(jet_to_json((moved[src] - nf.normalized[i]).truncated(c)));
    }
    report["residuals"]["normalizer_pullback"] = form_to_json(nf.certification.residual);
    report["residuals"]["normal_form"] = diff;
    report["certified_order"] = c;
}

void add_pair_outputs(const PairNormalForm &nf, unsigned order, Json &report)
{
    Json &out = report["outputs"];
    out["normalizer"] = map_to_json(nf.normalizer);
    out["r"] = jet_to_json(nf.r);
    out["q_tilde"] = jets_to_json(nf.q_tilde);
    out["p_tilde"] = jets_to_json(nf.p_tilde);
    out["phi"] = jet_to_json(nf.phi);
    out["g"] = jet_to_json(nf.g);
    out["normalized_f"] = jet_to_json(nf.normalized_f);
    out["normalized_h"] = jet_to_json(nf.normalized_h);
    report["certified_order"] = nf.certified_order;
    report["residuals"]["normalizer_pullback"] = form_to_json(nf.certification.residual);
    for (const auto &note : nf.notes) {
        report["warnings"].push_back(note);
    }
    report["warnings"].push_back("the normal form sums Q_i y^(2i-1) over i = 1..n; an upper limit 2n-1 would name "
                                 "Q_i that do not exist");
    report["warnings"].push_back("from " + std::to_string(order) + "-jets the invariants are determined only to r: " +
                                 std::to_string(nf.r.order()) + ", phi: " + std::to_string(nf.phi.order()) +
                                 " (the Weierstrass data of an N-jet is fixed to degree N/2)");
}

void cmd_normalize_pair(const Job &job, Json &report)
{
    const auto s = VariableSpace::constrained(job.n);
    const Jet f = input_jet(job, "f", s);
    const Jet h = input_jet(job, "h", s);
    const PairNormalForm nf = normalize_glancing_pair(f, h);
    add_pair_outputs(nf, job.order, report);
    const Jet moved = jet_compose(f, nf.normalizer);
    report["residuals"]["f_pullback"] = jet_to_json(moved - nf.normalized_f.truncated(moved.order()));
}

void cmd_glancing_check(const Job &job, Json &report)
{
    const auto s = VariableSpace::constrained(job.n);
    const GlancingReport gl = check_glancing(input_jet(job, "f", s), input_jet(job, "h", s));
    Json &out = report["outputs"];
    out["fh"] = rational_to_json(gl.fh);
    out["f_fh"] = rational_to_json(gl.f_fh);
    out["h_fh"] = rational_to_json(gl.h_fh);
    out["wedge_nonzero"] = gl.wedge_nonzero;
    out["in_s1"] = gl.in_s1;
    if (job.n == 0) {
        report["warnings"].push_back("df^dh(0) always vanishes in the plane; the wedge condition is not required for n = 0");
    }
}

void cmd_parametrize_form(const Job &job, Json &report)
{
    if (job.n < 1 || job.order < 1) {
        bad_field("n", "parametrize-form needs n >= 1 and order >= 1");
    }
    const auto s = VariableSpace::symplectic(job.n);
    const FormJet omega =
        with_field("inputs.omega", [&] { return form_from_json(input(job, "omega"), s, job.order - 1); });
    const SymplecticParam param = parametrize_symplectic_form(SymplecticFormJet(omega));
    Json &out = report["outputs"];
    out["q_bar"] = jets_to_json(param.q_bar);
    out["p_bar"] = jets_to_json(param.p_bar);
    out["reconstruction"] = form_to_json(param.reconstruction);
    Json members = Json::array();
    for (unsigned i = 1; i <= job.n; ++i) {
        const bool q_in = ideal_membership(param.q_bar[i - 1], IdealSpec::omega(s, 2 * i - 1));
        const bool p_in = i == 1 || ideal_membership(param.p_bar[i - 1], IdealSpec::omega(s, 2 * i - 2));
        members.push_back({{"i", i}, {"q_bar_in_ideal", q_in}, {"p_bar_in_ideal", p_in}});
        if (!q_in || !p_in) {
            fail(ErrorKind::CertificationFailure, "parametrization violates an ideal membership at i = " + std::to_string(i));
        }
    }
    out["ideal_memberships"] = members;
    report["residuals"]["reconstruction"] = form_to_json(param.certification.residual);
    report["certified_order"] = param.certification.certified_order;
}

void cmd_km_form(const Job &job, Json &report)
{
    const auto s = VariableSpace::constrained(job.n);
    const PairNormalForm nf = normalize_glancing_pair(input_jet(job, "f", s), input_jet(job, "h", s));
    add_pair_outputs(nf, job.order, report);
    const FlattenedTripleForm km = derive_flattened_triple_form(nf);
    Json &out = report["outputs"];
    out["f_hat"] = jet_to_json(km.f_hat);
    out["r_hat"] = jet_to_json(km.r_hat);
    out["psi"] = jet_to_json(km.psi);
    out["omega_tilde"] = form_to_json(km.omega_tilde);
    out["coordinates"] = map_to_json(km.coordinates);
    report["certified_order"] = km.certified_order;
    report["warnings"].push_back("omega_tilde is the standard form written in the flattening coordinates; it is "
                                 "dp^dq only when those coordinates are symplectic");
}

void cmd_poincare(const Job &job, Json &report)
{
    if (job.n < 1 || job.order < 1) {
        bad_field("n", "poincare needs n >= 1 and order >= 1");
    }
    if (job.order > 8) {
        bad_field("order", "poincare is limited to order 8");
    }
    const SeriesCoeffs sc = poincare_series(job.n, job.order, job.seed);
    Json rows = Json::array();
    for (unsigned k = 1; k <= job.order; ++k) {
        Json row;
        row["k"] = k;
        row["dim"] = sc.dims[k];
        row["closed_form_prediction"] = sc.series_dims[k];
        row["agree"] = bool(sc.agrees[k - 1]);
        if (k <= sc.rank_dims.size()) {
            row["rank_method"] = sc.rank_dims[k - 1];
        }
        rows.push_back(row);
        if (!sc.agrees[k - 1]) {
            report["warnings"].push_back("k = " + std::to_string(k) + ": the series t n(2n-1)/(1-t)^(2n) predicts " +
                                         std::to_string(sc.series_dims[k]) + ", the exact count is " +
                                         std::to_string(sc.dims[k]));
        }
    }
    Json &out = report["outputs"];
    out["table"] = rows;
    out["dims"] = sc.dims;
    out["increments"] = sc.increments;
    out["closed_form_increments"] = sc.series_increments;
    out["closed_two_form_dims"] = sc.closed_form_dims;
    out["methods_agree"] = sc.methods_agree;
    out["shift_identity_holds"] = sc.shift_identity_holds;
    if (!sc.methods_agree || !sc.shift_identity_holds) {
        fail(ErrorKind::CertificationFailure, "the independent dimension counts disagree");
    }
}

void cmd_selftest(Json &report)
{
    Json rows = Json::array();
    bool all = true;
    for (const auto &r : run_acceptance()) {
        rows.push_back({{"id", r.id},
                        {"title", r.title},
                        {"pass", r.pass},
                        {"detail", r.detail},
                        {"limit_seconds", r.limit_seconds}});
        all = all && r.pass;
    }
    report["outputs"]["criteria"] = rows;
    if (!all) {
        report["status"] = "failed";
        report["error"] = {{"kind", "CriteriaFailed"}, {"message", "some acceptance criteria fail"}};
        report["exit_status"] = 2;
    }
}

Job parse_job(const Json &j, const JobOverrides &ov)
{
    if (!j.is_object()) {
        fail(ErrorKind::ParseError, "a job is a JSON object");
    }
    Job job;
    if (!j.contains("command") || !j["command"].is_string()) {
        bad_field("command", "missing or not a string");
    }
    job.command = j["command"].get<std::string>();
    const bool needs_n = job.command != "selftest";
    const bool needs_order = job.command != "selftest";
    if (needs_n) {
        job.n = unsigned_field(j, "n");
        if (job.n > 4) {
            bad_field("n", "at most 4");
        }
    }
    if (ov.order) {
        job.order = *ov.order;
    } else if (needs_order) {
        job.order = unsigned_field(j, "order");
    }
    if (job.order > 14) {
        bad_field("order", "at most 14");
    }
    if (ov.seed) {
        job.seed = *ov.seed;
    } else if (j.contains("seed")) {
        if (!non_negative(j["seed"])) {
            bad_field("seed", "expected a non-negative integer");
        }
        job.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("inputs")) {
        if (!j["inputs"].is_object()) {
            bad_field("inputs", "expected an object");
        }
        job.inputs = j["inputs"];
    }
    return job;
}

Json echo(const Json &raw, const Job &job)
{
    Json e = raw.is_object() ? raw : Json::object();
    if (!job.command.empty() && job.command != "selftest") {
        e["order"] = job.order;
        e["seed"] = job.seed;
    }
    return e;
}

} // namespace

Json run_job(const Json &raw, const JobOverrides &overrides)
{
    Json report;
    report["job"] = raw;
    report["status"] = "ok";
    report["outputs"] = Json::object();
    report["residuals"] = Json::object();
    report["warnings"] = Json::array();
    report["exit_status"] = 0;
    try {
        const Job job = parse_job(raw, overrides);
        report["job"] = echo(raw, job);
        if (job.command == "normalize-diffeo") {
            cmd_normalize_diffeo(job, report);
        } else if (job.command == "normalize-pair") {
            cmd_normalize_pair(job, report);
        } else if (job.command == "glancing-check") {
            cmd_glancing_check(job, report);
        } else if (job.command == "parametrize-form") {
            cmd_parametrize_form(job, report);
        } else if (job.command == "km-form") {
            cmd_km_form(job, report);
        } else if (job.command == "poincare") {
            cmd_poincare(job, report);
        } else if (job.command == "selftest") {
            cmd_selftest(report);
        } else {
            bad_field("command", "unknown command '" + job.command + "'");
        }
        Json norms = Json::object();
        for (const auto &[name, r] : report["residuals"].items()) {
            Rational m = 0;
            max_abs(r, m);
            norms[name] = rational_to_json(m);
        }
        report["residual_norms"] = norms;
        if (report["status"] == "ok" && !residual_zero(report["residuals"])) {
            fail(ErrorKind::CertificationFailure, "a residual is nonzero at the certified order");
        }
    } catch (const Error &e) {
        report["status"] = "error";
        report["error"] = {{"kind", std::string(error_kind_name(e.kind()))}, {"message", e.what()}};
        report["exit_status"] = e.kind() == ErrorKind::ParseError ? 1 : 2;
    }
    return report;
}

Json run_job_text(const std::string &text, const JobOverrides &overrides)
{
    Json job;
    try {
        job = Json::parse(text);
    } catch (const Json::parse_error &e) {
        Json report;
        report["job"] = nullptr;
        report["status"] = "error";
        report["error"] = {{"kind", "ParseError"}, {"message", e.what()}};
        report["exit_status"] = 1;
        return report;
    }
    return run_job(job, overrides);
}

int report_exit_status(const Json &report)
{
    return report.value("exit_status", 1);
}

namespace
{

bool looks_like_jet(const Json &j)
{
    return j.is_object() && j.contains("space") && j.contains("terms") && !j.contains("degree");
}

bool looks_like_form(const Json &j)
{
    return j.is_object() && j.contains("space") && j.contains("terms") && j.contains("degree");
}

void render(std::ostringstream &os, const std::string &path, const Json &j)
{
    if (looks_like_jet(j)) {
        const auto s = space_from_name(j["space"].get<std::string>());
        os << path << " = " << to_string(jet_from_json(j, s, 0)) << "  [order " << j["order"] << "]\n";
    } else if (looks_like_form(j)) {
        const auto s = space_from_name(j["space"].get<std::string>());
        os << path << " = " << to_string(form_from_json(j, s, 0)) << "  [order " << j["order"] << "]\n";
    } else if (j.is_object()) {
        for (const auto &[k, v] : j.items()) {
            render(os, path.empty() ? k : path + "." + k, v);
        }
    } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            render(os, path + "[" + std::to_string(i) + "]", j[i]);
        }
    } else if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_string()) {
        os << path << " = " << j[0].get<std::string>() << (j[1] == "1" ? "" : "/" + j[1].get<std::string>()) << "\n";
    } else if (j.is_string()) {
        os << path << " = " << j.get<std::string>() << "\n";
    } else {
        os << path << " = " << j.dump() << "\n";
    }
}

} // namespace

std::string render_text(const Json &report)
{
    std::ostringstream os;
    const Json &job = report["job"];
    os << "command: " << (job.is_object() && job.contains("command") ? job["command"].dump() : "?") << "\n";
    os << "status: " << report.value("status", "?") << " (exit " << report_exit_status(report) << ")\n";
    if (report.contains("error")) {
        os << "error: " << report["error"].value("kind", "?") << ": " << report["error"].value("message", "") << "\n";
    }
    if (report.contains("certified_order")) {
        os << "certified order: " << report["certified_order"] << "\n";
    }
    if (report.contains("warnings")) {
        for (const auto &w : report["warnings"]) {
            os << "warning: " << w.get<std::string>() << "\n";
        }
    }
    if (report.contains("outputs")) {
        render(os, "", report["outputs"]);
    }
    if (report.contains("residuals") && !report["residuals"].empty()) {
        os << "residuals " << (residual_zero(report["residuals"]) ? "all zero" : "NONZERO") << ":\n";
        render(os, "residual", report["residuals"]);
    }
    return os.str();
}

} // namespace sympjet
