#include "warpcert/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

namespace warpcert {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <typename T>
T jget(const json& j, const char* key, T def) {
    if (!j.is_object() || !j.contains(key)) return def;
    return j.at(key).get<T>();
}

Bc parse_bc(const std::string& s) {
    if (s == "neumann") return Bc::neumann;
    if (s == "dirichlet") return Bc::dirichlet;
    throw Error("unknown bc '" + s + "' (expected neumann|dirichlet)");
}

SpectralModel parse_model(const std::string& s) {
    if (s == "neck") return SpectralModel::neck;
    if (s == "sphere") return SpectralModel::sphere;
    throw Error("unknown spectral model '" + s + "' (expected neck|sphere)");
}

OutputFormat parse_format(const std::string& s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    if (s == "both") return OutputFormat::both;
    throw Error("unknown format '" + s + "' (expected json|csv|both)");
}

const char* bc_name(Bc b) { return b == Bc::neumann ? "neumann" : "dirichlet"; }
const char* model_name(SpectralModel m) {
    return m == SpectralModel::neck ? "neck" : "sphere";
}
const char* format_name(OutputFormat f) {
    switch (f) {
        case OutputFormat::json: return "json";
        case OutputFormat::csv: return "csv";
        default: return "both";
    }
}

// f at the cell centers of the doubled (even-extended) hypersurface profile
// on [-(r2 - tau0), r2 - tau0].
std::vector<double> neck_cells(const GlueSpec& spec, double tau0, double r2,
                               int cells) {
    const int half = cells / 2;
    const double half_width = r2 - tau0;
    const double dx = 2.0 * half_width / cells;
    std::vector<double> taus(static_cast<std::size_t>(half));
    for (int j = 0; j < half; ++j)
        taus[static_cast<std::size_t>(j)] = tau0 + (j + 0.5) * dx;
    const ProfileSamples s = sample_glued(spec, taus);
    std::vector<double> f(static_cast<std::size_t>(cells));
    for (int j = 0; j < half; ++j) {
        f[static_cast<std::size_t>(half + j)] = s.f[static_cast<std::size_t>(j)];
        f[static_cast<std::size_t>(half - 1 - j)] = s.f[static_cast<std::size_t>(j)];
    }
    return f;
}

int even_cells(int requested, int floor_cells) {
    int n = std::max(requested, floor_cells);
    if (n % 2 != 0) ++n;
    return n;
}

// Hypersurface point data as an abstract fiber: own Ricci of
// dt^2 + f^2 ds_{n-1}^2 in the (d/dt, sphere...) eigenbasis.
ModelFiber hypersurface_point_fiber(const WarpProfile& p, std::size_t idx, int n) {
    const double f = p.f[idx], f1 = p.f1[idx], f2 = p.f2[idx];
    const double ric_t = -(n - 1) * f2 / f;
    const double ric_s = -f2 / f + (n - 2) * (1.0 - f1 * f1) / (f * f);
    ModelFiber fb;
    fb.name = "hypersurface@tau=" + std::to_string(p.grid[idx]);
    fb.dim = n;
    fb.ricci_diag.assign(static_cast<std::size_t>(n), ric_s);
    fb.ricci_diag[0] = ric_t;
    fb.metric_diag.assign(static_cast<std::size_t>(n), 1.0);
    fb.scal = fb.trace_ricci();
    return fb;
}

} // namespace

PipelineConfig config_from_json(const json& j) {
    PipelineConfig cfg;
    if (j.contains("construction")) {
        const json& c = j.at("construction");
        ConstructionParams& p = cfg.construction;
        p.n = jget(c, "n", p.n);
        p.r2 = jget(c, "r2", p.r2);
        p.r1 = jget(c, "r1", p.r1);
        p.alpha = jget(c, "alpha", p.alpha);
        p.lambda0 = jget(c, "lambda0", p.lambda0);
        p.eps = jget(c, "eps", p.eps);
        p.T = jget(c, "T", p.T);
        p.tol = jget(c, "tol", p.tol);
        p.grid_points = jget(c, "grid_points", p.grid_points);
    }
    if (j.contains("glue")) {
        const json& g = j.at("glue");
        cfg.glue.window = jget(g, "window", cfg.glue.window);
        cfg.glue.flat_order = jget(g, "flat_order", cfg.glue.flat_order);
        cfg.glue.delta = jget(g, "delta", cfg.glue.delta);
        cfg.glue.cap_margin = jget(g, "cap_margin", cfg.glue.cap_margin);
        cfg.glue.retry_budget = jget(g, "retry_budget", cfg.glue.retry_budget);
    }
    if (j.contains("spectral")) {
        const json& s = j.at("spectral");
        cfg.spectral.k_max = jget(s, "k_max", cfg.spectral.k_max);
        cfg.spectral.modes_per_k = jget(s, "modes_per_k", cfg.spectral.modes_per_k);
        cfg.spectral.grid = jget(s, "grid", cfg.spectral.grid);
        cfg.spectral.bc = parse_bc(jget<std::string>(s, "bc", bc_name(cfg.spectral.bc)));
        cfg.spectral.model =
            parse_model(jget<std::string>(s, "model", model_name(cfg.spectral.model)));
        cfg.spectral.sphere_dim = jget(s, "sphere_dim", cfg.spectral.sphere_dim);
    }
    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        cfg.sweep.alpha = jget(s, "alpha", cfg.sweep.alpha);
        cfg.sweep.lambda0 = jget(s, "lambda0", cfg.sweep.lambda0);
        cfg.sweep.eps = jget(s, "eps", cfg.sweep.eps);
        cfg.sweep.t1_slack = jget(s, "t1_slack", cfg.sweep.t1_slack);
        cfg.sweep.max_runs = jget(s, "max_runs", cfg.sweep.max_runs);
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        cfg.output.dir = jget<std::string>(o, "dir", cfg.output.dir);
        cfg.output.format =
            parse_format(jget<std::string>(o, "format", format_name(cfg.output.format)));
    }
    cfg.seed = jget<std::uint64_t>(j, "seed", cfg.seed);
    return cfg;
}

ordered_json config_to_json(const PipelineConfig& cfg) {
    ordered_json j;
    j["construction"] = {{"n", cfg.construction.n},
                         {"r2", cfg.construction.r2},
                         {"r1", cfg.construction.r1},
                         {"alpha", cfg.construction.alpha},
                         {"lambda0", cfg.construction.lambda0},
                         {"eps", cfg.construction.eps},
                         {"T", cfg.construction.T},
                         {"tol", cfg.construction.tol},
                         {"grid_points", cfg.construction.grid_points}};
    j["glue"] = {{"window", cfg.glue.window},
                 {"flat_order", cfg.glue.flat_order},
                 {"delta", cfg.glue.delta},
                 {"cap_margin", cfg.glue.cap_margin},
                 {"retry_budget", cfg.glue.retry_budget}};
    j["spectral"] = {{"k_max", cfg.spectral.k_max},
                     {"modes_per_k", cfg.spectral.modes_per_k},
                     {"grid", cfg.spectral.grid},
                     {"bc", bc_name(cfg.spectral.bc)},
                     {"model", model_name(cfg.spectral.model)},
                     {"sphere_dim", cfg.spectral.sphere_dim}};
    j["sweep"] = {{"alpha", cfg.sweep.alpha},
                  {"lambda0", cfg.sweep.lambda0},
                  {"eps", cfg.sweep.eps},
                  {"t1_slack", cfg.sweep.t1_slack},
                  {"max_runs", cfg.sweep.max_runs}};
    j["output"] = {{"dir", cfg.output.dir}, {"format", format_name(cfg.output.format)}};
    j["seed"] = cfg.seed;
    return j;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file " + path);
    json j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    return config_from_json(j);
}

std::string default_config_text() {
    return R"cfg({
  // Doubly warped construction parameters. The admissible windows are
  //   lambda0 in (cos(r2), 1),  alpha in (n-2, (n-2)/lambda0^2).
  "construction": {
    "n": 4,              // hypersurface dimension (ambient is n+1)
    "r2": 0.5,           // geodesic disc radius in (0, pi/2)
    "r1": 0.12,          // target circle radius at the outer boundary
    "alpha": 2.2,
    "lambda0": 0.9,
    "eps": 0.1,          // normal Ricci target; must sit below lambda_1
    "T": 10.0,           // integration horizon
    "tol": 1e-10,        // ODE tolerance
    "grid_points": 2001
  },
  // Cap-and-flatten step near the matching time t1.
  "glue": {
    "window": 0.15,      // blend half-width (rounded up to whole grid cells)
    "flat_order": 4,     // h-derivatives certified to vanish at the seam
    "delta": 0.01,       // matching-time slack: f'(t1) >= cos(r2) + delta
    "cap_margin": 0.0,   // required cap coverage below r2
    "retry_budget": 6    // window halvings allowed if positivity fails
  },
  // Laplace spectrum of the model hypersurface.
  "spectral": {
    "k_max": 8,
    "modes_per_k": 12,
    "grid": 2001,        // radial cells; run again at half for the error estimate
    "bc": "neumann",     // even sector of the doubled profile
    "model": "neck",     // neck = doubled glued profile; sphere = round S^m
    "sphere_dim": 3
  },
  // Optional parameter sweep; empty lists pin the base value.
  "sweep": {
    "alpha": [],
    "lambda0": [],
    "eps": [],
    "t1_slack": [],
    "max_runs": 256
  },
  "output": {
    "dir": "out",
    "format": "both"     // json | csv | both
  },
  "seed": 0
}
)cfg";
}

CertificationReport run_pipeline(const PipelineConfig& cfg, PipelineScope scope) {
    CertificationReport rep;
    rep.config = cfg;
    const ConstructionParams& params = cfg.construction;

    auto run_stage = [&rep](const char* name, auto&& body) -> bool {
        StageResult st;
        st.name = name;
        try {
            body(st);
            st.pass = st.failures.empty();
        } catch (const std::exception& ex) {
            st.pass = false;
            st.failures.push_back(std::string("exception: ") + ex.what());
            rep.numerical_error = true;
        }
        for (const auto& f : st.failures)
            rep.failing_checks.push_back(st.name + ": " + f);
        rep.stages.push_back(st);
        return st.pass;
    };
    auto check = [](StageResult& st, bool ok, const std::string& label) {
        if (!ok) st.failures.push_back(label);
    };

    const bool want_construct = scope != PipelineScope::spectrum ||
                                cfg.spectral.model == SpectralModel::neck;
    const bool want_certify = scope == PipelineScope::certify || scope == PipelineScope::all;
    const bool want_spectral = scope == PipelineScope::spectrum || scope == PipelineScope::all;

    bool ok = run_stage("params", [&](StageResult& st) {
        const auto violations = validate_params(params);
        st.data["violations"] = violations;
        st.data["cos_r2"] = std::cos(params.r2);
        st.data["alpha_window_lo"] = static_cast<double>(params.n - 2);
        st.data["alpha_window_hi"] =
            static_cast<double>(params.n - 2) / (params.lambda0 * params.lambda0);
        st.data["alpha_lambda0_sq"] = params.alpha_lambda_sq();
        for (const auto& v : violations) check(st, false, v);
    });

    WarpProfile solved;
    GlueResult glued;
    FinalProfile fin;

    if (ok && want_construct) {
        ok = run_stage("ode", [&](StageResult& st) {
            solved = solve_profile(params);
            const double resid = first_integral_residual(solved, params);
            const double budget = 10.0 * params.tol;
            st.data["first_integral_residual"] = resid;
            st.data["first_integral_budget"] = budget;
            check(st, resid <= budget, "first integral residual exceeds 10x ODE tolerance");

            double f2_min = std::numeric_limits<double>::infinity();
            double f_min = f2_min, h1_min = f2_min;
            double h2_max_interior = -f2_min;
            for (std::size_t i = 0; i < solved.size(); ++i) {
                f2_min = std::min(f2_min, solved.f2[i]);
                f_min = std::min(f_min, solved.f[i]);
                h1_min = std::min(h1_min, solved.h1[i]);
                if (i > 0) h2_max_interior = std::max(h2_max_interior, solved.h2[i]);
            }
            st.data["f2_min"] = f2_min;
            st.data["f_min"] = f_min;
            st.data["h1_min"] = h1_min;
            st.data["h2_max_interior"] = h2_max_interior;
            check(st, f2_min > 0.0, "f'' must be positive");
            check(st, f_min >= 1.0 - 1e-12, "f must stay >= 1");
            check(st, h1_min > 0.0, "h' must be positive");
            check(st, h2_max_interior < 0.0, "h'' must be negative for t > 0");

            ordered_json closure;
            closure["f1_0"] = std::abs(solved.f1.front());
            closure["h_0"] = std::abs(solved.h.front());
            closure["h1_0_minus_1"] = std::abs(solved.h1.front() - 1.0);
            closure["h2_0"] = std::abs(solved.h2.front());
            st.data["closure"] = closure;
            for (const auto& [key, val] : closure.items())
                check(st, val.get<double>() <= 1e-10,
                      "closure parity residual " + key + " exceeds 1e-10");

            st.data["slope_at_T"] = solved.f1.back();
            st.data["slope_gap_to_lambda0"] = params.lambda0 - solved.f1.back();
        });
    }

    if (ok && want_construct) {
        ok = run_stage("glue", [&](StageResult& st) {
            const double t1 = find_matching_time(solved, params, cfg.glue.delta);
            glued = blend_profiles(solved, params, t1, cfg.glue.window,
                                   cfg.glue.flat_order, 0.0, cfg.glue.retry_budget);
            fin = rescale_and_shift(glued, params, params.grid_points, cfg.glue.cap_margin);
            rep.final_profile = fin.profile;
            rep.r1_realized = fin.r1_realized;

            st.data["t1"] = t1;
            st.data["window_requested"] = cfg.glue.window;
            st.data["window_effective"] = glued.spec.window;
            st.data["flat_order"] = glued.spec.flat_order;
            st.data["cap_scale"] = glued.spec.cap_scale;
            st.data["cap_shift"] = glued.spec.cap_shift;
            st.data["blend_c1"] = glued.spec.c1;
            st.data["blend_c2"] = glued.spec.c2;
            st.data["seam_value_err"] = glued.spec.seam_value_err;
            st.data["seam_slope_err"] = glued.spec.seam_slope_err;
            st.data["tau0"] = fin.tau0;
            st.data["tau1"] = fin.tau1;
            st.data["tau_seam"] = fin.tau_seam;
            st.data["cap_coverage"] = fin.cap_coverage;
            st.data["r1_realized"] = fin.r1_realized;
            st.data["r1_target"] = params.r1;

            const BoundaryResiduals res = verify_boundary_conditions(fin, params);
            ordered_json rj;
            rj["h_end_minus_r1"] = res.h_end_minus_r1;
            rj["h_end_derivatives"] = res.h_end_derivatives;
            rj["f_cap_deviation"] = res.f_cap_deviation;
            rj["f_slope_left"] = res.f_slope_left;
            rj["h_value_left"] = res.h_value_left;
            rj["h_slope_left_minus_1"] = res.h_slope_left_minus_1;
            rj["h_curv_left"] = res.h_curv_left;
            st.data["boundary_residuals"] = rj;
            for (const auto& [key, val] : rj.items())
                check(st, val.get<double>() < 1e-8,
                      "boundary residual " + key + " exceeds 1e-8");
            check(st, fin.r1_realized <= params.r1,
                  "realized circle radius exceeds the r1 target");
        });
    }

    if (ok && want_certify) {
        ok = run_stage("curvature", [&](StageResult& st) {
            // Strict positivity in front of the flattening seam; past it the
            // circle component is identically zero, matching the ambient
            // product region the construction hands over to.
            const CurvatureReport blend_rep = ricci_doubly_warped(glued.profile, params.n);
            const double dt = glued.profile.grid[1] - glued.profile.grid[0];
            const double seam = glued.spec.right_seam() - 0.5 * dt;
            double min_core = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < blend_rep.points.size(); ++i) {
                if (glued.profile.grid[i] >= seam) break;
                const auto& c = blend_rep.points[i];
                min_core = std::min({min_core, c.ric_tt, c.ric_circle, c.ric_sphere});
            }
            rep.min_ric_core = min_core;
            st.data["min_ric_core"] = min_core;
            check(st, min_core > 0.0,
                  "ambient Ricci not strictly positive before the seam");

            const double bound = scalar_bound_residual(solved, params.n, params.alpha,
                                                       params.lambda0);
            st.data["scal_bound_residual"] = bound;
            check(st, bound >= -1e-8,
                  "hypersurface scalar curvature drops below the closed-form bound");

            CurvatureReport final_rep = ricci_doubly_warped(fin.profile, params.n);
            final_rep.bound_residual = bound;
            int extrapolated = 0;
            for (const auto& c : final_rep.points) extrapolated += c.extrapolated ? 1 : 0;
            st.data["final_summary"] = {{"min_ric", final_rep.min_ric},
                                        {"min_scal_hyp", final_rep.min_scal_hyp},
                                        {"bound_residual", bound},
                                        {"extrapolated_points", extrapolated},
                                        {"normal_convention", kNormalConvention}};
            check(st, final_rep.min_scal_hyp > 0.0,
                  "hypersurface scalar curvature not positive");
            check(st, final_rep.min_ric > -1e-10,
                  "final profile has negative ambient Ricci");
            rep.final_curvature = std::move(final_rep);
        });
    }

    if (ok && want_certify) {
        ok = run_stage("slab", [&](StageResult& st) {
            const auto& cur = *rep.final_curvature;
            std::size_t idx = 0;
            for (std::size_t i = 1; i < cur.points.size(); ++i)
                if (cur.points[i].scal_hyp < cur.points[idx].scal_hyp) idx = i;
            const ModelFiber fiber = hypersurface_point_fiber(fin.profile, idx, params.n);

            SlabMetric slab = make_slab(fiber, params.eps);
            const SlabRicci sr = slab_ricci(slab);
            double trace = 0.0;
            for (std::size_t i = 0; i < slab.h_tensor.size(); ++i)
                trace += slab.h_tensor[i] / fiber.metric_diag[i];
            const double trace_resid = std::abs(trace + params.eps);
            slab.delta = certify_slab_width(slab);

            double fiber_min = *std::min_element(sr.ric_fiber.begin(), sr.ric_fiber.end());
            st.data["fiber"] = {{"name", fiber.name},
                                {"dim", fiber.dim},
                                {"scal", fiber.scal},
                                {"ricci_diag", fiber.ricci_diag}};
            st.data["eps"] = params.eps;
            st.data["delta"] = slab.delta;
            st.data["ric_tt"] = sr.ric_tt;
            st.data["ric_fiber_min"] = fiber_min;
            st.data["trace_identity_residual"] = trace_resid;
            check(st, trace_resid <= 1e-12 * std::max(1.0, std::abs(fiber.scal)),
                  "deformation tensor trace identity violated");
            check(st, slab.delta > 0.0, "certified slab width not positive");
            check(st, fiber_min > 0.0, "slab fiber Ricci not positive");

            const NecessitySearch search =
                necessity_search(fiber, params.eps, 64, cfg.seed);
            st.data["necessity"] = {{"trials", 64},
                                    {"positive_cases", search.positive_cases},
                                    {"violations", search.violations}};
            check(st, search.violations == 0,
                  "necessity inequality violated by a positively curved sample");

            // Deformation stand-in: the convex path from the ambient second
            // jet at this point to the normalized slab jet keeps a certified
            // positive width (the s=0 end is the construction's merely
            // nonnegative product metric and is excluded).
            const auto& pt = cur.points[idx];
            const std::size_t fdim = fiber.ricci_diag.size();
            std::vector<double> g2_from(fdim), g2_to(fdim);
            for (std::size_t i = 0; i < fdim; ++i) {
                const double ambient = i == 0 ? pt.ric_tt : pt.ric_sphere;
                g2_from[i] = 2.0 * (fiber.ricci_diag[i] - ambient);
                g2_to[i] = 2.0 * slab.h_tensor[i];
            }
            const JetHomotopy hom = certify_jet_homotopy(fiber, g2_from, g2_to, 10);
            st.data["jet_homotopy"] = {{"min_width", hom.min_width},
                                       {"min_ric_tt", hom.min_ric_tt},
                                       {"min_ric_fiber", hom.min_ric_fiber}};
            check(st, hom.min_width > 0.0,
                  "jet interpolation lost its certified slab width");
            check(st, hom.min_ric_fiber > 0.0,
                  "jet interpolation lost fiber Ricci positivity");
        });
    }

    if (ok && want_spectral) {
        ok = run_stage("spectral", [&](StageResult& st) {
            SpectrumResult spectrum;
            st.data["model"] = model_name(cfg.spectral.model);
            if (cfg.spectral.model == SpectralModel::sphere) {
                spectrum = sphere_spectrum(cfg.spectral.sphere_dim, cfg.spectral.k_max);
                st.data["sphere_dim"] = cfg.spectral.sphere_dim;
            } else {
                const int m = params.n - 1;
                const double half_width = params.r2 - fin.tau0;
                const int n_full = even_cells(cfg.spectral.grid, 64);
                const int n_half = even_cells(n_full / 2, 32);
                const auto cells_full = neck_cells(glued.spec, fin.tau0, params.r2, n_full);
                const auto cells_half = neck_cells(glued.spec, fin.tau0, params.r2, n_half);
                spectrum = warped_interval_spectrum(cells_full, half_width, m,
                                                    cfg.spectral.bc, cfg.spectral.k_max,
                                                    cfg.spectral.modes_per_k);
                const SpectrumResult coarse = warped_interval_spectrum(
                    cells_half, half_width, m, cfg.spectral.bc, cfg.spectral.k_max,
                    cfg.spectral.modes_per_k);
                const double est =
                    std::abs(spectrum.lambda1() - coarse.lambda1()) / 3.0;
                spectrum.error_estimate = std::max(est, 1e-9);
                st.data["cells"] = n_full;
                st.data["half_width"] = half_width;
                if (cfg.spectral.bc == Bc::neumann) {
                    const double l0 = spectrum.modes.front().eigenvalue;
                    st.data["lambda0_mode"] = l0;
                    check(st, std::abs(l0) <= 1e-6,
                          "lowest Neumann eigenvalue not zero within 1e-6");
                }
            }

            const double l1 = spectrum.lambda1();
            rep.lambda1_estimate = l1;
            st.data["lambda1"] = l1;
            st.data["error_estimate"] = spectrum.error_estimate;
            const EpsWindow window = certify_index_one(spectrum);
            st.data["index_one_window"] = {{"lo", window.lo}, {"hi", window.hi}};
            const int index = morse_index(spectrum, params.eps);
            rep.morse_index_at_eps = index;
            st.data["eps"] = params.eps;
            st.data["morse_index"] = index;
            ordered_json modes = ordered_json::array();
            for (const auto& m : spectrum.modes)
                modes.push_back({{"eigenvalue", m.eigenvalue},
                                 {"k", m.k},
                                 {"radial_index", m.radial_index},
                                 {"multiplicity", m.multiplicity}});
            st.data["modes"] = std::move(modes);
            check(st, index == 1, "Morse index at eps is " + std::to_string(index) +
                                      ", expected 1");
            rep.spectrum = std::move(spectrum);
        });
    }

    rep.pass = ok;
    for (const auto& st : rep.stages) rep.pass = rep.pass && st.pass;
    return rep;
}

ordered_json CertificationReport::to_json() const {
    ordered_json j;
    j["config"] = config_to_json(config);
    ordered_json stages_json = ordered_json::array();
    for (const auto& st : stages) {
        ordered_json s;
        s["name"] = st.name;
        s["pass"] = st.pass;
        s["failures"] = st.failures;
        s["data"] = st.data;
        stages_json.push_back(std::move(s));
    }
    j["stages"] = std::move(stages_json);
    j["verdict"] = pass ? "pass" : "fail";
    j["failing_checks"] = failing_checks;
    j["numerical_error"] = numerical_error;
    return j;
}

std::vector<SweepRow> run_sweep(const PipelineConfig& cfg) {
    auto list_or = [](const std::vector<double>& v, double base) {
        return v.empty() ? std::vector<double>{base} : v;
    };
    const auto alphas = list_or(cfg.sweep.alpha, cfg.construction.alpha);
    const auto lambdas = list_or(cfg.sweep.lambda0, cfg.construction.lambda0);
    const auto epss = list_or(cfg.sweep.eps, cfg.construction.eps);
    const auto slacks = list_or(cfg.sweep.t1_slack, cfg.glue.delta);

    const std::size_t total = alphas.size() * lambdas.size() * epss.size() * slacks.size();
    if (total > static_cast<std::size_t>(cfg.sweep.max_runs))
        throw Error("sweep would run " + std::to_string(total) +
                    " combinations, above the cap of " + std::to_string(cfg.sweep.max_runs));

    std::vector<SweepRow> rows(total);
    std::size_t at = 0;
    for (double a : alphas)
        for (double l : lambdas)
            for (double e : epss)
                for (double s : slacks) {
                    rows[at].alpha = a;
                    rows[at].lambda0 = l;
                    rows[at].eps = e;
                    rows[at].t1_slack = s;
                    ++at;
                }

    const long count = static_cast<long>(total);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        SweepRow& row = rows[static_cast<std::size_t>(i)];
        try {
            PipelineConfig run_cfg = cfg;
            run_cfg.construction.alpha = row.alpha;
            run_cfg.construction.lambda0 = row.lambda0;
            run_cfg.construction.eps = row.eps;
            run_cfg.glue.delta = row.t1_slack;
            const CertificationReport r = run_pipeline(run_cfg, PipelineScope::all);
            row.pass = r.pass;
            row.min_ric = r.min_ric_core;
            row.r1_realized = r.r1_realized;
            row.lambda1 = r.lambda1_estimate;
            row.index = r.morse_index_at_eps;
            if (!r.pass && !r.failing_checks.empty()) row.error = r.failing_checks.front();
        } catch (const std::exception& ex) {
            row.pass = false;
            row.error = ex.what();
        }
    }
    return rows;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << "alpha,lambda0,eps,t1_slack,pass,min_ric,r1_realized,lambda1,index,error\n";
    char buf[512];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%d,%.17g,%.17g,%.17g,%d,",
                      r.alpha, r.lambda0, r.eps, r.t1_slack, r.pass ? 1 : 0, r.min_ric,
                      r.r1_realized, r.lambda1, r.index);
        std::string err = r.error;
        std::replace(err.begin(), err.end(), ',', ';');
        out << buf << '"' << err << '"' << '\n';
    }
}

void write_outputs(const CertificationReport& rep, const OutputConfig& out) {
    std::filesystem::create_directories(out.dir);
    const bool want_json = out.format != OutputFormat::csv;
    const bool want_csv = out.format != OutputFormat::json;
    if (want_json) {
        std::ofstream f(out.dir + "/report.json");
        if (!f) throw Error("cannot write report.json in " + out.dir);
        f << rep.to_json().dump(2) << "\n";
    }
    if (want_csv) {
        if (rep.final_profile)
            write_profile_csv(out.dir + "/profile.csv", *rep.final_profile);
        if (rep.final_curvature)
            write_curvature_csv(out.dir + "/curvature.csv", *rep.final_curvature);
        if (rep.spectrum) write_spectrum_csv(out.dir + "/spectrum.csv", *rep.spectrum);
    }
}

} // namespace warpcert
