#include "quermass/harness/suite.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "quermass/harness/corpus.hpp"
#include "quermass/harness/io.hpp"

namespace quermass::harness {

using nlohmann::json;

namespace {

template <typename T>
std::vector<T> scalar_or_list(const json& v, const std::string& where)
{
    try {
        if (v.is_array()) return v.get<std::vector<T>>();
        return {v.get<T>()};
    } catch (const json::exception& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

template <typename T>
T field(const json& j, const char* key, T fallback, const std::string& source)
{
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(source + ": field '" + key + "': " + e.what());
    }
}

std::string fmt_param(double x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

class Runner {
public:
    explicit Runner(const std::function<void(const CheckResult&)>& progress) : progress_(progress) {}

    void emit(std::string id, CheckResult r, json extra = json::object())
    {
        r.check_id = std::move(id);
        for (auto it = extra.begin(); it != extra.end(); ++it) r.config[it.key()] = it.value();
        if (progress_) progress_(r);
        out_.push_back(std::move(r));
    }

    // Runs `fn`, turning library errors into failed checks so one bad body
    // cannot hide the rest of the report.
    template <typename F>
    void run(const std::string& id, F&& fn, json extra = json::object())
    {
        try {
            emit(id, fn(), std::move(extra));
        } catch (const std::exception& e) {
            CheckResult r;
            r.status = Status::Fail;
            r.lhs = r.rhs = r.margin = std::nan("");
            extra["error"] = e.what();
            emit(id, r, std::move(extra));
        }
    }

    std::vector<CheckResult> take() { return std::move(out_); }

private:
    const std::function<void(const CheckResult&)>& progress_;
    std::vector<CheckResult> out_;
};

struct Pair {
    const NamedBody* K;
    const NamedBody* L;
};

std::string pair_name(const Pair& p) { return p.K->name + "~" + p.L->name; }

json bodies_json(const Pair& p) { return {{"K", p.K->name}, {"L", p.L->name}}; }

std::vector<NamedBody> corpus_for(const SuiteConfig& c, int n)
{
    std::vector<NamedBody> bodies = bundled_corpus(n);
    for (const auto& path : c.body_paths) {
        ConvexBody b = load_body(path);
        if (b.dim() == n) bodies.push_back({std::filesystem::path(path).stem().string(), std::move(b)});
    }
    return bodies;
}

// Each polytope paired with its successor in corpus order (cyclically), plus
// the cube against every smooth body.
std::vector<Pair> corpus_pairs(const std::vector<NamedBody>& bodies)
{
    std::vector<Pair> pairs;
    const std::size_t m = bodies.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (!bodies[i].body.is_polytope()) continue;
        pairs.push_back({&bodies[i], &bodies[(i + 1) % m]});
    }
    for (const auto& b : bodies)
        if (!b.body.is_polytope() && bodies[0].body.is_polytope() &&
            std::none_of(pairs.begin(), pairs.end(), [&](const Pair& p) { return p.K == &bodies[0] && p.L == &b; }))
            pairs.push_back({&bodies[0], &b});
    return pairs;
}

std::vector<int> js_for(const SuiteConfig& c, int n)
{
    std::vector<int> js;
    if (c.js.empty())
        for (int j = 1; j <= n; ++j) js.push_back(j);
    else
        js = c.js;
    return js;
}

// Re-runs a sampled check on a 10x larger independent sample while it stays
// inconclusive, at most c.max_escalations times.
template <typename F>
CheckResult escalate(const SuiteConfig& c, CheckResult r, const GrassmannSample& first, std::uint64_t seed, F&& fn)
{
    std::size_t N = first.size();
    const int n = first.ambient_dim(), j = first.dim();
    for (int k = 1; k <= c.max_escalations && r.status == Status::Inconclusive && j < n; ++k) {
        N *= 10;
        r = fn(GrassmannSample(n, j, N, seed + 0x5bd1e995ULL * k));
        r.config["escalations"] = k;
    }
    return r;
}

template <typename F>
CheckResult escalating(const SuiteConfig& c, const GrassmannSample& first, std::uint64_t seed, F&& fn)
{
    return escalate(c, fn(first), first, seed, fn);
}

int volume_dirs(const SuiteConfig& c, int n) { return n >= 4 ? c.dirs_4d : c.dirs; }

std::string nj(int n, int j) { return "/n" + std::to_string(n) + "/j" + std::to_string(j); }

void orlicz_suite(const SuiteConfig& c, Runner& R)
{
    R.run("orlicz.solver.residual", [&] { return check_solver_residuals(c.solver_tuples, c.seed); });
    R.run("orlicz.solver.closed_form", [&] { return check_closed_forms(c.solver_tuples, c.seed); });
    for (const auto& phi : c.phis) R.run("orlicz.class/" + phi.name(), [&] { return check_orlicz_class(phi); });

    for (int n : c.dims) {
        const auto bodies = corpus_for(c, n);
        const auto pairs = corpus_pairs(bodies);
        const std::string dn = "/n" + std::to_string(n);
        const int D = volume_dirs(c, n);

        for (const auto& b : bodies) {
            if (!b.body.is_polytope()) continue;
            const json who = {{"K", b.name}};
            R.run("volume.closure" + dn + "/" + b.name, [&] { return check_surface_closure(b.body); }, who);
            for (const auto& phi : c.phis) {
                R.run("volume.mixed_self" + dn + "/" + b.name + "/" + phi.name(),
                      [&] { return check_mixed_volume_self(b.body, phi); }, who);
                for (double lam : {0.5, 2.0})
                    R.run("volume.mixed_dilate" + dn + "/" + b.name + "/" + phi.name() + "/lambda" + fmt_param(lam),
                          [&] { return check_mixed_volume_dilate(b.body, phi, lam); }, who);
            }
        }

        for (const auto& p : pairs) {
            const auto& K = p.K->body;
            const auto& L = p.L->body;
            const std::string tag = dn + "/" + pair_name(p);
            const json who = bodies_json(p);
            R.run("volume.lp_pipeline" + tag + "/p2", [&] { return check_lp_volume_pipeline(K, L, 2.0); }, who);
            R.run("volume.lp_pipeline" + tag + "/p3.5", [&] { return check_lp_volume_pipeline(K, L, 3.5); }, who);
            R.run("volume.minkowski" + tag, [&] { return check_minkowski_volume(K, L); }, who);
            R.run("volume.lp_minkowski" + tag + "/p2", [&] { return check_lp_minkowski_volume(K, L, 2.0); }, who);
            R.run("volume.brunn_minkowski" + tag, [&] { return check_brunn_minkowski_volume(K, L, D); }, who);
            for (const auto& phi : c.phis) {
                const std::string tp = tag + "/" + phi.name();
                R.run("volume.orlicz_minkowski" + tp, [&] { return check_orlicz_minkowski_volume(K, L, phi); }, who);
                for (double e : c.combination_eps)
                    R.run("volume.orlicz_bm" + tp + "/eps" + fmt_param(e),
                          [&] { return check_orlicz_bm_volume(K, L, phi, e, D); }, who);
                if (n <= 3)
                    R.run("volume.first_variation" + tp,
                          [&] { return check_first_variation_volume(K, L, phi, c.eps, D, c.tol); }, who);
            }
        }
        // Equality branch of the volume-level Orlicz-BM inequality.
        const NamedBody& K0 = bodies.front();
        const ConvexBody twice = dilate(K0.body, 2.0);
        for (const auto& phi : c.phis)
            for (double e : c.combination_eps)
                R.run("volume.orlicz_bm_dilate" + dn + "/" + K0.name + "~2*" + K0.name + "/" + phi.name() + "/eps" +
                          fmt_param(e),
                      [&] {
                          return as_identity(check_orlicz_bm_volume(K0.body, twice, phi, e, D), c.tol);
                      },
                      {{"K", K0.name}, {"L", "2*" + K0.name}});

        // Support-level properties of the Orlicz sum.
        const NamedBody& A = bodies.back();
        const NamedBody& B = bodies[3 % bodies.size()];
        const json who = {{"K", A.name}, {"L", B.name}};
        for (const auto& phi : c.phis) {
            const std::string tp = dn + "/" + A.name + "~" + B.name + "/" + phi.name();
            R.run("orlicz.hausdorff" + tp, [&] { return check_hausdorff_continuity(A.body, B.body, phi, 512); }, who);
            R.run("orlicz.homogeneity" + tp, [&] { return check_sum_homogeneity(A.body, B.body, phi, 2.5, 512); }, who);
            for (int j = 1; j < n; ++j)
                R.run("orlicz.projection" + nj(n, j) + "/" + A.name + "~" + B.name + "/" + phi.name(),
                      [&] { return check_projection_lemma(A.body, B.body, phi, 0.5, j, c.projection_pairs, c.seed + j); },
                      who);
        }
    }
}

void quermass_suite(const SuiteConfig& c, Runner& R)
{
    for (const auto& phi : c.phis)
        for (int j = 1; j <= 3; ++j)
            R.run("quermass.limit_ratio/" + phi.name() + "/j" + std::to_string(j),
                  [&] { return check_limit_ratio(phi, j); });

    for (int n : c.dims) {
        const auto bodies = corpus_for(c, n);
        const auto pairs = corpus_pairs(bodies);
        const NamedBody& cube_b = bodies.front();
        std::vector<const NamedBody*> polytopes;
        for (const auto& b : bodies)
            if (b.body.is_polytope()) polytopes.push_back(&b);

        for (int j : js_for(c, n)) {
            const std::string tag = nj(n, j);
            const std::uint64_t seed = c.seed + 7919ULL * n + 104729ULL * j;
            const GrassmannSample S = make_sample(n, j, c.samples, seed);
            const GrassmannSample So = make_sample(n, j, c.samples_outer, seed + 1);
            const int outer_dirs = (j == n) ? volume_dirs(c, n) : c.sample_dirs;

            if (j < n) {
                for (double r : {1.0, 2.0})
                    R.run("quermass.ball_law" + tag + "/r" + fmt_param(r), [&] { return check_ball_law(r, S, c.tol); });
                for (const auto* b : polytopes)
                    R.run("quermass.homogeneity" + tag + "/" + b->name,
                          [&] { return check_homogeneity(b->body, 2.0, S, c.tol); }, {{"K", b->name}});
            } else {
                // Sampled G(n, n): random rotations of the ambient space.
                const GrassmannSample rot(n, n, 64, seed);
                for (const auto* b : polytopes)
                    R.run("quermass.full_dim_volume" + tag + "/" + b->name,
                          [&] { return check_full_dim_volume(b->body, rot, c.tol); }, {{"K", b->name}});
                for (const auto& p : pairs)
                    for (const auto& phi : c.phis)
                        R.run("quermass.degeneration" + tag + "/" + pair_name(p) + "/" + phi.name(),
                              [&] { return check_degeneration(p.K->body, p.L->body, phi, rot, c.tol); },
                              bodies_json(p));
            }

            for (const auto* b : polytopes) {
                const json who = {{"K", b->name}};
                for (const auto& phi : c.phis) {
                    R.run("quermass.equal_bodies" + tag + "/" + b->name + "/" + phi.name(),
                          [&] { return check_equal_bodies(b->body, phi, S, c.tol); }, who);
                    for (double lam : {0.5, 2.0})
                        R.run("quermass.lambda_scaling" + tag + "/" + b->name + "/" + phi.name() + "/lambda" +
                                  fmt_param(lam),
                              [&] { return check_lambda_scaling(b->body, phi, lam, S, c.tol); }, who);
                }
            }

            // Orlicz-Minkowski for Phi_phi on every polytope K against the whole corpus.
            std::vector<const ConvexBody*> all_bodies;
            for (const auto& L : bodies) all_bodies.push_back(&L.body);
            for (const auto* K : polytopes) {
                std::vector<CheckResult> batch;
                std::string batch_error;
                try {
                    batch = check_orlicz_minkowski_quermass(K->body, all_bodies, c.phis, S, c.tol);
                } catch (const std::exception& e) {
                    batch_error = e.what();
                }
                std::size_t k = 0;
                for (const auto& L : bodies) {
                    const Pair p{K, &L};
                    for (const auto& phi : c.phis) {
                        const std::size_t slot = k++;
                        R.run("quermass.orlicz_minkowski" + tag + "/" + pair_name(p) + "/" + phi.name(),
                              [&] {
                                  if (!batch_error.empty()) throw ComputationError(batch_error);
                                  return escalate(c, batch[slot], S, seed, [&](const GrassmannSample& s) {
                                      return check_orlicz_minkowski_quermass(K->body, L.body, phi, s, c.tol);
                                  });
                              },
                              bodies_json(p));
                    }
                }
                const ConvexBody twice = dilate(K->body, 2.0);
                for (const auto& phi : c.phis)
                    R.run("quermass.orlicz_minkowski_dilate" + tag + "/" + K->name + "~2*" + K->name + "/" + phi.name(),
                          [&] {
                              return as_identity(check_orlicz_minkowski_quermass(K->body, twice, phi, S, c.tol), c.tol);
                          },
                          {{"K", K->name}, {"L", "2*" + K->name}});
            }

            for (const auto& p : pairs)
                R.run("quermass.lp_pipeline" + tag + "/" + pair_name(p) + "/p2",
                      [&] { return check_lp_pipeline(p.K->body, p.L->body, 2.0, S, c.tol); }, bodies_json(p));

            // Decomposition identity and Orlicz-BM for Phi, plus the dilate equality branch.
            std::vector<std::pair<std::string, std::pair<const ConvexBody*, const ConvexBody*>>> dpairs;
            std::vector<ConvexBody> dilates;
            dilates.reserve(2);
            for (const auto& p : pairs) dpairs.push_back({pair_name(p), {&p.K->body, &p.L->body}});
            dilates.push_back(dilate(cube_b.body, 2.0));
            dpairs.push_back({cube_b.name + "~2*" + cube_b.name, {&cube_b.body, &dilates.back()}});
            const NamedBody& rnd = bodies.back();
            dilates.push_back(dilate(rnd.body, 0.5));
            dpairs.push_back({rnd.name + "~0.5*" + rnd.name, {&rnd.body, &dilates.back()}});
            for (std::size_t k = 0; k < dpairs.size(); ++k) {
                const bool equality = k + 2 >= dpairs.size();
                const auto& [name, kl] = dpairs[k];
                for (const auto& phi : c.phis)
                    for (double e : c.combination_eps) {
                        const std::string id = tag + "/" + name + "/" + phi.name() + "/eps" + fmt_param(e);
                        std::pair<CheckResult, CheckResult> res;
                        bool ok = true;
                        std::string err;
                        try {
                            res = check_decomposition_and_bm(*kl.first, *kl.second, phi, e, So, outer_dirs, c.tol);
                            std::size_t N = So.size();
                            for (int k = 1; k <= c.max_escalations && j < n &&
                                            (res.first.status == Status::Inconclusive ||
                                             res.second.status == Status::Inconclusive);
                                 ++k) {
                                N *= 10;
                                res = check_decomposition_and_bm(*kl.first, *kl.second, phi, e,
                                                                 GrassmannSample(n, j, N, seed + 1 + 0x5bd1e995ULL * k),
                                                                 outer_dirs, c.tol);
                                res.first.config["escalations"] = res.second.config["escalations"] = k;
                            }
                        } catch (const std::exception& ex) {
                            ok = false;
                            err = ex.what();
                        }
                        const json who = {{"pair", name}};
                        if (!ok) {
                            R.run("quermass.decomposition" + id, [&]() -> CheckResult { throw ComputationError(err); }, who);
                            R.run("quermass.orlicz_bm" + id, [&]() -> CheckResult { throw ComputationError(err); }, who);
                            continue;
                        }
                        R.emit("quermass.decomposition" + id, res.first, who);
                        if (equality) {
                            R.emit("quermass.orlicz_bm_dilate" + id, as_identity(res.second, c.tol), who);
                        } else {
                            R.emit("quermass.orlicz_bm" + id, res.second, who);
                        }
                    }
            }

            // Affine quermassintegral conjecture probe.
            for (const auto& b : bodies)
                R.run("quermass.lutwak" + tag + "/" + b.name, [&] {
                    return escalating(c, S, seed,
                                      [&](const GrassmannSample& s) { return check_lutwak_conjecture(b.body, s, c.tol); });
                },
                      {{"K", b.name}});

            // First variation of Phi on cube-type instances.
            if (j < n && n <= 3) {
                const NamedBody* L_smooth = nullptr;
                for (const auto& b : bodies)
                    if (b.name == "ball") L_smooth = &b;
                std::vector<Pair> fv = {{&cube_b, &cube_b}};
                if (L_smooth) fv.push_back({&cube_b, L_smooth});
                for (const auto& p : fv)
                    for (const auto& phi : c.phis)
                        R.run("quermass.first_variation" + tag + "/" + pair_name(p) + "/" + phi.name(),
                              [&] {
                                  return escalating(c, So, seed + 1, [&](const GrassmannSample& s) {
                                      return check_first_variation_quermass(p.K->body, p.L->body, phi, c.eps, s,
                                                                            c.sample_dirs, c.tol);
                                  });
                              },
                              bodies_json(p));
            }
        }

        // SL(n)-invariance with independent seeds.
        if (n == 3) {
            const NamedBody& L = bodies.back();
            for (int t = 0; t < 5; ++t) {
                const LinearMap T = random_special_linear(n, c.seed + 31ULL * t);
                for (int j = 1; j < n; ++j) {
                    const std::uint64_t sa = c.seed + 1000ULL * t + 10ULL * j + 1, sb = sa + 5;
                    const std::string tag = nj(n, j) + "/T" + std::to_string(t);
                    R.run("quermass.sl_invariance" + tag + "/" + cube_b.name,
                          [&] { return check_sl_invariance(cube_b.body, T, j, c.samples_sl, sa, sb, c.tol); },
                          {{"K", cube_b.name}});
                    R.run("quermass.sl_invariance_orlicz" + tag + "/" + cube_b.name + "~" + L.name + "/" +
                              c.phis.back().name(),
                          [&] {
                              return check_sl_invariance_orlicz(cube_b.body, L.body, c.phis.back(), T, j, c.samples_sl,
                                                                sa, sb, c.tol);
                          },
                          {{"K", cube_b.name}, {"L", L.name}});
                }
            }
        }
    }
}

} // namespace

std::string format_number(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

SuiteConfig config_from_json(const json& j, const std::string& source)
{
    if (!j.is_object()) throw ConfigError(source + ": config must be a JSON object");
    static const std::vector<std::string> known = {
        "suite", "n", "j", "samples", "samples_outer", "samples_sl", "dirs", "dirs_4d", "sample_dirs", "seed", "eps",
        "combination_eps", "phi", "solver_tuples", "projection_pairs", "max_escalations", "tolerances", "bodies"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw ConfigError(source + ": unknown field '" + it.key() + "'");

    SuiteConfig c;
    c.suite = field(j, "suite", c.suite, source);
    if (j.contains("n")) c.dims = scalar_or_list<int>(j["n"], source + ": field 'n'");
    if (j.contains("j")) c.js = scalar_or_list<int>(j["j"], source + ": field 'j'");
    c.samples = field(j, "samples", c.samples, source);
    c.samples_outer = field(j, "samples_outer", c.samples_outer, source);
    c.samples_sl = field(j, "samples_sl", c.samples_sl, source);
    c.dirs = field(j, "dirs", c.dirs, source);
    c.dirs_4d = field(j, "dirs_4d", c.dirs_4d, source);
    c.sample_dirs = field(j, "sample_dirs", c.sample_dirs, source);
    c.seed = field(j, "seed", c.seed, source);
    if (j.contains("eps")) c.eps = scalar_or_list<double>(j["eps"], source + ": field 'eps'");
    if (j.contains("combination_eps"))
        c.combination_eps = scalar_or_list<double>(j["combination_eps"], source + ": field 'combination_eps'");
    if (j.contains("phi")) {
        c.phis.clear();
        const json& p = j["phi"];
        if (p.is_array()) {
            for (std::size_t i = 0; i < p.size(); ++i)
                c.phis.push_back(phi_from_json(p[i], source + ": field 'phi[" + std::to_string(i) + "]'"));
        } else {
            c.phis.push_back(phi_from_json(p, source + ": field 'phi'"));
        }
    }
    c.solver_tuples = field(j, "solver_tuples", c.solver_tuples, source);
    c.projection_pairs = field(j, "projection_pairs", c.projection_pairs, source);
    c.max_escalations = field(j, "max_escalations", c.max_escalations, source);
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        const std::string where = source + ": field 'tolerances'";
        if (!t.is_object()) throw ConfigError(where + ": must be an object");
        c.tol.atom = field(t, "atom", c.tol.atom, where);
        c.tol.outer = field(t, "outer", c.tol.outer, where);
        c.tol.sigmas = field(t, "sigmas", c.tol.sigmas, where);
        c.tol.noise_cap = field(t, "noise_cap", c.tol.noise_cap, where);
        c.tol.candidate = field(t, "candidate", c.tol.candidate, where);
        c.tol.fv_volume = field(t, "fv_volume", c.tol.fv_volume, where);
        c.tol.fv_quermass = field(t, "fv_quermass", c.tol.fv_quermass, where);
    }
    if (j.contains("bodies")) {
        c.body_paths = scalar_or_list<std::string>(j["bodies"], source + ": field 'bodies'");
        const auto base = std::filesystem::path(source).parent_path();
        for (auto& p : c.body_paths)
            if (std::filesystem::path(p).is_relative() && !base.empty()) p = (base / p).string();
    }
    return c;
}

SuiteConfig load_config(const std::string& path) { return config_from_json(read_json_file(path), path); }

json config_to_json(const SuiteConfig& c)
{
    json phis = json::array();
    for (const auto& p : c.phis) phis.push_back(phi_to_json(p));
    return {{"suite", c.suite},
            {"n", c.dims},
            {"j", c.js},
            {"samples", c.samples},
            {"samples_outer", c.samples_outer},
            {"samples_sl", c.samples_sl},
            {"dirs", c.dirs},
            {"dirs_4d", c.dirs_4d},
            {"sample_dirs", c.sample_dirs},
            {"seed", c.seed},
            {"eps", c.eps},
            {"combination_eps", c.combination_eps},
            {"phi", phis},
            {"solver_tuples", c.solver_tuples},
            {"projection_pairs", c.projection_pairs},
            {"max_escalations", c.max_escalations},
            {"tolerances",
             {{"atom", c.tol.atom},
              {"outer", c.tol.outer},
              {"sigmas", c.tol.sigmas},
              {"noise_cap", c.tol.noise_cap},
              {"candidate", c.tol.candidate},
              {"fv_volume", c.tol.fv_volume},
              {"fv_quermass", c.tol.fv_quermass}}},
            {"bodies", c.body_paths}};
}

void validate(const SuiteConfig& c)
{
    if (c.suite != "all" && c.suite != "orlicz" && c.suite != "quermass")
        throw ConfigError("unknown suite '" + c.suite + "' (expected all, orlicz or quermass)");
    if (c.dims.empty()) throw ConfigError("field 'n': no dimensions");
    for (int n : c.dims)
        if (n < 2 || n > 4) throw ConfigError("field 'n': dimension " + std::to_string(n) + " outside 2..4");
    for (int j : c.js) {
        if (j < 1) throw ConfigError("field 'j': j = " + std::to_string(j) + " must be at least 1");
        for (int n : c.dims)
            if (j > n)
                throw ConfigError("field 'j': j = " + std::to_string(j) + " exceeds n = " + std::to_string(n));
    }
    if (c.samples == 0 || c.samples_outer == 0 || c.samples_sl == 0 || c.solver_tuples == 0 || c.projection_pairs == 0)
        throw ConfigError("sample counts must be positive");
    if (c.max_escalations < 0) throw ConfigError("field 'max_escalations': must be non-negative");
    if (c.dirs <= 0 || c.dirs_4d <= 0 || c.sample_dirs < 0) throw ConfigError("direction counts must be positive");
    if (c.eps.empty()) throw ConfigError("field 'eps': empty schedule");
    for (std::size_t k = 0; k < c.eps.size(); ++k)
        if (!(c.eps[k] > 0.0) || (k > 0 && !(c.eps[k] < c.eps[k - 1])))
            throw ConfigError("field 'eps': must be positive and strictly decreasing");
    for (double e : c.combination_eps)
        if (!(e > 0.0)) throw ConfigError("field 'combination_eps': must be positive");
    if (c.phis.empty()) throw ConfigError("field 'phi': no functions");
    if (!(c.tol.sigmas > 0.0) || !(c.tol.noise_cap > 0.0) || c.tol.atom < 0.0)
        throw ConfigError("field 'tolerances': invalid values");
    for (const auto& p : c.body_paths) load_body(p);
}

SuiteReport run_suite(const SuiteConfig& c, const std::function<void(const CheckResult&)>& progress)
{
    validate(c);
    Runner R(progress);
    if (c.suite == "all" || c.suite == "orlicz") orlicz_suite(c, R);
    if (c.suite == "all" || c.suite == "quermass") quermass_suite(c, R);

    SuiteReport rep;
    rep.checks = R.take();
    std::stable_sort(rep.checks.begin(), rep.checks.end(),
                     [](const CheckResult& a, const CheckResult& b) { return a.check_id < b.check_id; });
    json checks = json::array();
    for (const auto& r : rep.checks) {
        switch (r.status) {
        case Status::Pass: ++rep.passed; break;
        case Status::Fail: ++rep.failed; break;
        default: ++rep.inconclusive;
        }
        if (r.candidate) ++rep.candidates;
        checks.push_back(to_json(r));
    }
    rep.json = {{"schema", kReportSchema},
                {"config", config_to_json(c)},
                {"summary",
                 {{"total", rep.checks.size()},
                  {"pass", rep.passed},
                  {"fail", rep.failed},
                  {"inconclusive", rep.inconclusive},
                  {"candidates", rep.candidates}}},
                {"checks", std::move(checks)}};
    return rep;
}

std::string report_csv(const std::vector<CheckResult>& checks)
{
    std::ostringstream os;
    os << "check_id,kind,status,lhs,rhs,margin,stderr,abs_tol,candidate\n";
    for (const auto& r : checks)
        os << '"' << r.check_id << "\"," << to_string(r.kind) << ',' << to_string(r.status) << ','
           << format_number(r.lhs) << ',' << format_number(r.rhs) << ',' << format_number(r.margin) << ','
           << format_number(r.std_error) << ',' << format_number(r.abs_tol) << ',' << (r.candidate ? 1 : 0) << '\n';
    return os.str();
}

} // namespace quermass::harness
