// csrg: construct cyclotomic connection sets, verify strong regularity and
// difference-set properties exactly, and evaluate (relative) Gauss sums as
// cyclotomic integers.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "csrg/json_io.hpp"
#include "csrg/selftest.hpp"

using namespace csrg;

namespace {

struct GlobalOpts {
    std::string format = "json";
    unsigned threads = 0;
    std::string cache_dir;
    u64 max_q = kVerifyLimit;
    bool unsafe_large = false;
    bool timings = false;

    unsigned effective_threads() const {
        return threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    }
    u64 effective_max_q() const {
        if (max_q <= kVerifyLimit) return max_q;
        if (!unsafe_large) fail(err::too_large, "size cap above 2^24 needs --unsafe-large");
        if (max_q > (u64(1) << 32)) fail(err::too_large, "size cap above 2^32 is not supported");
        return max_q;
    }
};

std::vector<u64> parse_list(const std::string& s) {
    std::vector<u64> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoull(item));
    }
    return out;
}

std::vector<std::pair<u64, unsigned>> parse_primes(const std::string& s) {
    std::vector<std::pair<u64, unsigned>> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto caret = item.find('^');
        if (caret == std::string::npos)
            out.push_back({std::stoull(item), 1});
        else
            out.push_back({std::stoull(item.substr(0, caret)),
                           unsigned(std::stoul(item.substr(caret + 1)))});
    }
    return out;
}

void emit_spec(const ConnectionSpec& spec, const GlobalOpts& g) {
    if (g.format == "text") {
        std::cout << "p=" << spec.p << " f=" << spec.f << " k=" << spec.k << " I={";
        for (size_t i = 0; i < spec.I.size(); ++i) std::cout << (i ? "," : "") << spec.I[i];
        std::cout << "} source=" << spec.source << (spec.symbolic ? " [symbolic]" : "") << "\n";
        return;
    }
    std::cout << spec_to_json(spec).dump(2) << "\n";
}

int emit_verdict(const ConnectionSpec& spec, const Verdict& V, const GlobalOpts& g) {
    if (g.format == "csv") {
        std::cout << profile_to_csv(V.profile);
    } else if (g.format == "text") {
        std::cout << verdict_kind_name(V.kind);
        if (V.srg)
            std::cout << " (" << V.srg->v << "," << V.srg->degree << "," << V.srg->lambda << ","
                      << V.srg->mu << ")";
        if (!V.reason.empty()) std::cout << ": " << V.reason;
        std::cout << " [" << V.method << "]\n";
    } else {
        json out = verdict_to_json(V, g.timings);
        out["spec"] = spec_to_json(spec);
        std::cout << out.dump(2) << "\n";
    }
    return V.kind == VerdictKind::None ? 1 : 0;
}

ConnectionSpec spec_from_cli(u64 p, u64 f, u64 k, const std::string& classes,
                             const std::string& spec_file) {
    if (!spec_file.empty()) {
        std::ifstream is(spec_file);
        if (!is) fail(err::io_error, "cannot open " + spec_file);
        json j = json::parse(is);
        return spec_from_json(j);
    }
    return make_spec(p, f, k, parse_list(classes));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact cyclotomic srg / difference set toolkit"};
    app.require_subcommand(1);
    GlobalOpts g;
    if (const char* env = std::getenv("CSRG_CACHE_DIR")) g.cache_dir = env;
    app.add_option("--format", g.format, "output format: json, text, csv")
        ->check(CLI::IsMember({"json", "text", "csv"}));
    app.add_option("--threads", g.threads, "worker threads (0 = hardware)");
    app.add_option("--cache-dir", g.cache_dir, "trace-count cache directory");
    app.add_option("--max-q", g.max_q, "field size cap for verification paths");
    app.add_flag("--unsafe-large", g.unsafe_large, "allow caps above 2^24");
    app.add_flag("--timings", g.timings, "include elapsed_ms in JSON output");

    // ---- construct ----
    auto* con = app.add_subcommand("construct", "emit a connection-set spec as JSON");
    con->require_subcommand(1);
    u64 c_no = 1, c_p = 0, c_p1 = 0, c_p2 = 0, c_m = 1, c_n = 1, c_s = 1, c_e = 0, c_mult = 0;
    unsigned c_e1 = 1, c_lift = 0;
    u64 c_liftp1 = 0;
    std::string c_variant = "i", c_H, c_hextra = "p1", c_primes;

    auto add_lift = [&](CLI::App* cmd) {
        cmd->add_option("--lift", c_lift, "apply the index-set lift n times");
        cmd->add_option("--lift-p1", c_liftp1, "prime used by --lift (default: the odd prime of k)");
    };
    auto* t1 = con->add_subcommand("table1", "sporadic parameter rows 1..11");
    t1->add_option("--no", c_no, "row number")->required();
    add_lift(t1);
    auto* t13 = con->add_subcommand("thm13", "prime-power cyclotomic srg families");
    t13->add_option("--variant", c_variant, "i, ii or iii")->required();
    t13->add_option("--p", c_p)->required();
    t13->add_option("--p1", c_p1)->required();
    t13->add_option("--p2", c_p2);
    t13->add_option("--m", c_m);
    t13->add_option("--n", c_n);
    add_lift(t13);
    auto* t14 = con->add_subcommand("thm14", "skew-Hadamard / Paley-type families");
    t14->add_option("--variant", c_variant, "i or ii")->required();
    t14->add_option("--p", c_p)->required();
    t14->add_option("--p1", c_p1)->required();
    t14->add_option("--m", c_m);
    t14->add_option("--s", c_s);
    t14->add_option("--H", c_H, "comma-separated index set");
    add_lift(t14);
    auto* srgf = con->add_subcommand("srg-family", "recursive srg family over odd primes");
    srgf->add_option("--p", c_p)->required();
    srgf->add_option("--primes", c_primes, "e.g. 3^2,5")->required();
    srgf->add_option("--e", c_e, "index of <p>")->required();
    add_lift(srgf);
    auto* shd = con->add_subcommand("shd", "skew-Hadamard family k = 2 p1^e1");
    shd->add_option("--p", c_p)->required();
    shd->add_option("--p1", c_p1)->required();
    shd->add_option("--e1", c_e1);
    shd->add_option("--e", c_e, "index of <p> mod 2 p1 (default: computed)");
    shd->add_option("--h-extra", c_hextra, "extra residue of H: p1 or 0")
        ->check(CLI::IsMember({"p1", "0"}));
    shd->add_option("--h-mult", c_mult, "multiplier for Q u 2Q (default: smallest verified)");
    shd->add_option("--H", c_H, "explicit H, overrides the Q u 2Q construction");
    add_lift(shd);

    // ---- verify ----
    u64 v_p = 0, v_f = 0, v_k = 0;
    std::string v_classes, v_spec_file;
    bool v_cross = false;
    auto add_verify_opts = [&](CLI::App* cmd) {
        cmd->add_option("--p", v_p);
        cmd->add_option("--f", v_f);
        cmd->add_option("--k", v_k);
        cmd->add_option("--classes", v_classes, "comma-separated residues");
        cmd->add_option("--spec", v_spec_file, "spec JSON file");
        cmd->add_flag("--cross-check", v_cross, "also derive the profile through Gauss sums");
    };
    auto* vsrg = app.add_subcommand("verify-srg", "decide strong regularity");
    add_verify_opts(vsrg);
    auto* vdds = app.add_subcommand("verify-dds", "decide the skew-Hadamard condition");
    add_verify_opts(vdds);
    auto* vpds = app.add_subcommand("verify-pds", "decide the Paley-type condition");
    add_verify_opts(vpds);

    // ---- gauss / relgauss ----
    u64 g_p = 0, g_f = 1, g_k = 2, g_u = 1;
    auto* gau = app.add_subcommand("gauss", "exact Gauss sum G_f(chi^u)");
    gau->add_option("--p", g_p)->required();
    gau->add_option("--f", g_f)->required();
    gau->add_option("--k", g_k)->required();
    gau->add_option("--u", g_u);
    u64 r_p = 0, r_k = 0, r_p1 = 0, r_u = 1;
    auto* rel = app.add_subcommand("relgauss", "relative Gauss sum theta(chi', chi)");
    rel->add_option("--p", r_p)->required();
    rel->add_option("--k", r_k)->required();
    rel->add_option("--p1", r_p1)->required();
    rel->add_option("--u", r_u);

    // ---- selftest ----
    std::string st_level = "quick";
    auto* st = app.add_subcommand("selftest", "run the acceptance suite");
    st->add_option("--level", st_level, "quick or full")->check(CLI::IsMember({"quick", "full"}));

    // global options may appear after the subcommand
    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (auto* nested : sub->get_subcommands({})) nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        unsigned threads = g.effective_threads();
        u64 cap = g.effective_max_q();

        if (con->parsed()) {
            ConnectionSpec spec;
            if (t1->parsed()) {
                spec = build_table1(unsigned(c_no));
            } else if (t13->parsed()) {
                spec = build_thm13(c_variant, c_p, c_p1, c_p2, c_m, c_n);
            } else if (t14->parsed()) {
                std::vector<u64> H;
                if (!c_H.empty()) H = parse_list(c_H);
                spec = build_thm14(c_variant, c_p, c_p1, c_m, c_s, c_H.empty() ? nullptr : &H);
            } else if (srgf->parsed()) {
                spec = build_srg_family(c_p, parse_primes(c_primes), c_e);
            } else if (shd->parsed()) {
                u64 e = c_e ? c_e : subgroup_index(c_p, 2 * c_p1);
                u64 extra = c_hextra == "0" ? 0 : c_p1;
                std::vector<u64> H;
                if (!c_H.empty()) {
                    H = parse_list(c_H);
                } else if (c_mult) {
                    for (u64 i : q_union_2q(c_p1, extra))
                        H.push_back(i == extra ? extra : mulmod(c_mult, i, 2 * c_p1));
                    std::sort(H.begin(), H.end());
                } else if (fits_numeric(c_p, euler_phi_u64(2 * c_p1) / e)) {
                    VerifyOptions vo;
                    vo.threads = threads;
                    vo.max_q = cap;
                    vo.cache_dir = g.cache_dir;
                    H = find_verified_shd_H(c_p, c_p1, e, extra, vo).first;
                } else {
                    H = q_union_2q(c_p1, extra);
                }
                spec = build_shd_family(c_p, c_p1, c_e1, e, H);
            }
            for (unsigned i = 0; i < c_lift; ++i) {
                u64 p1 = c_liftp1;
                if (!p1) {
                    auto odd = distinct_prime_factors(spec.k);
                    odd.erase(std::remove(odd.begin(), odd.end(), 2ull), odd.end());
                    if (odd.size() != 1)
                        fail(err::bad_parameters, "--lift-p1 required: k has several odd primes");
                    p1 = odd[0];
                }
                spec = lift_index_set(spec, p1, valuation(spec.k, p1));
            }
            emit_spec(spec, g);
            return 0;
        }

        if (vsrg->parsed() || vdds->parsed() || vpds->parsed()) {
            auto spec = spec_from_cli(v_p, v_f, v_k, v_classes, v_spec_file);
            VerifyOptions vo;
            vo.threads = threads;
            vo.max_q = cap;
            vo.cache_dir = g.cache_dir;
            vo.cross_check = v_cross;
            Verdict V;
            if (vsrg->parsed())
                V = verify_srg(spec, vo);
            else if (vdds->parsed())
                V = verify_skew_hadamard(spec, vo);
            else
                V = verify_paley_pds(spec, vo);
            return emit_verdict(spec, V, g);
        }

        if (gau->parsed()) {
            auto F = get_field(g_p, unsigned(g_f), kBuildLimit);
            if (F->q > cap) fail(err::too_large, "q = " + std::to_string(F->q));
            TableOptions topt{threads, cap, g.cache_dir};
            auto T = get_table(*F, g_k, topt);
            auto G = gauss_sum_exact(*T, g_u);
            CycInt shown = canonical_form(G.value);
            if (g.format == "text") {
                std::cout << display_text(shown) << " (conductor " << shown.conductor() << ")\n";
            } else {
                json out{{"schema", kSchema}, {"p", g_p},         {"f", g_f},
                         {"k", g_k},         {"u", G.u},          {"cyclotomic", cyc_to_json(shown)},
                         {"text", display_text(shown)}};
                std::cout << out.dump(2) << "\n";
            }
            return 0;
        }

        if (rel->parsed()) {
            auto R = relative_gauss(r_p, r_k, r_p1, r_u, threads, cap, g.cache_dir);
            CycInt shown = canonical_form(R.theta);
            std::string cls = theta_kind_name(R.classification);
            std::string pred = R.predicted_epsilon == 0
                                   ? "n/a"
                                   : (R.predicted_epsilon > 0 ? "+1" : "-1");
            bool match = (R.predicted_epsilon == 1 && R.classification == ThetaKind::PlusOne) ||
                         (R.predicted_epsilon == -1 && R.classification == ThetaKind::MinusOne);
            if (g.format == "text") {
                std::cout << "theta = " << display_text(shown) << " (" << cls << "), predicted "
                          << pred << (R.predicted_epsilon ? (match ? ", match" : ", MISMATCH") : "")
                          << "\n";
            } else {
                json out{{"schema", kSchema},
                         {"p", r_p},
                         {"k", r_k},
                         {"p1", r_p1},
                         {"u", R.u},
                         {"f", R.f},
                         {"f_prime", R.fprime},
                         {"theta", cyc_to_json(shown)},
                         {"classification", cls},
                         {"predicted", pred}};
                if (R.root) out["root_of_unity"] = json{{"order", R.root->order}, {"exponent", R.root->exponent}};
                if (R.predicted_epsilon) out["match"] = match;
                std::cout << out.dump(2) << "\n";
            }
            return 0;
        }

        if (st->parsed()) {
            auto level = st_level == "full" ? SelftestLevel::Full : SelftestLevel::Quick;
            auto results = run_acceptance(level, threads, &std::cout);
            int failures = 0;
            for (auto& r : results) failures += r.pass ? 0 : 1;
            std::cout << (failures == 0 ? "selftest passed" : "selftest FAILED") << " ("
                      << results.size() - failures << "/" << results.size() << ")\n";
            return failures == 0 ? 0 : 1;
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == err::too_large ? 65 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
