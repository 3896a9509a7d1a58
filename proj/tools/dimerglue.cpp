// Command-line front end; subcommands per module, JSON/CSV out.
#include <omp.h>

#include <algorithm>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dimerglue/cft.hpp"
#include "dimerglue/corpus.hpp"
#include "dimerglue/json_io.hpp"
#include "dimerglue/torus.hpp"

using namespace dimerglue;
using njson = nlohmann::ordered_json;

namespace {

int failures = 0;

std::string fmt_complex(dcomplex z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
    return buf;
}

int run_partition(const std::string& input, const std::string& mode,
                  const std::string& format) {
    Graph g = graph_from_json(read_file(input));
    MultiPoly p;
    if (mode == "dimer")
        p = matching_polynomial(g);
    else if (mode == "even")
        p = even_polynomial(g);
    else if (mode == "ising")
        p = ising_partition_direct(g);
    else
        throw ValidationError("mode must be even, dimer or ising");
    if (format == "json") {
        njson j;
        j["mode"] = mode;
        j["polynomial"] = p.str(&g.var_names);
        j["terms"] = p.term_count();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << p.str(&g.var_names) << "\n";
    }
    return 0;
}

int run_signed(const std::string& input, const std::string& format) {
    EmbeddedGraph eg = embedding_from_json(read_file(input));
    njson out;
    out["genus"] = eg.genus;
    njson forms = njson::array();
    for (auto& q : QuadraticForm::all(eg.genus)) {
        njson jf;
        jf["qa"] = q.qa;
        jf["qb"] = q.qb;
        jf["arf"] = arf_invariant(q);
        jf["polynomial"] = signed_even_polynomial(eg, q).str(&eg.graph.var_names);
        forms.push_back(jf);
    }
    out["forms"] = forms;
    auto rec = arf_reconstruction_check(eg);
    out["arf_reconstruction"] = rec.ok;
    if (!rec.note.empty()) out["note"] = rec.note;
    if (!rec.ok) failures++;
    if (format == "text") {
        for (auto& jf : out["forms"])
            std::cout << jf["qa"].dump() << jf["qb"].dump() << " "
                      << jf["polynomial"].get<std::string>() << "\n";
        std::cout << "arf_reconstruction: " << (rec.ok ? "pass" : "FAIL") << "\n";
    } else {
        std::cout << out.dump(2) << "\n";
    }
    return 0;
}

int run_pfaffian(const std::string& input, const std::string& format) {
    EmbeddedGraph eg = embedding_from_json(read_file(input));
    auto table = arf_pfaffian_formula(eg);
    njson out;
    out["ok"] = table.ok;
    if (!table.note.empty()) out["note"] = table.note;
    njson rows = njson::array();
    for (auto& r : table.rows) {
        njson jr;
        jr["S"] = r.bridges;
        jr["coef"] = r.coefficient.str();
        jr["pfaffian"] = r.pfaffian.str(&eg.graph.var_names);
        rows.push_back(jr);
    }
    out["rows"] = rows;
    if (!table.ok) failures++;
    if (format == "text") {
        for (auto& jr : out["rows"])
            std::cout << jr["S"].dump() << " coef=" << jr["coef"].get<std::string>()
                      << " pf=" << jr["pfaffian"].get<std::string>() << "\n";
        std::cout << (table.ok ? "pass" : "FAIL") << "\n";
    } else {
        std::cout << out.dump(2) << "\n";
    }
    return 0;
}

int run_glue_one(const std::string& input, const std::string& mode, bool signed_mode,
                 const std::string& format);

// A directory input sweeps every .json inside in filename order.
int run_glue(const std::string& input, const std::string& mode, bool signed_mode,
             const std::string& format) {
    namespace fs = std::filesystem;
    if (fs::is_directory(input)) {
        std::vector<std::string> files;
        for (auto& entry : fs::directory_iterator(input))
            if (entry.path().extension() == ".json") files.push_back(entry.path().string());
        std::sort(files.begin(), files.end());
        for (auto& f : files) run_glue_one(f, mode, signed_mode, format);
        return 0;
    }
    return run_glue_one(input, mode, signed_mode, format);
}

int run_glue_one(const std::string& input, const std::string& mode, bool signed_mode,
                 const std::string& format) {
    EmbeddedCut ec = cut_from_json(read_file(input));
    const auto& names = ec.eg.graph.var_names;
    njson reports = njson::array();
    double t0 = omp_get_wtime();
    auto report = [&](const std::string& theorem, const std::string& detail,
                      const MultiPoly& lhs, const MultiPoly& rhs) {
        njson r;
        r["instance"] = input;
        r["theorem"] = theorem;
        if (!detail.empty()) r["case"] = detail;
        r["lhs"] = lhs.str(&names);
        r["rhs"] = rhs.str(&names);
        r["equal"] = (lhs == rhs);
        r["seconds"] = omp_get_wtime() - t0;
        reports.push_back(r);
        if (lhs != rhs) failures++;
        t0 = omp_get_wtime();
    };
    auto ising_sides = [&](const QuadraticForm* q) {
        auto [p1, p2] = build_target(ec);
        if (!q)
            return pair(partition_as_exterior(p1, GlueMode::Ising),
                        partition_as_exterior(p2, GlueMode::Ising));
        QuadraticForm q1 = induced_form(*q, 1), q2 = induced_form(*q, 2);
        return pair(partition_as_exterior(p1, GlueMode::Ising, &q1),
                    partition_as_exterior(p2, GlueMode::Ising, &q2));
    };
    auto dimer_sides = [&](const Orientation* d) {
        auto [p1, p2] = build_core(ec);
        if (!d)
            return pair(partition_as_exterior(p1, GlueMode::Dimer),
                        partition_as_exterior(p2, GlueMode::Dimer));
        Orientation o1 = piece_orientation(p1, *d, core_orientation_bits(ec.k(), 1));
        Orientation o2 = piece_orientation(p2, *d, core_orientation_bits(ec.k(), 2));
        return pair(partition_as_exterior(p1, GlueMode::Dimer, nullptr, &o1),
                    partition_as_exterior(p2, GlueMode::Dimer, nullptr, &o2));
    };
    if (mode == "ising" && !signed_mode) {
        report("unsigned_ising_gluing", "", even_polynomial(ec.eg.graph),
               ising_sides(nullptr));
    } else if (mode == "ising") {
        auto forms = QuadraticForm::all(2);
        std::vector<MultiPoly> lhss(forms.size()), rhss(forms.size());
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < (int)forms.size(); i++) {
            lhss[i] = signed_even_polynomial(ec.eg, forms[i]);
            rhss[i] = ising_sides(&forms[i]);
        }
        for (size_t i = 0; i < forms.size(); i++)
            report("signed_ising_gluing", "form " + std::to_string(i), lhss[i], rhss[i]);
    } else if (mode == "dimer" && !signed_mode) {
        report("unsigned_dimer_gluing", "", matching_polynomial(ec.eg.graph),
               dimer_sides(nullptr));
    } else {
        Orientation d;
        d.forward.assign(ec.eg.graph.edge_count(), true);
        report("signed_dimer_gluing", "reference orientation",
               signed_dimer_polynomial(ec.eg.graph, d), dimer_sides(&d));
        auto d0 = kasteleyn_orientation(ec.eg);
        if (d0)
            report("signed_dimer_gluing", "crossing-law orientation",
                   signed_dimer_polynomial(ec.eg.graph, *d0), dimer_sides(&*d0));
    }
    if (format == "text") {
        for (auto& r : reports)
            std::cout << r["theorem"].get<std::string>() << " "
                      << (r.contains("case") ? r["case"].get<std::string>() : "")
                      << ": " << (r["equal"].get<bool>() ? "equal" : "MISMATCH")
                      << "\n";
    } else {
        std::cout << reports.dump(2) << "\n";
    }
    return 0;
}

int run_critical_verify(int n, int m, const std::string& tau_s, uint64_t seed,
                        const std::string& format) {
    dcomplex tau = parse_tau(tau_s);
    RhomboidTorus rt = random_isoradial(n, m, tau, seed);
    rt.validate();
    auto rep = verify_trace(rt);
    njson out;
    out["n"] = n;
    out["m"] = m;
    out["tau"] = tau_s;
    out["seed"] = seed;
    out["roots"] = rep.root_report.roots.size();
    out["degree_drop"] = rep.root_report.degree_drop;
    out["max_root_residual"] = rep.root_report.max_residual;
    for (int s = 0; s < 2; s++) {
        std::string key = s == 0 ? "spin_plus" : "spin_minus";
        out[key]["det_full"] = fmt_complex(rep.det_full[s]);
        out[key]["trace_product"] = fmt_complex(rep.trace[s]);
        out[key]["closed_form"] = fmt_complex(rep.closed[s]);
        out[key]["pfaffian"] = fmt_complex(rep.pfaffian[s]);
    }
    out["literal_det_eq_trace_sq"] = rep.literal_match;
    out["ratio_identity_rel"] = rep.ratio_rel;
    out["closed_form_rel"] = rep.closed_rel;
    bool ok = rep.ratio_rel < 1e-8 && rep.closed_rel < 1e-8 &&
              rep.root_report.max_residual < 1e-10;
    out["pass"] = ok;
    if (!ok) failures++;
    std::cout << (format == "text" ? out.dump() : out.dump(2)) << "\n";
    return 0;
}

int run_critical_limit(const std::string& tau_s, int levels, int spin,
                       const std::string& format) {
    dcomplex tau = parse_tau(tau_s);
    RhomboidTorus rt;
    rt.tau = tau;
    rt.a = {0.25, 0.25, 0.25, 0.25};
    rt.b = {tau / 4.0, tau / 4.0, tau / 4.0, tau / 4.0};
    auto rows = limit_series(rt, levels, SpinChoice{spin});
    if (format == "json") {
        njson arr = njson::array();
        for (auto& r : rows) {
            njson j;
            j["level"] = r.level;
            j["n"] = r.n;
            j["m"] = r.m;
            j["regularized"] = fmt_complex(r.regularized);
            j["target"] = fmt_complex(r.target);
            j["abs_error"] = r.abs_error;
            j["unregularized_magnitude"] = r.unregularized_magnitude;
            arr.push_back(j);
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        std::printf("level,n,m,regularized,target,abs_error,unregularized_magnitude\n");
        for (auto& r : rows)
            std::printf("%d,%d,%d,%.12g,%.12g,%.6e,%.6e\n", r.level, r.n, r.m,
                        r.regularized.real(), r.target.real(), r.abs_error,
                        r.unregularized_magnitude);
    }
    return 0;
}

int run_cft(const std::string& which, double qre, double qim, int N,
            const std::string& format) {
    cftc q(qre, qim);
    Truncated t;
    if (which == "eta")
        t = eta_factor(q, N);
    else if (which == "z_ns_r")
        t = fermionic_partition(q, Sector::NS, Sector::R, 2, N);
    else if (which == "z_ns_ns")
        t = fermionic_partition(q, Sector::NS, Sector::NS, 2, N);
    else if (which == "z_r_ns")
        t = fermionic_partition(q, Sector::R, Sector::NS, 2, N);
    else if (which == "z_r_r")
        t = fermionic_partition(q, Sector::R, Sector::R, 2, N);
    else if (which == "lattice0")
        t = lattice_chiral(q, 0.0, N);
    else if (which == "lattice_half")
        t = lattice_chiral(q, 0.5, N);
    else if (which == "triple") {
        auto r = triple_product_check(q, N);
        njson j;
        j["lhs"] = fmt_complex(r.lhs);
        j["rhs"] = fmt_complex(r.rhs);
        j["residual"] = r.residual;
        j["ok"] = r.ok;
        if (!r.ok) failures++;
        std::cout << j.dump(2) << "\n";
        return 0;
    } else
        throw ValidationError("unknown cft target: " + which);
    njson j;
    j["value"] = fmt_complex(dcomplex(t.value.real(), t.value.imag()));
    j["tail_bound"] = t.tail_bound;
    std::cout << (format == "text" ? j.dump() : j.dump(2)) << "\n";
    return 0;
}

int run_gen_corpus(const std::string& outdir) {
    int count = 0;
    for (const auto& ci : glue_corpus()) {
        write_file(outdir + "/" + ci.name + ".json", cut_to_json(ci.ec));
        count++;
    }
    std::cout << "wrote " << count << " cut fixtures to " << outdir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dimer/Ising gluing and critical torus verification"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json";
    int jobs = 0;
    app.add_option("--format", format)->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--jobs", jobs, "OpenMP thread count (0 = default)");

    std::string input, mode = "even", which = "eta", tau = "i", outdir = "fixtures";
    int n = 2, m = 2, levels = 3, spin = 1, N = 200;
    double qre = 0, qim = 0;
    uint64_t seed = 1;
    bool signed_mode = false;

    auto* partition = app.add_subcommand("partition", "partition polynomial of a graph");
    partition->add_option("--input", input)->required();
    partition->add_option("--mode", mode);

    auto* signedc = app.add_subcommand("signed", "signed even polynomials and Arf data");
    signedc->add_option("--input", input)->required();

    auto* pfaffian = app.add_subcommand("pfaffian", "Arf-invariant Pfaffian table");
    pfaffian->add_option("--input", input)->required();

    auto* glue = app.add_subcommand("glue", "gluing theorem verification");
    auto* glue_verify = glue->add_subcommand("verify");
    glue_verify->add_option("--mode", mode)->check(CLI::IsMember({"ising", "dimer"}));
    glue_verify->add_flag("--signed", signed_mode);
    glue_verify->add_option("--input", input)->required();

    auto* critical = app.add_subcommand("critical", "critical torus checks");
    auto* cverify = critical->add_subcommand("verify");
    cverify->add_option("--n", n);
    cverify->add_option("--m", m);
    cverify->add_option("--tau", tau);
    cverify->add_option("--seed", seed)->required();
    auto* climit = critical->add_subcommand("limit");
    climit->add_option("--tau", tau);
    climit->add_option("--levels", levels);
    climit->add_option("--spin", spin)->check(CLI::IsMember({1, -1}));

    auto* cft = app.add_subcommand("cft", "closed-form reference values");
    auto* ceval = cft->add_subcommand("eval");
    ceval->add_option("--which", which);
    ceval->add_option("--q-re", qre);
    ceval->add_option("--q-im", qim);
    ceval->add_option("--N", N);

    auto* gen = app.add_subcommand("gen-corpus", "write the fixture corpus");
    gen->add_option("--out", outdir);

    try {
        app.parse(argc, argv);
        if (jobs > 0) omp_set_num_threads(jobs);
        if (*partition) return run_partition(input, mode, format);
        if (*signedc) return run_signed(input, format);
        if (*pfaffian) return run_pfaffian(input, format);
        if (*glue_verify) {
            run_glue(input, mode, signed_mode, format);
            return failures ? 1 : 0;
        }
        if (*glue) throw ValidationError("use: glue verify ...");
        if (*cverify) {
            run_critical_verify(n, m, tau, seed, format);
            return failures ? 1 : 0;
        }
        if (*climit) return run_critical_limit(tau, levels, spin, format);
        if (*critical) throw ValidationError("use: critical verify|limit ...");
        if (*ceval) {
            run_cft(which, qre, qim, N, format);
            return failures ? 1 : 0;
        }
        if (*cft) throw ValidationError("use: cft eval ...");
        if (*gen) return run_gen_corpus(outdir);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return failures ? 1 : 0;
}
