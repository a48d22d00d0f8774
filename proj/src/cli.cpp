#include "factorlab/cli.hpp"

#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "factorlab/abelian.hpp"
#include "factorlab/factor_core.hpp"
#include "factorlab/hurwitz.hpp"
#include "factorlab/matorder.hpp"
#include "factorlab/zerosum.hpp"

namespace factorlab::cli {

namespace {

using Json = nlohmann::ordered_json;
using abelian::FiniteAbelianGroup;
using zerosum::ZsSequence;

constexpr int kSchemaVersion = 1;

std::string resolve_cache_dir(const std::string& flag_value, bool flag_given) {
    if (flag_given) return flag_value;
    if (const char* env = std::getenv("FACTORLAB_CACHE")) return env;
    return ".factorlab-cache";
}

Json sequence_to_json(const ZsSequence& s) {
    Json out = Json::array();
    for (const auto& [e, m] : s.multiplicities()) out.push_back(Json::array({e.to_literal(), m}));
    return out;
}

Json lengths_to_json(const std::set<std::uint64_t>& ls) {
    Json out = Json::array();
    for (auto l : ls) out.push_back(l);
    return out;
}

Json matrix_to_json(const matorder::IntMatrix2& m) {
    return Json::array({Json::array({m.a.str(), m.b.str()}), Json::array({m.c.str(), m.d.str()})});
}

ZsSequence trivial_power(std::uint32_t k) {
    FiniteAbelianGroup trivial;
    if (k == 0) return ZsSequence::empty(trivial);
    return ZsSequence::from_multiplicities(trivial, {{abelian::zero_element(trivial), k}});
}

struct JobOutput {
    Json doc;
    std::string text;
    int exit_code = 0;
};

JobOutput run_zs_atoms(const std::string& group, int max_len, const std::string& cache_dir) {
    auto g = abelian::parse_group(group);
    zerosum::AtomTable table;
    std::uint32_t davenport = 0;
    if (max_len < 0) {
        table = zerosum::full_atom_table_cached(g, cache_dir);
        for (const auto& a : table.atoms) davenport = std::max<std::uint32_t>(davenport, a.length());
    } else {
        table = zerosum::enumerate_atoms(g, static_cast<std::uint32_t>(max_len));
    }
    JobOutput out;
    out.doc["schema"] = kSchemaVersion;
    out.doc["command"] = "zs-atoms";
    out.doc["group"] = g.to_literal();
    out.doc["max_length"] = table.max_length;
    out.doc["complete"] = table.complete;
    if (max_len < 0) out.doc["davenport"] = davenport;
    out.doc["atom_count"] = table.atoms.size();
    Json atoms = Json::array();
    for (const auto& a : table.atoms) atoms.push_back(sequence_to_json(a));
    out.doc["atoms"] = std::move(atoms);

    std::ostringstream text;
    text << "atoms of B(" << (g.to_literal().empty() ? "trivial" : g.to_literal()) << "), length <= "
         << table.max_length << ": " << table.atoms.size() << "\n";
    for (const auto& a : table.atoms) text << "  " << a.to_literal() << "\n";
    out.text = text.str();
    return out;
}

JobOutput run_zs_davenport(const std::string& group, const std::string& cache_dir) {
    auto g = abelian::parse_group(group);
    zerosum::DavenportOptions opts;
    if (g.order() > opts.group_order_cap)
        throw BudgetExceeded("group order exceeds Davenport cap of " + std::to_string(opts.group_order_cap));
    auto table = zerosum::full_atom_table_cached(g, cache_dir);
    std::uint32_t d = 0;
    for (const auto& a : table.atoms) d = std::max<std::uint32_t>(d, a.length());
    JobOutput out;
    out.doc["schema"] = kSchemaVersion;
    out.doc["command"] = "zs-davenport";
    out.doc["group"] = g.to_literal();
    out.doc["cap"] = opts.group_order_cap;
    out.doc["davenport"] = d;
    out.text = "D(" + (g.to_literal().empty() ? std::string("trivial") : g.to_literal()) + ") = " +
               std::to_string(d) + "\n";
    return out;
}

JobOutput run_zs_lengths(const std::string& group, const std::string& elem, const std::string& cache_dir) {
    auto g = abelian::parse_group(group);
    auto s = zerosum::parse_sequence(g, elem);
    if (!s.is_zero_sum()) throw InvalidArgument("sequence " + s.to_literal() + " is not zero-sum");
    auto table = zerosum::full_atom_table_cached(g, cache_dir);
    auto lengths = zerosum::lengths_zs(s, table);
    auto distances = zerosum::distances_zs(s, table);
    auto cls = zerosum::classify_lengths(lengths);
    JobOutput out;
    out.doc["schema"] = kSchemaVersion;
    out.doc["command"] = "zs-lengths";
    out.doc["group"] = g.to_literal();
    out.doc["sequence"] = s.to_literal();
    out.doc["length"] = s.length();
    out.doc["lengths"] = lengths_to_json(lengths);
    out.doc["distances"] = lengths_to_json(distances);
    out.doc["classification"] = Json{{"kind", zerosum::to_string(cls.kind)}, {"d", cls.difference}};
    std::ostringstream text;
    text << "L(" << s.to_literal() << ") = {";
    bool first = true;
    for (auto l : lengths) text << (first ? "" : ",") << l, first = false;
    text << "}  delta = {";
    first = true;
    for (auto d : distances) text << (first ? "" : ",") << d, first = false;
    text << "}  " << zerosum::to_string(cls.kind);
    if (cls.difference) text << "(d=" << cls.difference << ")";
    text << "\n";
    out.text = text.str();
    return out;
}

JobOutput run_zs_delta(const std::string& group, std::uint64_t bound) {
    auto g = abelian::parse_group(group);
    auto delta = zerosum::monoid_delta(g, bound);
    JobOutput out;
    out.doc["schema"] = kSchemaVersion;
    out.doc["command"] = "zs-delta";
    out.doc["group"] = g.to_literal();
    out.doc["length_bound"] = delta.length_bound;
    out.doc["note"] = "bounded under-approximation: sequences with |S| <= length_bound only";
    out.doc["delta"] = lengths_to_json(delta.values);
    std::ostringstream text;
    text << "delta(B(" << (g.to_literal().empty() ? "trivial" : g.to_literal()) << "), |S| <= " << bound
         << ") = {";
    bool first = true;
    for (auto d : delta.values) text << (first ? "" : ",") << d, first = false;
    text << "}\n";
    out.text = text.str();
    return out;
}

JobOutput run_hq_factor(const std::string& elem, bool lengths_only) {
    auto x = hurwitz::parse_quaternion(elem);
    if (x.is_zero()) throw InvalidArgument("zero is not cancellative");
    factor_core::FactorEngine<hurwitz::HurwitzOracle> engine{hurwitz::HurwitzOracle{}};
    auto lengths = engine.lengths(x);
    auto distances = engine.distances(x);
    JobOutput out;
    out.doc["schema"] = kSchemaVersion;
    out.doc["command"] = lengths_only ? "hq-lengths" : "hq-factor";
    out.doc["element"] = x.to_literal();
    out.doc["norm"] = std::to_string(x.norm());
    out.doc["omega"] = hurwitz::omega(x.norm());
    out.doc["lengths"] = lengths_to_json(lengths);
    out.doc["distances"] = lengths_to_json(distances);
    std::ostringstream text;
    text << x.to_literal() << "  nr=" << x.norm() << "  L={";
    bool first = true;
    for (auto l : lengths) text << (first ? "" : ",") << l, first = false;
    text << "}\n";
    if (!lengths_only) {
        auto zs = engine.rigid_factorizations(x);
        out.doc["count"] = zs.size();
        Json fz = Json::array();
        for (const auto& z : zs) {
            Json atoms = Json::array();
            for (const auto& u : z.atoms) atoms.push_back(u.to_literal());
            fz.push_back(std::move(atoms));
        }
        out.doc["factorizations"] = std::move(fz);
        text << zs.size() << " rigid factorizations\n";
        for (const auto& z : zs) {
            text << "  ";
            for (std::size_t i = 0; i < z.atoms.size(); ++i) text << (i ? " * " : "") << z.atoms[i].to_literal();
            text << "\n";
        }
    }
    out.text = text.str();
    return out;
}

JobOutput run_hq_classes(std::int64_t n) {
    auto classes = hurwitz::elements_of_norm(n);
    JobOutput out;
    out.doc["schema"] = kSchemaVersion;
    out.doc["command"] = "hq-classes";
    out.doc["norm"] = std::to_string(n);
    out.doc["class_count"] = classes.size();
    Json reps = Json::array();
    for (const auto& x : classes) reps.push_back(x.to_literal());
    out.doc["classes"] = std::move(reps);
    std::ostringstream text;
    text << classes.size() << " associate classes of norm " << n << "\n";
    for (const auto& x : classes) text << "  " << x.to_literal() << "\n";
    out.text = text.str();
    return out;
}

JobOutput run_mat_factor(const std::string& matrix) {
    auto A = matorder::parse_matrix(matrix);
    if (A.det() == 0) throw InvalidArgument("singular matrices are not cancellative");
    factor_core::FactorEngine<matorder::MatOrderOracle> engine{matorder::MatOrderOracle{}};
    auto lengths = engine.lengths(A);
    auto zs = engine.rigid_factorizations(A);
    JobOutput out;
    out.doc["schema"] = kSchemaVersion;
    out.doc["command"] = "mat-factor";
    out.doc["matrix"] = matrix_to_json(A);
    out.doc["det"] = A.det().str();
    out.doc["lengths"] = lengths_to_json(lengths);
    out.doc["count"] = zs.size();
    Json fz = Json::array();
    for (const auto& z : zs) {
        Json atoms = Json::array();
        for (const auto& u : z.atoms) atoms.push_back(matrix_to_json(u));
        fz.push_back(std::move(atoms));
    }
    out.doc["factorizations"] = std::move(fz);
    std::ostringstream text;
    text << A.to_literal() << "  det=" << A.det().str() << "  L={";
    bool first = true;
    for (auto l : lengths) text << (first ? "" : ",") << l, first = false;
    text << "}  " << zs.size() << " rigid factorizations\n";
    for (const auto& z : zs) {
        text << "  ";
        for (std::size_t i = 0; i < z.atoms.size(); ++i) text << (i ? " * " : "") << z.atoms[i].to_literal();
        text << "\n";
    }
    out.text = text.str();
    return out;
}

JobOutput run_mat_ideals(const std::string& prime) {
    matorder::BigInt p;
    try {
        p = matorder::BigInt(prime);
    } catch (const std::exception&) {
        throw InvalidArgument("bad prime '" + prime + "'");
    }
    auto ideals = matorder::maximal_left_ideals_over(p);
    JobOutput out;
    out.doc["schema"] = kSchemaVersion;
    out.doc["command"] = "mat-ideals";
    out.doc["prime"] = p.str();
    out.doc["count"] = ideals.size();
    Json gens = Json::array();
    for (const auto& I : ideals) gens.push_back(matrix_to_json(I.gen));
    out.doc["ideals"] = std::move(gens);
    std::ostringstream text;
    text << ideals.size() << " maximal left ideals over " << p.str() << "\n";
    for (const auto& I : ideals) text << "  " << I.gen.to_literal() << "\n";
    out.text = text.str();
    return out;
}

JobOutput run_mat_transpose(const std::vector<std::string>& matrices) {
    if (matrices.size() != 2) throw InvalidArgument("mat-transpose needs exactly two --matrix arguments");
    auto U = matorder::parse_matrix(matrices[0]);
    auto V = matorder::parse_matrix(matrices[1]);
    auto t = matorder::transpose_elements(U, V);
    auto A = U * V;
    JobOutput out;
    out.doc["schema"] = kSchemaVersion;
    out.doc["command"] = "mat-transpose";
    out.doc["u"] = matrix_to_json(U);
    out.doc["v"] = matrix_to_json(V);
    out.doc["product"] = matrix_to_json(A);
    out.doc["v_prime"] = matrix_to_json(t.v_prime);
    out.doc["u_prime"] = matrix_to_json(t.u_prime);
    out.doc["v_prime_ideal"] = matrix_to_json(t.v_prime_ideal.gen);
    out.doc["u_prime_ideal"] = matrix_to_json(t.u_prime_ideal.gen);
    bool product_equal = (t.v_prime * t.u_prime) == A;
    out.doc["checks"] = Json{{"product_equal", product_equal}};
    std::ostringstream text;
    text << "u*v = " << A.to_literal() << "\n"
         << "v' = " << t.v_prime.to_literal() << "  (det " << t.v_prime.det().str() << ")\n"
         << "u' = " << t.u_prime.to_literal() << "  (det " << t.u_prime.det().str() << ")\n";
    out.text = text.str();
    return out;
}

JobOutput run_verify_transfer(std::size_t samples, std::uint64_t seed, std::int64_t bound) {
    if (bound < 2) throw InvalidArgument("--bound must be >= 2");
    std::mt19937_64 rng(seed);
    FiniteAbelianGroup trivial;
    auto target = zerosum::full_atom_table(trivial);

    std::vector<hurwitz::HurwitzQuaternion> hq_samples;
    for (std::size_t i = 0; i < samples; ++i) hq_samples.push_back(hurwitz::random_element(rng, bound));
    auto hq_theta = [](const hurwitz::HurwitzQuaternion& x) { return trivial_power(hurwitz::omega(x.norm())); };
    auto hq_report =
        factor_core::verify_transfer<hurwitz::HurwitzOracle>(hurwitz::HurwitzOracle{}, hq_theta, hq_samples, target);

    std::int64_t entry_bound = std::max<std::int64_t>(3, static_cast<std::int64_t>(std::sqrt(double(bound))));
    std::vector<matorder::IntMatrix2> mat_samples;
    for (std::size_t i = 0; i < samples; ++i)
        mat_samples.push_back(matorder::random_matrix(rng, entry_bound, matorder::BigInt(bound)));
    auto mat_theta = [](const matorder::IntMatrix2& A) {
        return trivial_power(static_cast<std::uint32_t>(matorder::factor(A.det()).size()));
    };
    auto mat_report =
        factor_core::verify_transfer<matorder::MatOrderOracle>(matorder::MatOrderOracle{}, mat_theta, mat_samples,
                                                               target);

    auto report_to_json = [](const std::string& name, const factor_core::TransferReport& r) {
        Json out;
        out["instance"] = name;
        out["samples"] = r.sample_count;
        out["pairs_checked"] = r.pair_count;
        out["splits_checked"] = r.split_count;
        out["homomorphism"] = r.homomorphism_ok;
        out["unit_criterion"] = r.unit_ok;
        out["lifting"] = r.lifting_ok;
        out["length_preservation"] = r.lengths_ok;
        out["violations"] = r.violations;
        out["surjectivity_note"] = r.surjectivity_note;
        return out;
    };

    JobOutput out;
    out.doc["schema"] = kSchemaVersion;
    out.doc["command"] = "verify-transfer";
    out.doc["seed"] = seed;
    out.doc["norm_bound"] = bound;
    out.doc["instances"] = Json::array({report_to_json("hurwitz", hq_report), report_to_json("mat2z", mat_report)});
    bool all = hq_report.all_ok() && mat_report.all_ok();
    out.doc["all_passed"] = all;
    out.exit_code = all ? 0 : 4;

    std::ostringstream text;
    auto line = [&](const std::string& name, const factor_core::TransferReport& r) {
        text << name << ": homomorphism=" << (r.homomorphism_ok ? "ok" : "FAIL")
             << " units=" << (r.unit_ok ? "ok" : "FAIL") << " lifting=" << (r.lifting_ok ? "ok" : "FAIL")
             << " lengths=" << (r.lengths_ok ? "ok" : "FAIL") << "  (" << r.sample_count << " samples, "
             << r.split_count << " splits)\n";
        for (const auto& v : r.violations) text << "  violation: " << v << "\n";
    };
    line("hurwitz", hq_report);
    line("mat2z", mat_report);
    text << (all ? "all checks passed\n" : "violations found\n");
    out.text = text.str();
    return out;
}

}  // namespace

CliResult run(const std::vector<std::string>& args) {
    CLI::App app{"factorlab: factorization invariants of zero-sum monoids, Hurwitz quaternions and M2(Z)"};
    app.require_subcommand(1);

    std::string group, elem, matrix, prime, cache_flag;
    std::vector<std::string> matrices;
    bool json_out = false;
    bool cache_given = false;
    int max_len = -1;
    std::uint64_t bound = 12;
    std::int64_t norm_bound = 500;
    std::size_t samples = 100;
    std::uint64_t seed = 0;

    std::function<JobOutput()> job;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_flag("--json", json_out, "emit machine-readable JSON");
        cmd->add_option("--seed", seed, "seed for sampled checks");
        auto* opt = cmd->add_option("--cache-dir", cache_flag, "atom-cache directory (default .factorlab-cache)");
        // final_callback is the job slot; record flag presence via parse callback
        cmd->parse_complete_callback([&cache_given, opt] { cache_given = opt->count() > 0; });
    };

    {
        auto* cmd = app.add_subcommand("zs-atoms", "enumerate atoms of B(G)");
        cmd->add_option("--group", group, "group literal, e.g. 2,2")->required();
        cmd->add_option("--max-len", max_len, "atom length bound (default: full table)");
        add_common(cmd);
        cmd->final_callback([&] {
            job = [&] { return run_zs_atoms(group, max_len, resolve_cache_dir(cache_flag, cache_given)); };
        });
    }
    {
        auto* cmd = app.add_subcommand("zs-davenport", "Davenport constant D(G)");
        cmd->add_option("--group", group)->required();
        add_common(cmd);
        cmd->final_callback([&] {
            job = [&] { return run_zs_davenport(group, resolve_cache_dir(cache_flag, cache_given)); };
        });
    }
    {
        auto* cmd = app.add_subcommand("zs-lengths", "set of lengths of a zero-sum sequence");
        cmd->add_option("--group", group)->required();
        cmd->add_option("--elem", elem, "sequence literal, e.g. (1)^3*(2)^3")->required();
        add_common(cmd);
        cmd->final_callback([&] {
            job = [&] { return run_zs_lengths(group, elem, resolve_cache_dir(cache_flag, cache_given)); };
        });
    }
    {
        auto* cmd = app.add_subcommand("zs-delta", "set of distances over bounded sequences");
        cmd->add_option("--group", group)->required();
        cmd->add_option("--bound", bound, "sequence length bound (default 12)");
        add_common(cmd);
        cmd->final_callback([&] {
            job = [&] { return run_zs_delta(group, bound); };
        });
    }
    {
        auto* cmd = app.add_subcommand("hq-factor", "rigid factorizations of a Hurwitz quaternion");
        cmd->add_option("--elem", elem, "quaternion literal, e.g. 1+1*i")->required();
        add_common(cmd);
        cmd->final_callback([&] {
            job = [&] { return run_hq_factor(elem, false); };
        });
    }
    {
        auto* cmd = app.add_subcommand("hq-lengths", "set of lengths of a Hurwitz quaternion");
        cmd->add_option("--elem", elem)->required();
        add_common(cmd);
        cmd->final_callback([&] {
            job = [&] { return run_hq_factor(elem, true); };
        });
    }
    {
        auto* cmd = app.add_subcommand("hq-classes", "associate classes of a given norm");
        cmd->add_option("--prime", prime, "norm value (any positive integer)")->required();
        add_common(cmd);
        cmd->final_callback([&] {
            job = [&] {
                std::int64_t n = 0;
                try {
                    n = std::stoll(prime);
                } catch (const std::exception&) {
                    throw InvalidArgument("bad norm '" + prime + "'");
                }
                return run_hq_classes(n);
            };
        });
    }
    {
        auto* cmd = app.add_subcommand("mat-factor", "rigid factorizations of a 2x2 integer matrix");
        cmd->add_option("--matrix", matrix, "matrix literal [[a,b],[c,d]]")->required();
        add_common(cmd);
        cmd->final_callback([&] {
            job = [&] { return run_mat_factor(matrix); };
        });
    }
    {
        auto* cmd = app.add_subcommand("mat-ideals", "maximal left ideals over a prime");
        cmd->add_option("--prime", prime)->required();
        add_common(cmd);
        cmd->final_callback([&] {
            job = [&] { return run_mat_ideals(prime); };
        });
    }
    {
        auto* cmd = app.add_subcommand("mat-transpose", "transpose two maximal steps u, v");
        cmd->add_option("--matrix", matrices, "two matrix literals: u then v")->expected(2)->allow_extra_args(false);
        add_common(cmd);
        cmd->final_callback([&] {
            job = [&] { return run_mat_transpose(matrices); };
        });
    }
    {
        auto* cmd = app.add_subcommand("verify-transfer", "machine-check the transfer homomorphisms");
        cmd->add_option("--samples", samples, "sample count per instance (default 100)");
        cmd->add_option("--bound", norm_bound, "norm/determinant bound for samples (default 500)");
        add_common(cmd);
        cmd->final_callback([&] {
            job = [&] { return run_verify_transfer(samples, seed, norm_bound); };
        });
    }

    std::vector<std::string> argv_strings;
    argv_strings.push_back("factorlab");
    argv_strings.insert(argv_strings.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_strings) argv.push_back(s.c_str());

    CliResult result;
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        result.output = app.help();
        return result;
    } catch (const CLI::ParseError& e) {
        result.output = std::string("error: ") + e.what() + "\n";
        result.exit_code = 2;
        return result;
    }

    try {
        JobOutput out = job();
        result.exit_code = out.exit_code;
        result.output = json_out ? out.doc.dump(2) + "\n" : out.text;
    } catch (const InvalidArgument& e) {
        result.output = std::string("error: ") + e.what() + "\n";
        result.exit_code = 2;
    } catch (const BudgetExceeded& e) {
        result.output = std::string("error: ") + e.what() + "\n";
        result.exit_code = 3;
    } catch (const std::exception& e) {
        result.output = std::string("error: ") + e.what() + "\n";
        result.exit_code = 1;
    }
    return result;
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    CliResult result = run(args);
    std::cout << result.output;
    return result.exit_code;
}

}  // namespace factorlab::cli
