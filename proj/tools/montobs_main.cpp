// Command line front end: obstruction verdicts for single tuples and
// grids, plus thin wrappers over the library operations. Exit code 0
// means the tool ran; mathematical verdicts live in the output. Exit
// code 2 flags invalid input.

#include <atomic>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "montobs/goeritz.hpp"
#include "montobs/lattice.hpp"
#include "montobs/matrix.hpp"
#include "montobs/montesinos.hpp"
#include "montobs/plumbing.hpp"
#include "montobs/verdict.hpp"

namespace {

using montobs::FamilyParams;
using montobs::Int;
using nlohmann::ordered_json;

struct TupleArgs {
    long long m1 = 0, n1 = 0, m2 = 0, n2 = 0, q = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("m1", m1, "first leg twist count")->required();
        cmd->add_option("n1", n1, "first leg chain length")->required();
        cmd->add_option("m2", m2, "second leg twist count")->required();
        cmd->add_option("n2", n2, "second leg chain length")->required();
        cmd->add_option("q", q, "integer tangle weight, at most -1")->required();
    }

    FamilyParams params() const { return FamilyParams(m1, n1, m2, n2, q); }
};

ordered_json det_value(const Int& d) {
    if (d.fits_slong_p()) return ordered_json(d.get_si());
    return ordered_json(d.get_str());
}

ordered_json verdict_json(const montobs::SliceVerdict& v) {
    ordered_json j;
    j["params"] = ordered_json{{"m1", v.params.m1},
                               {"n1", v.params.n1},
                               {"m2", v.params.m2},
                               {"n2", v.params.n2},
                               {"q", v.params.q}};
    j["is_knot"] = v.is_knot;
    j["nr_value"] = v.nr_value.str();
    j["negative_definite"] = v.negative_definite;
    j["rank"] = v.rank;
    j["determinant"] = det_value(v.determinant);
    j["outcome"] = montobs::outcome_name(v.outcome);
    if (v.outcome == montobs::VerdictOutcome::embedding_found) {
        ordered_json rows = ordered_json::array();
        for (const auto& col : v.witness->columns) {
            ordered_json row = ordered_json::array();
            for (const Int& x : col) row.push_back(montobs::to_int64(x));
            rows.push_back(std::move(row));
        }
        j["witness"] = std::move(rows);
    }
    j["nodes_explored"] = v.nodes_explored;
    j["elapsed_ms"] = v.elapsed_ms;
    return j;
}

// "lo:hi" or a single value; both ends inclusive.
std::pair<long long, long long> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            const long long v = std::stoll(text);
            return {v, v};
        }
        const long long lo = std::stoll(text.substr(0, colon));
        const long long hi = std::stoll(text.substr(colon + 1));
        if (lo > hi) throw montobs::DomainError("empty range " + text);
        return {lo, hi};
    } catch (const std::invalid_argument&) {
        throw montobs::DomainError("cannot parse range " + text);
    } catch (const std::out_of_range&) {
        throw montobs::DomainError("range bound out of range in " + text);
    }
}

void print_graph(std::ostream& out, const montobs::PlumbingGraph& g) {
    out << g.size() << "\n";
    for (const auto& v : g.vertices()) out << v.id << " " << v.weight.get_str() << "\n";
    for (const auto& e : g.edges()) out << e.first << " " << e.second << "\n";
}

montobs::SymIntMatrix matrix_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw montobs::DomainError("cannot open " + path);
    return montobs::read_matrix(in);
}

void print_witness_lines(std::ostream& out, const montobs::EmbeddingWitness& w) {
    for (const auto& col : w.columns) {
        for (std::size_t a = 0; a < col.size(); ++a)
            out << (a ? " " : "") << col[a].get_str();
        out << "\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"slice obstruction toolkit for two-leg star plumbings"};
    app.require_subcommand(1);

    // obstruct
    auto* ob = app.add_subcommand("obstruct", "full pipeline verdict for one tuple, as JSON");
    TupleArgs ob_args;
    ob_args.attach(ob);
    montobs::SearchOptions ob_opts;
    ob->add_option("--budget", ob_opts.node_budget, "embedding search node budget")
        ->capture_default_str();
    ob->add_option("--threads", ob_opts.threads, "embedding search threads")
        ->capture_default_str();
    ob->callback([&] {
        const auto v = montobs::obstruct_verdict(ob_args.params(), ob_opts, true);
        std::cout << verdict_json(v).dump() << "\n";
    });

    // scan
    auto* sc = app.add_subcommand("scan", "pipeline verdicts over a grid, as JSON lines");
    std::string r_m1, r_n1, r_m2, r_n2, r_q;
    sc->add_option("--m1", r_m1, "range lo:hi")->required();
    sc->add_option("--n1", r_n1, "range lo:hi")->required();
    sc->add_option("--m2", r_m2, "range lo:hi")->required();
    sc->add_option("--n2", r_n2, "range lo:hi")->required();
    sc->add_option("--q", r_q, "range lo:hi, hi at most -1")->required();
    montobs::SearchOptions sc_opts;
    int jobs = 1;
    sc->add_option("--budget", sc_opts.node_budget, "per-tuple node budget")
        ->capture_default_str();
    sc->add_option("--jobs", jobs, "tuples evaluated concurrently")->capture_default_str();
    sc->callback([&] {
        const auto m1r = parse_range(r_m1), n1r = parse_range(r_n1), m2r = parse_range(r_m2),
                   n2r = parse_range(r_n2), qr = parse_range(r_q);
        std::vector<FamilyParams> tuples;
        for (long long m1 = m1r.first; m1 <= m1r.second; ++m1)
            for (long long n1 = n1r.first; n1 <= n1r.second; ++n1)
                for (long long m2 = m2r.first; m2 <= m2r.second; ++m2)
                    for (long long n2 = n2r.first; n2 <= n2r.second; ++n2)
                        for (long long q = qr.first; q <= qr.second; ++q)
                            tuples.emplace_back(m1, n1, m2, n2, q);
        std::vector<std::string> lines(tuples.size());
        const int pool = std::max(1, jobs);
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mx;
        auto work = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tuples.size()) return;
                try {
                    const auto v = montobs::obstruct_verdict(tuples[i], sc_opts, false);
                    lines[i] = verdict_json(v).dump();
                } catch (...) {
                    std::lock_guard<std::mutex> lk(failure_mx);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        };
        if (pool == 1) {
            work();
        } else {
            std::vector<std::thread> threads;
            for (int t = 0; t < pool; ++t) threads.emplace_back(work);
            for (auto& t : threads) t.join();
        }
        if (failure) std::rethrow_exception(failure);
        for (const auto& line : lines) std::cout << line << "\n";
    });

    // cf eval | expand
    auto* cf = app.add_subcommand("cf", "continued fraction utilities");
    cf->require_subcommand(1);
    auto* cfe = cf->add_subcommand("eval", "evaluate terms to an exact rational");
    std::vector<long long> cf_terms;
    cfe->add_option("terms", cf_terms, "coefficients")->required()->expected(-1);
    cfe->callback([&] {
        std::vector<Int> t;
        for (long long x : cf_terms) t.push_back(montobs::int_from(x));
        std::cout << montobs::evaluate(montobs::ContinuedFraction(std::move(t))).str() << "\n";
    });
    auto* cfx = cf->add_subcommand("expand", "expand num den into minus-convention terms");
    long long cf_num = 0, cf_den = 1;
    cfx->add_option("num", cf_num, "numerator")->required();
    cfx->add_option("den", cf_den, "denominator (default 1)");
    cfx->callback([&] {
        const auto cfr = montobs::rational_to_negcf(
            montobs::Rational(montobs::int_from(cf_num), montobs::int_from(cf_den)));
        for (std::size_t i = 0; i < cfr.terms.size(); ++i)
            std::cout << (i ? " " : "") << cfr.terms[i].get_str();
        std::cout << "\n";
    });

    // plumb build | reduce | dot
    auto* pl = app.add_subcommand("plumb", "plumbing graph utilities");
    pl->require_subcommand(1);
    auto* plb = pl->add_subcommand("build", "raw star plumbing for a tuple");
    TupleArgs plb_args;
    plb_args.attach(plb);
    plb->callback([&] { print_graph(std::cout, montobs::build_family_raw(plb_args.params())); });
    auto* plr = pl->add_subcommand("reduce", "blow down the raw plumbing");
    TupleArgs plr_args;
    plr_args.attach(plr);
    plr->callback(
        [&] { print_graph(std::cout, montobs::reduce(montobs::build_family_raw(plr_args.params()))); });
    auto* pld = pl->add_subcommand("dot", "Graphviz export");
    TupleArgs pld_args;
    pld_args.attach(pld);
    bool dot_reduced = false;
    pld->add_flag("--reduced", dot_reduced, "export the reduced chain instead of the raw star");
    pld->callback([&] {
        const auto g = dot_reduced ? montobs::build_family_reduced(pld_args.params())
                                   : montobs::build_family_raw(pld_args.params());
        std::cout << montobs::to_dot(g);
    });

    // form print | det | sig
    auto* fo = app.add_subcommand("form", "intersection form of the reduced plumbing");
    fo->require_subcommand(1);
    auto attach_form = [](CLI::App* cmd, TupleArgs& args, std::string& file) {
        cmd->add_option("--file", file, "read a matrix file instead of building from a tuple");
        args.attach(cmd);
        for (const std::string name : {"m1", "n1", "m2", "n2", "q"})
            cmd->get_option(name)->required(false);
    };
    auto form_of = [](const TupleArgs& args, const std::string& file) {
        if (!file.empty()) return matrix_from_file(file);
        return montobs::intersection_form(montobs::build_family_reduced(args.params()));
    };
    TupleArgs fp_args, fd_args, fs_args;
    std::string fp_file, fd_file, fs_file;
    auto* fop = fo->add_subcommand("print", "matrix file format on stdout");
    attach_form(fop, fp_args, fp_file);
    fop->callback([&] { montobs::write_matrix(std::cout, form_of(fp_args, fp_file)); });
    auto* fod = fo->add_subcommand("det", "exact determinant");
    attach_form(fod, fd_args, fd_file);
    fod->callback(
        [&] { std::cout << montobs::det_exact(form_of(fd_args, fd_file)).get_str() << "\n"; });
    auto* fos = fo->add_subcommand("sig", "exact inertia and signature");
    attach_form(fos, fs_args, fs_file);
    fos->callback([&] {
        const auto i = montobs::signature_exact(form_of(fs_args, fs_file));
        std::cout << "inertia: " << i.n_plus << " " << i.n_minus << " " << i.n_zero << "\n";
        std::cout << "signature: " << (i.n_plus - i.n_minus) << "\n";
    });

    // embed
    auto* em = app.add_subcommand("embed", "embedding search on a matrix file");
    std::string em_file;
    em->add_option("file", em_file, "matrix file, first line n then n rows")->required();
    montobs::SearchOptions em_opts;
    em->add_option("--budget", em_opts.node_budget, "node budget")->capture_default_str();
    em->add_option("--threads", em_opts.threads, "worker threads")->capture_default_str();
    em->callback([&] {
        const auto q = matrix_from_file(em_file);
        const auto out = montobs::find_embedding(q, em_opts);
        switch (out.status) {
            case montobs::SearchStatus::exhausted:
                std::cout << "status: exhausted\n";
                break;
            case montobs::SearchStatus::found:
                std::cout << "status: found\n";
                break;
            case montobs::SearchStatus::aborted:
                std::cout << "status: aborted\n";
                break;
        }
        std::cout << "nodes: " << out.nodes_explored << "\n";
        if (out.witness) print_witness_lines(std::cout, *out.witness);
    });

    // goeritz
    auto* go = app.add_subcommand("goeritz", "checkerboard form of the (1,n1,2,1,-3) slice");
    long long go_n1 = 0;
    bool go_det = false, go_sig = false;
    go->add_option("n1", go_n1, "chain length parameter")->required();
    go->add_flag("--det", go_det, "print the determinant instead of the matrix");
    go->add_flag("--sig", go_sig, "print the signature instead of the matrix");
    go->callback([&] {
        if (go_det && go_sig) throw montobs::DomainError("choose one of --det, --sig");
        if (go_det)
            std::cout << montobs::family_determinant(go_n1).get_str() << "\n";
        else if (go_sig)
            std::cout << montobs::family_signature(go_n1) << "\n";
        else
            montobs::write_matrix(std::cout, montobs::goeritz_matrix(go_n1));
    });

    // sequence
    auto* se = app.add_subcommand("sequence", "square-determinant subfamily terms");
    int se_count = 1;
    se->add_option("--count", se_count, "number of terms")->required();
    se->callback([&] {
        for (const auto& t : montobs::square_det_sequence(se_count))
            std::cout << t.a.get_str() << " " << t.n1.get_str() << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
