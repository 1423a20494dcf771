// modq: exact graph modularity queries, edit-distance certificates, and the
// dense random-graph transition experiment.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "modq/edits.hpp"
#include "modq/graph.hpp"
#include "modq/modularity.hpp"
#include "modq/transition.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitCap = 3;
constexpr int kExitHypothesis = 4;
constexpr int kExitIo = 5;

struct GraphSource {
    std::string file;
    std::string builder;
};

void add_graph_source(CLI::App* cmd, GraphSource& src) {
    auto* file = cmd->add_option("--graph", src.file, "edge-list file (\"n m\" header)");
    auto* builder =
        cmd->add_option("--builder", src.builder, "Kn:<n> | Kst:<s>,<t> | Kparts:<s1>,<s2>,...");
    file->excludes(builder);
    builder->excludes(file);
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

modq::Graph build_graph(const GraphSource& src) {
    if (src.file.empty() == src.builder.empty())
        throw CLI::ValidationError("graph", "exactly one of --graph / --builder is required");
    if (!src.file.empty()) {
        std::ifstream in(src.file);
        if (!in) throw std::ios_base::failure("cannot open " + src.file);
        std::stringstream buf;
        buf << in.rdbuf();
        return modq::parse_graph(buf.str());
    }
    auto colon = src.builder.find(':');
    if (colon == std::string::npos)
        throw modq::ParseError(modq::ParseError::Kind::BadHeader,
                               "builder spec needs \"name:args\"");
    std::string name = src.builder.substr(0, colon);
    std::string args = src.builder.substr(colon + 1);
    if (name == "Kn") return modq::complete_graph(std::stoi(args));
    if (name == "Kst") {
        auto v = parse_int_list(args);
        if (v.size() != 2)
            throw modq::ParseError(modq::ParseError::Kind::BadHeader, "Kst needs two sizes");
        return modq::complete_bipartite(v[0], v[1]);
    }
    if (name == "Kparts") return modq::complete_multipartite(parse_int_list(args));
    throw modq::ParseError(modq::ParseError::Kind::BadHeader, "unknown builder " + name);
}

std::vector<uint64_t> parse_seeds(const std::string& text) {
    std::vector<uint64_t> out;
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        uint64_t lo = std::stoull(text.substr(0, dots));
        uint64_t hi = std::stoull(text.substr(dots + 2));
        if (hi < lo) throw CLI::ValidationError("--seeds", "range must be ascending");
        for (uint64_t s = lo; s <= hi; ++s) out.push_back(s);
        return out;
    }
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoull(tok));
    return out;
}

void print_witness(const std::vector<modq::Edit>& edits, const modq::Bipartition& bip,
                   const modq::Rational& score) {
    std::cout << modq::serialize_edits(edits);
    std::cout << modq::serialize_partition({bip.part_a, bip.part_b()}) << '\n';
    std::cout << score.to_string() << '\n';
}

int dispatch(int argc, char** argv) {
    CLI::App app{"exact modularity toolkit"};
    app.require_subcommand(1);

    GraphSource score_src, exact_src, positive_src, pvalue_src, delta_src;

    auto* score_cmd = app.add_subcommand("score", "modularity breakdown of a given partition");
    add_graph_source(score_cmd, score_src);
    std::string partition_text;
    score_cmd->add_option("--partition", partition_text, "e.g. \"0,1|2,3\"")->required();

    auto* exact_cmd = app.add_subcommand("exact", "exact q* by set-partition enumeration");
    add_graph_source(exact_cmd, exact_src);
    int exact_cap = modq::kDefaultPartitionCap;
    exact_cmd->add_option("--cap", exact_cap, "vertex-count cap (refuses above)");

    auto* positive_cmd = app.add_subcommand("positive", "decide q* > 0 with a witness subset");
    add_graph_source(positive_cmd, positive_src);
    int positive_cap = modq::kDefaultSubsetCap;
    positive_cmd->add_option("--cap", positive_cap, "vertex-count cap (refuses above)");

    auto* pvalue_cmd = app.add_subcommand("pvalue", "p(U) = 2 e(U) vol(G) - vol(U)^2");
    add_graph_source(pvalue_cmd, pvalue_src);
    std::string set_text;
    pvalue_cmd->add_option("--set", set_text, "vertex subset, e.g. \"0,2,5\"")->required();

    auto* delta_cmd = app.add_subcommand("delta", "minimum edits to positive modularity");
    add_graph_source(delta_cmd, delta_src);
    std::string mode_text = "both";
    delta_cmd->add_option("--mode", mode_text, "remove | add | both")
        ->check(CLI::IsMember({"remove", "add", "both"}));
    int budget = 4;
    delta_cmd->add_option("--budget", budget, "deepening limit (default 4)");
    int delta_cap = modq::kDefaultSubsetCap;
    delta_cmd->add_option("--cap", delta_cap, "positivity-scan cap");
    bool prune = false;
    delta_cmd->add_flag("--prune", prune,
                        "orbit-deduplicate single edits (builder graphs only)");

    auto* witness_cmd = app.add_subcommand("witness", "constructive positive-modularity witnesses");
    witness_cmd->require_subcommand(1);
    auto* wkn = witness_cmd->add_subcommand("kn", "K_n minus floor(n/2)+1 cut edges");
    int wkn_n = 0;
    wkn->add_option("--n", wkn_n)->required();
    auto* wminus = witness_cmd->add_subcommand("bip-minus", "K_{s,t} minus one crossing edge");
    auto* wplus = witness_cmd->add_subcommand("bip-plus", "K_{s,t} plus one internal edge");
    int ws = 0, wt = 0;
    for (auto* cmd : {wminus, wplus}) {
        cmd->add_option("--s", ws)->required();
        cmd->add_option("--t", wt)->required();
    }
    auto* wmulti = witness_cmd->add_subcommand("multi", "complete multipartite minus one edge");
    std::string wparts;
    int well = 0;
    wmulti->add_option("--parts", wparts, "part sizes, e.g. 2,2,2")->required();
    wmulti->add_option("--l", well, "common divisor of all part sizes")->required();

    auto* transition_cmd = app.add_subcommand("transition", "dense random-graph experiment");
    int tn = 0;
    std::string tc, tseeds, trho, tout, tmodel = "gnp";
    double tomega = 0.0;
    transition_cmd->add_option("--n", tn)->required();
    auto* copt = transition_cmd->add_option("--c", tc, "complement density (p = 1 - c/n)");
    auto* womega = transition_cmd->add_option(
        "--omega", tomega, "subcritical mode: p = 1 - 1/n + omega/n^(3/2)");
    copt->excludes(womega);
    womega->excludes(copt);
    transition_cmd->add_option("--seeds", tseeds, "list \"1,2,3\" or range \"1..50\"")->required();
    transition_cmd->add_option("--model", tmodel)->check(CLI::IsMember({"gnp", "gnm"}));
    transition_cmd->add_option("--rho", trho, "override rho (decimal or num/den)");
    transition_cmd->add_option("--out", tout, "CSV path (default stdout)");

    auto* summarize_cmd = app.add_subcommand("summarize", "aggregate a transition CSV");
    std::string sin;
    summarize_cmd->add_option("--in", sin, "CSV path")->required();

    auto* xc_cmd = app.add_subcommand("xc", "x(c) and, for 1 < c <= 2, delta(c)");
    double xc_c = 0.0;
    xc_cmd->add_option("--c", xc_c)->required();

    CLI11_PARSE(app, argc, argv);

    if (score_cmd->parsed()) {
        modq::Graph g = build_graph(score_src);
        auto parts = modq::parse_partition(g.vertex_count(), partition_text);
        auto sb = modq::modularity_score(g, parts);
        std::cout << "coverage " << sb.coverage.to_string() << '\n';
        std::cout << "degree_tax " << sb.degree_tax.to_string() << '\n';
        std::cout << "score " << sb.score.to_string() << '\n';
    } else if (exact_cmd->parsed()) {
        modq::Graph g = build_graph(exact_src);
        auto em = modq::exact_modularity(g, exact_cap);
        std::cout << em.value.to_string() << '\n';
        std::vector<modq::VertexSet> parts;
        for (const auto& p : em.argmax_partition)
            parts.push_back(modq::VertexSet::of(g.vertex_count(), p));
        std::cout << modq::serialize_partition(parts) << '\n';
    } else if (positive_cmd->parsed()) {
        modq::Graph g = build_graph(positive_src);
        auto w = modq::has_positive_modularity(g, positive_cap);
        if (w.positive()) {
            std::cout << "positive\n" << w.witness_set->to_string() << '\n' << *w.p << '\n';
        } else {
            std::cout << "zero\n";
        }
    } else if (pvalue_cmd->parsed()) {
        modq::Graph g = build_graph(pvalue_src);
        auto u = modq::parse_vertex_set(g.vertex_count(), set_text);
        std::cout << modq::to_string_i128(modq::p_value(g, u)) << '\n';
    } else if (delta_cmd->parsed()) {
        modq::Graph g = build_graph(delta_src);
        modq::EditMode mode = mode_text == "remove" ? modq::EditMode::RemoveOnly
                              : mode_text == "add"  ? modq::EditMode::AddOnly
                                                    : modq::EditMode::Both;
        modq::EditSearchOptions options;
        options.subset_cap = delta_cap;
        if (prune) {
            if (delta_src.builder.rfind("Kn:", 0) == 0)
                options.orbit_parts =
                    std::vector<int>(std::stoi(delta_src.builder.substr(3)), 1);
            else if (delta_src.builder.rfind("Kst:", 0) == 0)
                options.orbit_parts = parse_int_list(delta_src.builder.substr(4));
            else if (delta_src.builder.rfind("Kparts:", 0) == 0)
                options.orbit_parts = parse_int_list(delta_src.builder.substr(7));
            else
                throw CLI::ValidationError("--prune", "needs a --builder graph");
        }
        auto res = modq::edit_distance_to_positive(g, mode, budget, options);
        if (!res.found()) {
            std::cout << "none-within-budget " << res.budget << '\n';
        } else {
            std::cout << *res.distance << '\n';
            print_witness(res.witness_edits, *res.witness, res.witness_score->score);
        }
    } else if (witness_cmd->parsed()) {
        std::optional<modq::WitnessConstruction> w;
        if (wkn->parsed()) w = modq::kn_minus_witness(wkn_n);
        if (wminus->parsed()) w = modq::bipartite_removal_witness(ws, wt);
        if (wplus->parsed()) {
            w = modq::bipartite_addition_witness(ws, wt);
            if (!w) {
                std::cout << "not-possible\n";
                return 0;
            }
        }
        if (wmulti->parsed()) w = modq::multipartite_removal_witness(parse_int_list(wparts), well);
        print_witness(w->edits, w->partition, w->score.score);
    } else if (transition_cmd->parsed()) {
        if (tc.empty() && womega->count() == 0)
            throw CLI::ValidationError("--c", "one of --c / --omega is required");
        modq::TransitionConfig config;
        config.n = tn;
        if (!tc.empty()) {
            config.c = modq::parse_decimal(tc);
        } else {
            // c = 1 - omega / sqrt(n), exact when n is a perfect square
            long long root = std::llround(std::sqrt(double(tn)));
            if (root * root == tn && tomega == std::floor(tomega)) {
                config.c = modq::Rational(1, 1) -
                           modq::Rational(static_cast<long long>(tomega), root);
            } else {
                config.c = modq::Rational(
                    std::llround((1.0 - tomega / std::sqrt(double(tn))) * 1e9), 1000000000LL);
            }
        }
        config.model = tmodel == "gnp" ? modq::TransitionModel::Gnp : modq::TransitionModel::Gnm;
        config.seeds = parse_seeds(tseeds);
        if (!trho.empty())
            config.rho = trho.find('/') != std::string::npos ? modq::parse_rational(trho)
                                                             : modq::parse_decimal(trho);
        auto records = modq::transition_experiment(config);
        if (tout.empty()) {
            modq::write_transition_csv(std::cout, records);
        } else {
            std::ofstream out(tout, std::ios::binary);
            if (!out) throw std::ios_base::failure("cannot open " + tout);
            modq::write_transition_csv(out, records);
        }
    } else if (summarize_cmd->parsed()) {
        std::ifstream in(sin);
        if (!in) throw std::ios_base::failure("cannot open " + sin);
        std::stringstream buf;
        buf << in.rdbuf();
        auto records = modq::parse_transition_csv(buf.str());
        std::cout << modq::format_summary(modq::summarize_records(records));
    } else if (xc_cmd->parsed()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "x %.15g\n", modq::x_of_c(xc_c));
        std::cout << buf;
        if (xc_c > 1.0 && xc_c <= 2.0) {
            std::snprintf(buf, sizeof buf, "delta %.15g\n", modq::delta_of_c(xc_c));
            std::cout << buf;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const modq::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const modq::CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return kExitCap;
    } catch (const modq::HypothesisFailed& e) {
        std::cerr << "hypothesis failed: " << e.what() << '\n';
        return kExitHypothesis;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    }
}
