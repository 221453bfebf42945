#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qpc/analysis.hpp"
#include "qpc/errors.hpp"
#include "qpc/tcp.hpp"

namespace {

constexpr int kExitEqual = 0;
constexpr int kExitNotEqual = 1;
constexpr int kExitError = 2;

struct CommonOptions {
    std::uint64_t seed = 42;
    bool seed_set = false;
    qpc::HashMode hash_mode = qpc::HashMode::Feistel;
    unsigned feistel_rounds = 8;
    std::uint64_t hash_key = qpc::kDefaultHashKey;
    std::size_t bits = 0; // explicit bit length for hex secrets
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--seed", opt.seed, "Master seed (env QPC_SEED, then 42)")
        ->each([&opt](const std::string&) { opt.seed_set = true; });
    const std::map<std::string, qpc::HashMode> modes{
        {"identity", qpc::HashMode::Identity},
        {"feistel", qpc::HashMode::Feistel}};
    cmd->add_option("--hash", opt.hash_mode, "Hash permutation mode")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
    cmd->add_option("--hash-key", opt.hash_key,
                    "Public 64-bit key of the Feistel permutation");
    cmd->add_option("--feistel-rounds", opt.feistel_rounds,
                    "Feistel round count (>= 4)");
    cmd->add_option("--bits", opt.bits,
                    "Bit length when secrets are given in hex");
}

std::uint64_t resolve_seed(const CommonOptions& opt) {
    if (opt.seed_set)
        return opt.seed;
    if (const char* env = std::getenv("QPC_SEED"))
        return std::strtoull(env, nullptr, 0);
    return opt.seed;
}

qpc::HashParams resolve_params(const CommonOptions& opt) {
    return qpc::HashParams{opt.hash_mode, opt.feistel_rounds, opt.hash_key};
}

qpc::BitString parse_secret(const std::string& text,
                            const CommonOptions& opt) {
    if (text.rfind("0x", 0) == 0 || text.rfind("0X", 0) == 0) {
        if (opt.bits == 0)
            throw CLI::ValidationError(
                "hex secrets need --bits to fix the length");
        return qpc::BitString::from_hex(text, opt.bits);
    }
    return qpc::BitString::from_string(text);
}

std::string format_params(const CommonOptions& opt) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "hash=%s rounds=%u key=0x%016" PRIx64,
                  opt.hash_mode == qpc::HashMode::Identity ? "identity"
                                                           : "feistel",
                  opt.feistel_rounds, opt.hash_key);
    return buf;
}

void print_outcome(const qpc::SessionOutcome& outcome) {
    if (outcome.verdict == qpc::Verdict::Equal)
        std::printf("Equal (rounds=%u)\n", outcome.rounds_executed);
    else
        std::printf("NotEqual at round %u\n", *outcome.abort_round);
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    return out;
}

// ---- compare ----

int cmd_compare(const std::string& a_text, const std::string& b_text,
                unsigned reruns, const std::string& transcript_path,
                const CommonOptions& opt) {
    const qpc::BitString a = parse_secret(a_text, opt);
    const qpc::BitString b = parse_secret(b_text, opt);
    if (a.size() != b.size())
        throw CLI::ValidationError("secrets must have equal length");

    const qpc::RerunReport report = qpc::verify_rerun(
        a, b, reruns, resolve_params(opt), resolve_seed(opt));
    print_outcome(report.outcome);
    if (reruns > 0)
        std::printf("runs executed: %u of %u\n", report.runs_executed,
                    reruns + 1);
    if (!transcript_path.empty()) {
        open_output(transcript_path)
            << qpc::transcript_text(report.outcome.transcript);
        std::printf("transcript: %s\n", transcript_path.c_str());
    }
    return report.outcome.verdict == qpc::Verdict::Equal ? kExitEqual
                                                         : kExitNotEqual;
}

// ---- experiment ----

int cmd_experiment(const std::string& kind, std::size_t n,
                   std::uint64_t trials, qpc::Role cheater,
                   qpc::Strategy strategy, const std::string& out_path,
                   const CommonOptions& opt) {
    namespace an = qpc::analysis;
    const std::uint64_t seed = resolve_seed(opt);
    auto out = open_output(out_path);
    char line[256];

    if (kind == "pinc") {
        const an::Estimate est =
            an::monte_carlo_pinc(n, trials, seed, resolve_params(opt));
        const double target = an::p_inc(n);
        const bool pass = std::abs(est.mean - target) <= 3.0 * est.std_error;
        std::snprintf(line, sizeof line,
                      "# qpc experiment kind=pinc n=%zu trials=%" PRIu64
                      " seed=%" PRIu64 " %s\n"
                      "n,trials,estimate,std_error,target,pass3sigma\n"
                      "%zu,%" PRIu64 ",%.12g,%.12g,%.12g,%s\n",
                      n, trials, seed, format_params(opt).c_str(), n, trials,
                      est.mean, est.std_error, target, pass ? "pass" : "fail");
        out << line;
        std::printf("pinc: estimate %.6g +- %.2g, target %.6g -> %s\n",
                    est.mean, est.std_error, target, pass ? "pass" : "fail");
    } else if (kind == "leakage") {
        const an::Estimate est =
            an::monte_carlo_leakage(n, cheater, strategy, trials, seed);
        const double bound = cheater == qpc::Role::Alice
                                 ? an::leakage_bound_alice(n)
                                 : an::leakage_bound_bob(n);
        const bool pass = est.mean <= bound + 3.0 * est.std_error;
        std::snprintf(
            line, sizeof line,
            "# qpc experiment kind=leakage n=%zu trials=%" PRIu64
            " seed=%" PRIu64 " cheater=%s strategy=%s\n"
            "n,cheater,strategy,trials,mean_leaked_bits,std_error,bound,"
            "pass_one_sided\n"
            "%zu,%s,%s,%" PRIu64 ",%.12g,%.12g,%.12g,%s\n",
            n, trials, seed, qpc::role_name(cheater),
            qpc::strategy_name(strategy), n, qpc::role_name(cheater),
            qpc::strategy_name(strategy), trials, est.mean, est.std_error,
            bound, pass ? "pass" : "fail");
        out << line;
        std::printf("leakage: mean %.4f +- %.4f vs bound %.4f -> %s\n",
                    est.mean, est.std_error, bound, pass ? "pass" : "fail");
    } else { // abort-hist
        const qpc::AbortHistogram hist = qpc::abort_round_distribution(
            cheater, strategy, n, trials, seed);
        std::snprintf(line, sizeof line,
                      "# qpc experiment kind=abort-hist n=%zu trials=%" PRIu64
                      " seed=%" PRIu64 " cheater=%s strategy=%s\n",
                      n, trials, seed, qpc::role_name(cheater),
                      qpc::strategy_name(strategy));
        out << line << "m,count,predicted_probability\n";
        unsigned within = 0, populated = 0;
        for (std::size_t m = 1; m <= n; ++m) {
            const bool guess_round = cheater == qpc::Role::Alice
                                         ? m % 2 == 0
                                         : m % 2 == 1;
            const unsigned k = cheater == qpc::Role::Alice
                                   ? static_cast<unsigned>(m / 2)
                                   : static_cast<unsigned>((m + 1) / 2);
            const double predicted =
                guess_round ? qpc::predicted_abort_mass(strategy, k) : 0.0;
            std::snprintf(line, sizeof line, "%zu,%" PRIu64 ",%.12g\n", m,
                          hist.abort_counts[m - 1], predicted);
            out << line;
            if (guess_round) {
                ++populated;
                const double freq =
                    static_cast<double>(hist.abort_counts[m - 1]) /
                    static_cast<double>(trials);
                const double sigma = std::sqrt(
                    predicted * (1.0 - predicted) /
                    static_cast<double>(trials));
                if (std::abs(freq - predicted) <= 3.0 * sigma)
                    ++within;
            }
        }
        std::snprintf(line, sizeof line,
                      "# equal_verdicts=%" PRIu64 " bins_within_3sigma=%u/%u\n",
                      hist.equal_verdicts, within, populated);
        out << line;
        std::printf("abort-hist: %u/%u bins within 3 sigma, %" PRIu64
                    " sessions never aborted\n",
                    within, populated, hist.equal_verdicts);
    }
    std::printf("wrote %s\n", out_path.c_str());
    return kExitEqual;
}

// ---- fig1 ----

int cmd_fig1(std::size_t n_max, std::size_t step, const std::string& out_path,
             const CommonOptions& opt) {
    namespace an = qpc::analysis;
    const auto rows = an::fig1_table(n_max, step);
    auto out = open_output(out_path);
    char line[160];
    std::snprintf(line, sizeof line,
                  "# qpc fig1 n_max=%zu step=%zu seed=%" PRIu64 "\n", n_max,
                  step, resolve_seed(opt));
    out << line << "n,p_inc,I_A,I_B\n";
    for (const auto& row : rows) {
        std::snprintf(line, sizeof line, "%zu,%.12g,%.12g,%.12g\n", row.n,
                      row.p_inc, row.i_alice, row.i_bob);
        out << line;
    }
    const auto& last = rows.back();
    std::printf("I_A(n<=%zu) max %.6f (limit %.6f, ceiling 14)\n", n_max,
                last.i_alice, an::leakage_limit_alice());
    std::printf("I_B(n<=%zu) max %.6f (limit %.6f, ceiling 13)\n", n_max,
                last.i_bob, an::leakage_limit_bob());
    std::printf("ceilings hold: %s\n",
                last.i_alice < 14.0 && last.i_bob < 13.0 ? "yes" : "no");
    std::printf("wrote %s\n", out_path.c_str());
    return kExitEqual;
}

// ---- serve / connect ----

int run_tcp(qpc::TcpChannel channel, qpc::Role role,
            const std::string& secret_text, unsigned reruns,
            const CommonOptions& opt) {
    if (reruns != 0)
        throw CLI::ValidationError(
            "--reruns is not supported over TCP; use compare");
    const qpc::PartyConfig cfg{role, parse_secret(secret_text, opt),
                               qpc::Strategy::Honest, resolve_params(opt)};
    qpc::SeededRng rng = qpc::SeededRng::derive(
        resolve_seed(opt),
        role == qpc::Role::Alice ? qpc::kStreamAlice : qpc::kStreamBob);
    const qpc::SessionOutcome outcome =
        qpc::run_party_session(cfg, channel, rng);
    channel.close();
    print_outcome(outcome);
    return outcome.verdict == qpc::Verdict::Equal ? kExitEqual
                                                  : kExitNotEqual;
}

std::pair<std::string, std::uint16_t> split_host_port(const std::string& s) {
    const auto colon = s.rfind(':');
    if (colon == std::string::npos)
        return {s, qpc::kDefaultPort};
    const std::string host = s.substr(0, colon);
    const int port = std::stoi(s.substr(colon + 1));
    if (port < 0 || port > 65535)
        throw CLI::ValidationError("port out of range");
    return {host.empty() ? std::string("0.0.0.0") : host,
            static_cast<std::uint16_t>(port)};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Two-party quantum private comparison: simulate sessions, run "
        "adversarial experiments, and emit analysis tables"};
    app.require_subcommand(1);

    // compare
    auto* compare = app.add_subcommand(
        "compare", "Run one honest in-process comparison");
    std::string secret_a, secret_b, transcript_path;
    unsigned reruns = 0;
    CommonOptions compare_opt;
    compare->add_option("a", secret_a, "Alice's secret ('0'/'1' or 0x hex)")
        ->required();
    compare->add_option("b", secret_b, "Bob's secret")->required();
    compare->add_option("--reruns", reruns,
                        "Verification reruns on masked inputs after Equal");
    compare->add_option("--transcript", transcript_path,
                        "Write the deciding run's transcript here");
    add_common(compare, compare_opt);

    // experiment
    auto* experiment = app.add_subcommand(
        "experiment", "Monte Carlo experiment, CSV output");
    std::string kind, out_path = "experiment.csv";
    std::size_t exp_n = 8;
    std::uint64_t trials = 100000;
    qpc::Role cheater = qpc::Role::Alice;
    qpc::Strategy strategy = qpc::Strategy::CheatOptimal;
    CommonOptions experiment_opt;
    experiment
        ->add_option("kind", kind, "One of: pinc, leakage, abort-hist")
        ->required()
        ->check(CLI::IsMember({"pinc", "leakage", "abort-hist"}));
    experiment->add_option("--n", exp_n, "Bit-string length");
    experiment->add_option("--trials", trials, "Session count");
    const std::map<std::string, qpc::Role> roles{{"alice", qpc::Role::Alice},
                                                 {"bob", qpc::Role::Bob}};
    experiment->add_option("--cheater", cheater, "Cheating party")
        ->transform(CLI::CheckedTransformer(roles, CLI::ignore_case));
    const std::map<std::string, qpc::Strategy> strategies{
        {"honest", qpc::Strategy::Honest},
        {"optimal", qpc::Strategy::CheatOptimal},
        {"measure", qpc::Strategy::CheatHonestMeasure},
        {"random", qpc::Strategy::CheatRandomGuess}};
    experiment->add_option("--strategy", strategy, "Cheater behavior")
        ->transform(CLI::CheckedTransformer(strategies, CLI::ignore_case));
    experiment->add_option("--out", out_path, "CSV path");
    add_common(experiment, experiment_opt);

    // fig1
    auto* fig1 = app.add_subcommand(
        "fig1", "Leakage bounds vs bit-string length, CSV output");
    std::size_t n_max = 200, step = 1;
    std::string fig1_out = "fig1.csv";
    CommonOptions fig1_opt;
    fig1->add_option("--n-max", n_max, "Largest n");
    fig1->add_option("--step", step, "Row stride");
    fig1->add_option("--out", fig1_out, "CSV path");
    add_common(fig1, fig1_opt);

    // serve / connect
    auto* serve = app.add_subcommand(
        "serve", "Listen for one honest TCP session (plays Bob)");
    std::string listen_addr = "0.0.0.0:7408", serve_secret;
    unsigned serve_reruns = 0;
    CommonOptions serve_opt;
    serve->add_option("--listen", listen_addr, "host:port to bind");
    serve->add_option("--secret", serve_secret, "Bob's secret")->required();
    serve->add_option("--reruns", serve_reruns, "(rejected; compare only)");
    add_common(serve, serve_opt);

    auto* connect = app.add_subcommand(
        "connect", "Connect and run one honest TCP session (plays Alice)");
    std::string connect_addr = "127.0.0.1:7408", connect_secret;
    unsigned connect_reruns = 0;
    CommonOptions connect_opt;
    connect->add_option("--addr", connect_addr, "host:port to reach");
    connect->add_option("--secret", connect_secret, "Alice's secret")
        ->required();
    connect->add_option("--reruns", connect_reruns, "(rejected; compare only)");
    add_common(connect, connect_opt);

    try {
        app.parse(argc, argv);
        if (compare->parsed())
            return cmd_compare(secret_a, secret_b, reruns, transcript_path,
                               compare_opt);
        if (experiment->parsed())
            return cmd_experiment(kind, exp_n, trials, cheater, strategy,
                                  out_path, experiment_opt);
        if (fig1->parsed())
            return cmd_fig1(n_max, step, fig1_out, fig1_opt);
        if (serve->parsed()) {
            const auto [host, port] = split_host_port(listen_addr);
            qpc::TcpListener listener(port, host);
            std::printf("listening on port %u\n", listener.port());
            return run_tcp(listener.accept_one(), qpc::Role::Bob,
                           serve_secret, serve_reruns, serve_opt);
        }
        if (connect->parsed()) {
            const auto [host, port] = split_host_port(connect_addr);
            return run_tcp(qpc::TcpChannel::connect(host, port),
                           qpc::Role::Alice, connect_secret, connect_reruns,
                           connect_opt);
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    }
    return kExitError;
}
