// ppower: command-line front end.
//
// Subcommands: orders, count, enumerate, pseudopower, expsum, window,
// constants, stats.  Output is JSON (default), CSV, or text; reports are
// deterministic for a fixed configuration regardless of thread count.
// Exit codes: 0 success, 2 validation error, 3 feasibility-cap error.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "pseudopower/pseudopower.hpp"

using json = nlohmann::ordered_json;
namespace pp = pseudopower;

namespace {

constexpr int kSchemaVersion = 1;
constexpr std::uint64_t kSieveCap = 100000000;  // largest accepted x
constexpr std::uint64_t kDirectExpSumMaxX = 7;

struct Options {
    long long g = 0;
    std::uint64_t x = 0;
    long long a = 0;
    std::string h;  // decimal, may exceed 64 bits
    double tol = 1e-9;
    double cap = 1e7;
    unsigned threads = 0;
    std::string format = "json";
    std::string c_override;
    bool direct = false;
    std::uint64_t sqrt_check_cap = 0;
    std::string limit;
};

[[noreturn]] void fail(const std::string& code, const std::string& message, int status) {
    json err{{"code", code}, {"message", message}};
    std::cerr << err.dump() << "\n";
    std::exit(status);
}

mpz_class parse_big(const std::string& text, const std::string& what) {
    mpz_class v;
    if (text.empty() || mpz_set_str(v.get_mpz_t(), text.c_str(), 10) != 0)
        fail("validation", what + ": not a decimal integer: '" + text + "'", 2);
    return v;
}

json config_json(const std::string& command, const Options& o) {
    json cfg{{"command", command}, {"format", o.format},
             {"threads", o.threads == 0 ? pp::default_thread_count() : o.threads},
             {"tol", o.tol}, {"cap", o.cap}};
    if (o.g != 0) cfg["g"] = o.g;
    if (o.x != 0) cfg["x"] = o.x;
    return cfg;
}

json record_json(const pp::PrimeOrderRecord& rec) {
    json factors = json::array();
    for (auto [q, e] : rec.pm1_factorization.factors) factors.push_back({q, e});
    return json{{"p", rec.p},
                {"pm1_factorization", factors},
                {"order", rec.order},
                {"largest_pm1_prime", rec.largest_pm1_prime},
                {"subgroup_size", rec.subgroup_size}};
}

std::string factorization_text(const pp::Factorization& f) {
    if (f.factors.empty()) return "1";
    std::string out;
    for (auto [q, e] : f.factors) {
        if (!out.empty()) out += "*";
        out += std::to_string(q);
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

void emit_kv(const json& report, const std::string& format) {
    if (format == "json") {
        std::cout << report.dump(2) << "\n";
        return;
    }
    // flatten one level for csv/text
    const char* sep = format == "csv" ? "," : ": ";
    for (auto& [key, value] : report.items()) {
        if (value.is_structured()) {
            std::cout << key << sep << value.dump() << "\n";
        } else {
            std::cout << key << sep << (value.is_string() ? value.get<std::string>()
                                                          : value.dump())
                      << "\n";
        }
    }
}

pp::PseudopowerContext make_context(const Options& o) {
    if (o.x > kSieveCap)
        fail("feasibility", "x exceeds the sieve cap " + std::to_string(kSieveCap), 3);
    return pp::build_context(o.g, o.x, o.threads);
}

json context_summary(const pp::PseudopowerContext& ctx) {
    return json{{"g", ctx.g},
                {"x", ctx.x},
                {"M", ctx.primorial.get_str()},
                {"k", ctx.shared_prime_count},
                {"count_W", pp::count_W(ctx).get_str()},
                {"log_R", ctx.log_R},
                {"log_T", ctx.log_T}};
}

int cmd_orders(const Options& o) {
    auto ctx = make_context(o);
    if (o.format == "csv") {
        std::cout << "p,pm1_factorization,order,largest_pm1_prime,subgroup_size\n";
        for (const auto& rec : ctx.records)
            std::cout << rec.p << "," << factorization_text(rec.pm1_factorization) << ","
                      << rec.order << "," << rec.largest_pm1_prime << ","
                      << rec.subgroup_size << "\n";
        return 0;
    }
    json report{{"schema_version", kSchemaVersion}, {"config", config_json("orders", o)}};
    report["context"] = context_summary(ctx);
    json records = json::array();
    for (const auto& rec : ctx.records) records.push_back(record_json(rec));
    report["records"] = records;
    emit_kv(report, o.format);
    return 0;
}

int cmd_count(const Options& o) {
    auto ctx = make_context(o);
    json report{{"schema_version", kSchemaVersion}, {"config", config_json("count", o)}};
    report.update(context_summary(ctx));
    emit_kv(report, o.format);
    return 0;
}

int cmd_enumerate(const Options& o) {
    auto ctx = make_context(o);
    mpz_class h = o.h.empty() ? ctx.primorial : parse_big(o.h, "--h");
    pp::FeasibilityCaps caps;
    caps.max_output = o.cap;
    auto members = pp::enumerate_W(ctx, h, caps);
    json report{{"schema_version", kSchemaVersion},
                {"config", config_json("enumerate", o)},
                {"h", h.get_str()},
                {"count", members.size()}};
    json arr = json::array();
    for (const auto& n : members) arr.push_back(n.get_str());
    report["members"] = arr;
    emit_kv(report, o.format);
    return 0;
}

int cmd_pseudopower(const Options& o) {
    auto ctx = make_context(o);
    std::optional<mpz_class> limit;
    if (!o.limit.empty()) limit = parse_big(o.limit, "--limit");
    auto q = pp::least_pseudopower(ctx, limit);
    json report{{"schema_version", kSchemaVersion},
                {"config", config_json("pseudopower", o)},
                {"limit", (limit ? *limit : 2 * ctx.primorial + 1).get_str()},
                {"q", q ? json(q->get_str()) : json(nullptr)}};
    emit_kv(report, o.format);
    return 0;
}

int cmd_expsum(const Options& o) {
    auto ctx = make_context(o);
    pp::ExpSumReport rep = pp::exp_sum_crt(ctx, o.a);
    json report{{"schema_version", kSchemaVersion}, {"config", config_json("expsum", o)}};
    report["config"]["a"] = o.a;
    report["value"] = {{"re", rep.value.real()}, {"im", rep.value.imag()}};
    report["magnitude"] = rep.magnitude;
    report["gcd_a_M"] = rep.gcd_a_M.get_str();
    report["theorem2_bound"] = rep.theorem2_bound;
    report["ratio"] = rep.ratio;
    json per_prime = json::array();
    for (const auto& f : rep.per_prime)
        per_prime.push_back({{"p", f.p},
                             {"a_p", f.a_p},
                             {"magnitude", f.magnitude},
                             {"bound", pp::to_string(f.tag)},
                             {"reference", f.reference},
                             {"ratio", f.ratio}});
    report["per_prime"] = per_prime;
    if (o.direct) {
        if (ctx.x > kDirectExpSumMaxX)
            fail("feasibility",
                 "--direct is capped at x <= " + std::to_string(kDirectExpSumMaxX), 3);
        std::complex<double> d = pp::exp_sum_direct(ctx, o.a);
        report["direct"] = {{"re", d.real()}, {"im", d.imag()}};
        report["crt_direct_diff"] = std::abs(d - rep.value);
    }
    if (o.sqrt_check_cap > 0) {
        auto rows = pp::sqrt_bound_check(ctx, o.sqrt_check_cap);
        bool all_ok = true;
        for (const auto& r : rows) all_ok = all_ok && r.ok;
        report["sqrt_bound_check"] = {{"cap", o.sqrt_check_cap},
                                      {"rows", rows.size()},
                                      {"all_ok", all_ok}};
    }
    emit_kv(report, o.format);
    return 0;
}

int cmd_window(const Options& o) {
    auto ctx = make_context(o);
    mpz_class h = parse_big(o.h, "--h");
    pp::FeasibilityCaps caps;
    caps.max_output = o.cap;
    pp::WindowCount wc = pp::window_count(ctx, h, caps, o.threads);
    json report{{"schema_version", kSchemaVersion},
                {"config", config_json("window", o)},
                {"h", wc.h.get_str()},
                {"count", wc.count.get_str()},
                {"expected", wc.expected},
                {"discrepancy", wc.discrepancy},
                {"theorem3_bound", wc.bound},
                {"bound_ratio", wc.bound_ratio}};
    emit_kv(report, o.format);
    return 0;
}

int cmd_constants(const Options& o) {
    pp::PiecewiseBoundFunction f =
        o.c_override.empty() ? pp::build_C() : pp::load_C_definition(o.c_override);
    pp::ConstantsReport rep = pp::derive_constants(f, o.tol);
    json report{{"schema_version", kSchemaVersion},
                {"config", config_json("constants", o)}};
    json integrals = json::array();
    for (const auto& it : rep.integrals)
        integrals.push_back({{"name", it.name},
                             {"lo", it.lo},
                             {"hi", it.hi},
                             {"value", it.value},
                             {"error_bound", it.error_bound}});
    report["integrals"] = integrals;
    report["theta_lo"] = rep.theta_lo;
    report["theta_hi"] = rep.theta_hi;
    report["c_lower"] = rep.c_lower;
    report["eta"] = rep.eta;
    report["tau"] = rep.tau;
    report["gamma"] = rep.gamma;
    report["gamma_no_T"] = rep.gamma_no_T;
    report["gamma_elementary"] = rep.gamma_elementary;
    report["q_exponent"] = rep.q_exponent;
    report["grh_gamma"] = rep.grh_gamma;
    report["pom_c"] = rep.pom_c;
    emit_kv(report, o.format);
    return 0;
}

int cmd_stats(const Options& o) {
    if (o.x > kSieveCap)
        fail("feasibility", "x exceeds the sieve cap " + std::to_string(kSieveCap), 3);
    pp::StatsReport rep;
    if (o.g != 0) {
        auto ctx = pp::build_context(o.g, o.x, o.threads);
        rep = pp::stats_report(o.x, ctx);
    } else {
        rep = pp::stats_report(o.x);
    }
    json report{{"schema_version", kSchemaVersion}, {"config", config_json("stats", o)},
                {"x", rep.x},
                {"smooth_ratio", rep.smooth_ratio},
                {"dickman_ref", rep.dickman_ref},
                {"goldfeld",
                 {{"below_sqrt", rep.goldfeld.below_sqrt},
                  {"above_sqrt", rep.goldfeld.above_sqrt},
                  {"total", rep.goldfeld.total},
                  {"ratio", rep.goldfeld.ratio},
                  {"total_ratio", rep.goldfeld.total_ratio},
                  {"limit_ref", 0.5}}}};
    if (rep.has_orders)
        report["orders"] = {{"geo_mean_order", rep.orders.geo_mean_order},
                            {"small_order_exceptions", rep.orders.small_order_exceptions},
                            {"partition_p0", rep.orders.partition_p0},
                            {"partition_p1", rep.orders.partition_p1},
                            {"partition_p2", rep.orders.partition_p2}};
    emit_kv(report, o.format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudopower toolkit"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--threads", o.threads, "worker threads (0 = hardware)");
        sub->add_option("--format", o.format, "json|csv|text")
            ->check(CLI::IsMember({"json", "csv", "text"}));
    };
    auto add_gx = [&](CLI::App* sub) {
        sub->add_option("--g", o.g, "base g, |g| >= 2")->required();
        sub->add_option("--x", o.x, "prime threshold x >= 2")->required();
        add_common(sub);
    };

    add_gx(app.add_subcommand("orders", "per-prime multiplicative-order table"));
    add_gx(app.add_subcommand("count", "exact #W_g(x), M_x and exponent sums"));

    auto* s_enum = app.add_subcommand("enumerate", "members of W_g(x) below h");
    add_gx(s_enum);
    s_enum->set_help_flag("--help", "print help");  // frees -h/--h for the window bound
    s_enum->add_option("--h", o.h, "window bound (decimal, defaults to M_x)");
    s_enum->add_option("--cap", o.cap, "feasibility cap on output size");

    auto* s_q = app.add_subcommand("pseudopower", "least x-pseudopower q_g(x)");
    add_gx(s_q);
    s_q->add_option("--limit", o.limit, "search limit (decimal, default 2M_x+1)");

    auto* s_exp = app.add_subcommand("expsum", "exponential sum S_{a,g}(x) via CRT");
    add_gx(s_exp);
    s_exp->add_option("--a", o.a, "frequency a")->required();
    s_exp->add_flag("--direct", o.direct, "also sum directly over W (small x only)");
    s_exp->add_option("--sqrt-check", o.sqrt_check_cap,
                      "exhaustively verify the sqrt subgroup bound up to this p");

    auto* s_win = app.add_subcommand("window", "exact N_g(x,h) and discrepancy");
    add_gx(s_win);
    s_win->set_help_flag("--help", "print help");  // frees -h/--h for the window bound
    s_win->add_option("--h", o.h, "window bound (decimal)")->required();
    s_win->add_option("--cap", o.cap, "feasibility cap");

    auto* s_const = app.add_subcommand("constants", "derive all constants from C(u)");
    s_const->add_option("--tol", o.tol, "quadrature tolerance");
    s_const->add_option("--c-override", o.c_override, "path to a C(u) definition file");
    add_common(s_const);

    auto* s_stats = app.add_subcommand("stats", "smooth/Goldfeld/order statistics");
    s_stats->add_option("--x", o.x, "threshold x")->required();
    s_stats->add_option("--g", o.g, "optional base for order statistics");
    add_common(s_stats);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        json err{{"code", "validation"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand("orders")) return cmd_orders(o);
        if (app.got_subcommand("count")) return cmd_count(o);
        if (app.got_subcommand("enumerate")) return cmd_enumerate(o);
        if (app.got_subcommand("pseudopower")) return cmd_pseudopower(o);
        if (app.got_subcommand("expsum")) return cmd_expsum(o);
        if (app.got_subcommand("window")) return cmd_window(o);
        if (app.got_subcommand("constants")) return cmd_constants(o);
        if (app.got_subcommand("stats")) return cmd_stats(o);
    } catch (const pp::feasibility_error& e) {
        fail("feasibility", e.what(), 3);
    } catch (const std::exception& e) {
        fail("validation", e.what(), 2);
    }
    return 2;
}
