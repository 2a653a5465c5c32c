#include "boxdim/cli.hpp"

#include "boxdim/counting.hpp"
#include "boxdim/geometry.hpp"
#include "boxdim/profile.hpp"
#include "boxdim/schedule.hpp"
#include "boxdim/schedule_spec.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

namespace boxdim::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, sep)) {
        parts.push_back(item);
    }
    return parts;
}

/// "a/b" or a decimal -> delta; "a,b,c" -> canonical triple.
LengthScale parse_scale(const std::string& text) {
    if (text.find(',') != std::string::npos) {
        const auto parts = split(text, ',');
        if (parts.size() != 3) {
            throw UsageError("a canonical scale is a,b,c for 3^-a 5^-b 7^-c, got '" + text + "'");
        }
        return LengthScale::canonical(parse_bigint(parts[0]), parse_bigint(parts[1]), parse_bigint(parts[2]));
    }
    return LengthScale::delta(parse_rational(text));
}

KSequence parse_k_rule(const std::string& rule) {
    if (rule == "paper") return KSequence::decimal_tower();
    if (rule == "desk") return KSequence::binary_tower();
    std::vector<BigInt> values;
    for (const auto& part : split(rule, ',')) {
        values.push_back(parse_bigint(part));
    }
    return KSequence::explicit_list(std::move(values));
}

std::pair<double, double> parse_window(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) {
        throw UsageError("window must be lo:hi, got '" + text + "'");
    }
    return {std::stod(parts[0]), std::stod(parts[1])};
}

mpfr_prec_t digits_to_bits(int digits) { return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873622)) + 64; }

/// Upper endpoint rounded up, for distances and excesses.
std::string upper_string(const Enclosure& e, int digits = 6) {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*RUg", digits, e.hi().get());
    std::string r(s);
    mpfr_free_str(s);
    return r;
}

// ------------------------------------------------------------ subcommands

int cmd_validate(const std::string& rule, std::size_t horizon, const PrecisionPolicy& policy, std::ostream& out) {
    const KValidationReport report = validate_k_sequence(parse_k_rule(rule), horizon, policy);
    Json j;
    j["k_rule"] = rule;
    j["horizon"] = horizon;
    Json entries = Json::array();
    for (const auto& e : report.entries) {
        entries.push_back({{"condition", e.condition}, {"j", e.j}, {"pass", e.pass}, {"detail", e.detail}});
    }
    j["checks"] = entries;
    j["final_tail_ratio"] = report.final_tail_ratio_decimal;
    j["all_pass"] = report.all_pass();
    out << j.dump(2) << '\n';
    return report.all_pass() ? kOk : kVerificationFailed;
}

int cmd_stages(const std::string& set, std::size_t stage, std::size_t cap, std::ostream& out) {
    const GeneratorSchedule s = resolve_schedule(set);
    const StageSet ss = stage_set(s, stage, cap);
    out << "stage,left_num,left_den,right_num,right_den\n";
    for (std::size_t i = 0; i < ss.size(); ++i) {
        const ConstructionInterval iv = ss.interval(i);
        out << stage << ',' << iv.left.get_num().get_str() << ',' << iv.left.get_den().get_str() << ','
            << iv.right.get_num().get_str() << ',' << iv.right.get_den().get_str() << '\n';
    }
    return kOk;
}

int cmd_count(const std::string& set, const std::string& delta_text, const std::string& neg_log_text,
              const std::string& bounds_text, std::optional<std::size_t> depth, const std::string& oracle, std::size_t cap,
              const PrecisionPolicy& policy, std::ostream& out, std::ostream& err) {
    if (oracle != "analytic" && oracle != "greedy" && oracle != "both") {
        throw UsageError("--oracle must be analytic, greedy or both");
    }
    if (int(!delta_text.empty()) + int(!neg_log_text.empty()) + int(!bounds_text.empty()) != 1) {
        throw UsageError("give exactly one of --delta, --neg-log or --neg-log-bounds");
    }
    const auto start = std::chrono::steady_clock::now();
    const GeneratorSchedule s = resolve_schedule(set);
    const LengthScale scale = [&] {
        if (!delta_text.empty()) {
            return parse_scale(delta_text);
        }
        if (!neg_log_text.empty()) {
            return LengthScale::neg_log(parse_rational(neg_log_text));
        }
        const auto parts = split(bounds_text, ':');
        if (parts.size() != 2) {
            throw UsageError("--neg-log-bounds takes lo:hi");
        }
        return LengthScale::neg_log_bounds(parse_rational(parts[0]), parse_rational(parts[1]));
    }();
    const StageLookup found = locate_stage(s, scale, policy);

    Json j;
    j["set"] = set;
    j["scale"] = scale.describe();
    j["stage"] = to_decimal(found.j);
    j["length_exponents"] = {to_decimal(found.counts.f3), to_decimal(found.counts.f5()), to_decimal(found.counts.f7)};
    bool ok = true;
    std::optional<BigInt> analytic;
    if (found.j <= (1UL << 20)) {
        analytic = analytic_count(s, scale, policy);
    }
    if (oracle != "greedy") {
        j["analytic"] = analytic ? to_decimal(*analytic) : "2^" + to_decimal(found.j);
    }
    if (oracle != "analytic") {
        if (!found.j.fits_ulong_p() || found.j.get_ui() > cap) {
            throw EnumerationCapExceeded(found.j.fits_ulong_p() ? found.j.get_ui() : cap + 1, cap);
        }
        const std::size_t jd = found.j.get_ui();
        const std::size_t d = depth ? *depth : std::min(jd + 2, std::max(jd, cap));
        j["depth"] = d;
        const CountBracket cover = greedy_cover_bracket(s, scale, d, cap, policy);
        const CountBracket pack = greedy_pack_bracket(s, scale, d, cap, policy);
        j["cover"] = {{"lower", to_decimal(cover.lower)}, {"upper", to_decimal(cover.upper)}, {"exact", cover.exact()}};
        j["pack"] = {{"lower", to_decimal(pack.lower)}, {"upper", to_decimal(pack.upper)}, {"exact", pack.exact()}};
        if (analytic) {
            const bool agree = cover.lower <= *analytic && *analytic <= cover.upper && pack.lower <= *analytic &&
                               *analytic <= pack.upper;
            j["agrees_with_analytic"] = agree;
            ok = agree;
        }
    }
    out << j.dump(2) << '\n';
    err << "elapsed_ms=" << std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count()
        << '\n';
    return ok ? kOk : kVerificationFailed;
}

Json product_json(const ProductReport& r) {
    Json j;
    j["delta"] = to_fraction(r.delta);
    j["depth"] = r.depth;
    j["j_F"] = to_decimal(r.j_f);
    j["j_G"] = to_decimal(r.j_g);
    j["N_F"] = to_decimal(r.n_f);
    j["N_G"] = to_decimal(r.n_g);
    j["product_cover_size"] = to_decimal(r.product_cover_size);
    j["product_cover_valid"] = r.product_cover_valid;
    j["eq7_holds"] = r.eq7_holds;
    j["grid_count"] = to_decimal(r.grid_count);
    j["grid_within_product"] = r.grid_within_product;
    j["grid_within_comparability"] = r.grid_within_comparability;
    j["M_F"] = to_decimal(r.m_f);
    j["M_G"] = to_decimal(r.m_g);
    j["product_packing_size"] = to_decimal(r.product_packing_size);
    j["pairs_checked"] = r.pairs_checked;
    j["packing_disjoint"] = r.packing_disjoint;
    j["eq8_holds"] = r.eq8_holds;
    return j;
}

int cmd_product(const std::string& f_name, const std::string& g_name, const std::string& delta_text,
                std::optional<std::size_t> depth, std::size_t sweep, std::size_t cap, const PrecisionPolicy& policy,
                std::ostream& out) {
    const GeneratorSchedule f = resolve_schedule(f_name);
    const GeneratorSchedule g = resolve_schedule(g_name);
    Json j;
    j["F"] = f_name;
    j["G"] = g_name;
    Json reports = Json::array();
    std::size_t rigorous_failures = 0;
    std::size_t grid_literal_failures = 0;
    auto record = [&](const ProductReport& r) {
        rigorous_failures += (!r.eq7_holds || !r.eq8_holds) ? 1 : 0;
        grid_literal_failures += r.grid_within_product ? 0 : 1;
        reports.push_back(product_json(r));
    };
    if (sweep > 0) {
        // Every depth d <= sweep and three scales from each stage range 1..d.
        for (std::size_t d = 1; d <= sweep; ++d) {
            for (std::size_t stage = 1; stage <= d; ++stage) {
                for (const ExactRational& delta : stage_scale_samples(f, stage)) {
                    const LengthScale scale = LengthScale::delta(delta);
                    if (stage_lookup(g, scale, policy) > d) {
                        continue;
                    }
                    record(verify_product_inequalities(f, g, scale, d, cap, policy));
                }
            }
        }
    } else {
        if (delta_text.empty()) {
            throw UsageError("product-check needs --delta or --sweep");
        }
        const LengthScale scale = parse_scale(delta_text);
        std::size_t d = 0;
        if (depth) {
            d = *depth;
        } else {
            const BigInt jf = stage_lookup(f, scale, policy);
            const BigInt jg = stage_lookup(g, scale, policy);
            const BigInt jm = std::max(jf, jg);
            if (!jm.fits_ulong_p() || jm.get_ui() > cap) {
                throw EnumerationCapExceeded(cap + 1, cap);
            }
            d = jm.get_ui();
        }
        record(verify_product_inequalities(f, g, scale, d, cap, policy));
    }
    j["reports"] = reports;
    j["checked"] = reports.size();
    j["eq7_eq8_failures"] = rigorous_failures;
    j["grid_above_product_count"] = grid_literal_failures;
    out << j.dump(2) << '\n';
    return rigorous_failures == 0 ? kOk : kVerificationFailed;
}

int cmd_dims(const std::string& set, std::size_t n_max, int digits, std::ostream& out) {
    const GeneratorSchedule s = resolve_schedule(set);
    const DimensionReport r = dimension_report(s, n_max, digits_to_bits(digits));
    Json j;
    j["set"] = set;
    j["n_max"] = n_max;
    j["precision_bits"] = r.precision;
    j["upper_target"] = r.upper_target.to_string(digits);
    j["lower_target"] = r.lower_target.to_string(digits);
    auto seq = [&](const std::vector<BoundaryValue>& values) {
        Json a = Json::array();
        for (const auto& v : values) {
            a.push_back({{"n", v.n},
                         {"boundary", "K_" + std::to_string(v.k_index)},
                         {"stage_digits", v.stage_digits},
                         {"phi", v.phi.to_string(digits)},
                         {"distance_to_target_at_most", upper_string(v.distance)}});
        }
        return a;
    };
    j["upper_sequence"] = seq(r.upper);
    j["lower_sequence"] = seq(r.lower);
    out << j.dump(2) << '\n';
    return kOk;
}

int cmd_bands(const std::string& set, std::size_t n_max, std::size_t interior, std::ostream& out) {
    const GeneratorSchedule s = resolve_schedule(set);
    Json j;
    j["set"] = set;
    for (Band band : {Band::Upper, Band::Lower}) {
        const BandReport r = midband_bound_check(s, band, n_max, interior);
        Json windows = Json::array();
        for (const auto& w : r.windows) {
            windows.push_back({{"n", w.n},
                               {"window", "(K_" + std::to_string(w.from_index) + ", K_" + std::to_string(w.to_index) + "]"},
                               {band == Band::Upper ? "max_phi" : "min_phi", w.extremum.to_string(20)},
                               {"attained_at_stage", w.extremum_stage},
                               {"stages_sampled", w.stages_sampled},
                               {"excess_beyond_target_at_most", upper_string(w.excess)}});
        }
        j[band == Band::Upper ? "upper_band" : "lower_band"] = windows;
    }
    j["target"] = similarity_dimension(GeneratorKind::G5).to_string(20);
    out << j.dump(2) << '\n';
    return kOk;
}

int cmd_profile(const std::string& f_name, const std::string& g_name, double x_min, double x_max,
                std::size_t samples, bool summary, const PrecisionPolicy& policy, std::ostream& out) {
    const GeneratorSchedule f = resolve_schedule(f_name);
    const GeneratorSchedule g = resolve_schedule(g_name);
    if (summary) {
        const SumExtremaReport r = sum_profile_extrema(f, g, x_min, x_max, samples, policy);
        Json j;
        j["x_min"] = fmt_double(x_min);
        j["x_max"] = fmt_double(x_max);
        j["evaluations"] = r.evaluations;
        j["max_sum"] = r.max.sum.to_string(12);
        j["max_at"] = r.max.x_label;
        j["min_sum"] = r.min.sum.to_string(12);
        j["min_at"] = r.min.x_label;
        j["upper_target"] = fmt_double(r.upper_target);
        j["lower_target"] = fmt_double(r.lower_target);
        const bool strict = r.max.sum.certainly_below(1.20) && r.min.sum.certainly_above(0.75);
        j["strictly_inside"] = strict;
        out << j.dump(2) << '\n';
        return strict ? kOk : kVerificationFailed;
    }
    if (!(x_min > 1.0) || !(x_min < x_max)) {
        throw UsageError("profile needs 1 < x-min < x-max");
    }
    out << "x,loglog_x,j_F,phi_F,j_G,phi_G,phi_sum\n";
    for (double x : loglog_grid(std::log(std::log(x_min)), std::log(std::log(x_max)), samples)) {
        const LengthScale scale = LengthScale::neg_log(ExactRational(x));
        const ProfileSample pf = phi(f, scale, policy);
        const ProfileSample pg = phi(g, scale, policy);
        out << fmt_double(x) << ',' << fmt_double(std::log(std::log(x))) << ',' << to_decimal(pf.j) << ','
            << pf.phi.to_string(17) << ',' << to_decimal(pg.j) << ',' << pg.phi.to_string(17) << ','
            << (pf.phi + pg.phi).to_string(17) << '\n';
    }
    return kOk;
}

int cmd_figure1(const std::string& f_name, const std::string& g_name, const std::string& window,
                std::size_t samples, const PrecisionPolicy& policy, std::ostream& out) {
    const GeneratorSchedule f = resolve_schedule(f_name);
    const GeneratorSchedule g = resolve_schedule(g_name);
    const auto [u_min, u_max] = parse_window(window);
    out << "loglog_x,phi_F,phi_G\n";
    const std::vector<double> xs = loglog_grid(u_min, u_max, samples);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double u = u_min + (u_max - u_min) * static_cast<double>(i) / static_cast<double>(samples - 1);
        const LengthScale scale = LengthScale::neg_log(ExactRational(xs[i]));
        out << fmt_double(u) << ',' << phi(f, scale, policy).phi.to_string(17) << ','
            << phi(g, scale, policy).phi.to_string(17) << '\n';
    }
    return kOk;
}

int cmd_phase(const std::string& f_name, const std::string& g_name, double x_min, double x_max, std::size_t samples,
              bool csv, const PrecisionPolicy& policy, std::ostream& out) {
    if (!(x_min > 0) || !(x_min < x_max) || samples == 0) {
        throw UsageError("phase-check needs 0 < x-min < x-max and samples > 0");
    }
    const GeneratorSchedule f = resolve_schedule(f_name);
    const GeneratorSchedule g = resolve_schedule(g_name);
    const double a = std::log(x_min);
    const double b = std::log(x_max);
    std::size_t violations = 0;
    std::map<std::string, std::size_t> attribution;
    if (csv) {
        out << "x,j_F,index_F,j_G,index_G,upper_violation,lower_violation\n";
    }
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = samples == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(samples - 1);
        const double x = std::clamp(std::exp(a + (b - a) * t), x_min, x_max);
        const PhaseReport r = phase_disjointness(f, g, LengthScale::neg_log(ExactRational(x)), policy);
        violations += r.holds() ? 0 : 1;
        ++attribution["F run K_" + std::to_string(r.index_f) + " / G run K_" + std::to_string(r.index_g)];
        if (csv) {
            out << fmt_double(x) << ',' << to_decimal(r.j_f) << ',' << r.index_f << ',' << to_decimal(r.j_g) << ','
                << r.index_g << ',' << (r.upper_violation() ? 1 : 0) << ',' << (r.lower_violation() ? 1 : 0) << '\n';
        }
    }
    if (!csv) {
        Json j;
        j["samples"] = samples;
        j["x_min"] = fmt_double(x_min);
        j["x_max"] = fmt_double(x_max);
        j["violations"] = violations;
        Json attr = Json::object();
        for (const auto& [key, count] : attribution) {
            attr[key] = count;
        }
        j["attribution"] = attr;
        out << j.dump(2) << '\n';
    }
    return violations == 0 ? kOk : kVerificationFailed;
}

int cmd_ratios(const std::string& set, std::size_t n_max, int digits, std::ostream& out) {
    const GeneratorSchedule s = resolve_schedule(set);
    const auto rows = ratio_limits(s, n_max, digits_to_bits(digits));
    const char* p = s.role() == ScheduleRole::G ? "g" : "f";
    out << "n,l,k_index," << p << "3_ratio,target3,distance3," << p << "7_ratio,target7,distance7\n";
    for (const auto& r : rows) {
        out << r.n << ',' << r.l << ',' << r.k_index << ',' << r.ratio3.to_string(digits) << ',' << r.target3 << ','
            << upper_string(r.distance3) << ',' << r.ratio7.to_string(digits) << ',' << r.target7 << ','
            << upper_string(r.distance7) << '\n';
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cantor-set box-counting toolkit"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string output;
    std::size_t precision_bits = PrecisionPolicy::from_environment().start_bits;
    std::size_t cap = kDefaultEnumerationCap;
    app.add_option("-o,--output", output, "write data here instead of standard output");
    app.add_option("--precision", precision_bits, "starting precision in bits (BOXDIM_PRECISION_BITS)")
        ->capture_default_str();
    app.add_option("--cap", cap, "stage enumeration cap")->capture_default_str();

    std::string k_rule = "paper";
    std::size_t horizon = 4;
    auto* validate = app.add_subcommand("validate", "check the K-sequence growth conditions");
    validate->add_option("--k", k_rule, "paper, desk, or a comma list")->capture_default_str();
    validate->add_option("--horizon", horizon)->capture_default_str();

    std::string set = "F";
    std::size_t stage = 2;
    auto* stages = app.add_subcommand("stages", "emit a stage set as exact CSV");
    stages->add_option("--set", set, "built-in name or schedule file")->capture_default_str();
    stages->add_option("--stage", stage)->capture_default_str();

    std::string delta_text;
    std::string neg_log_text;
    std::string bounds_text;
    std::optional<std::size_t> depth;
    std::string oracle = "both";
    auto* count = app.add_subcommand("count", "covering/packing counts at one scale");
    count->add_option("--set", set)->capture_default_str();
    count->add_option("--delta", delta_text, "a/b, decimal, or a,b,c for 3^-a 5^-b 7^-c");
    count->add_option("--neg-log", neg_log_text, "-log(delta) as an exact rational");
    count->add_option("--neg-log-bounds", bounds_text, "lo:hi, -log(delta) known only to this interval");
    count->add_option("--depth", depth, "oracle depth (default stage + 2, within the cap)");
    count->add_option("--oracle", oracle, "analytic, greedy or both")->capture_default_str();

    std::string f_name = "F";
    std::string g_name = "G";
    std::size_t sweep = 0;
    auto* product = app.add_subcommand("product-check", "check the product cover and packing inequalities");
    product->add_option("--f", f_name)->capture_default_str();
    product->add_option("--g", g_name)->capture_default_str();
    product->add_option("--delta", delta_text);
    product->add_option("--depth", depth);
    product->add_option("--sweep", sweep, "check every depth up to this with three scales per stage");

    std::size_t n_max = 2;
    int digits = 30;
    auto* dims = app.add_subcommand("dims", "phi along the tower boundaries");
    dims->add_option("--set", set)->capture_default_str();
    dims->add_option("--n-max", n_max)->capture_default_str();
    dims->add_option("--digits", digits)->capture_default_str();

    std::size_t band_n_max = 1;
    std::size_t interior = 8;
    auto* bands = app.add_subcommand("bands", "phi extrema over the mid-band windows");
    bands->add_option("--set", set)->capture_default_str();
    bands->add_option("--n-max", band_n_max)->capture_default_str();
    bands->add_option("--interior", interior, "extra stages sampled per run")->capture_default_str();

    double x_min = 1e4;
    double x_max = 1e70;
    std::size_t samples = 200;
    bool summary = false;
    auto* profile = app.add_subcommand("profile", "phi_F, phi_G and their sum on a log-log grid");
    profile->add_option("--f", f_name)->capture_default_str();
    profile->add_option("--g", g_name)->capture_default_str();
    profile->add_option("--x-min", x_min)->capture_default_str();
    profile->add_option("--x-max", x_max)->capture_default_str();
    profile->add_option("--samples", samples)->capture_default_str();
    profile->add_flag("--summary", summary, "report extrema of the sum, including tower boundaries");

    std::string window = "0.5:4.5";
    std::size_t fig_samples = 2000;
    auto* figure1 = app.add_subcommand("figure1", "phi_F and phi_G against log(log(-log delta))");
    figure1->add_option("--f", f_name)->capture_default_str();
    figure1->add_option("--g", g_name)->capture_default_str();
    figure1->add_option("--window", window, "loglog_x range lo:hi")->capture_default_str();
    figure1->add_option("--samples", fig_samples)->capture_default_str();

    double phase_min = 1.0;
    double phase_max = 1e70;
    std::size_t phase_samples = 10000;
    bool csv = false;
    auto* phase = app.add_subcommand("phase-check", "F and G never share an upper or lower phase");
    phase->add_option("--f", f_name)->capture_default_str();
    phase->add_option("--g", g_name)->capture_default_str();
    phase->add_option("--x-min", phase_min)->capture_default_str();
    phase->add_option("--x-max", phase_max)->capture_default_str();
    phase->add_option("--samples", phase_samples)->capture_default_str();
    phase->add_flag("--csv", csv, "one row per sample instead of a summary");

    std::size_t ratio_n_max = 1;
    int ratio_digits = 90;
    auto* ratios = app.add_subcommand("ratios", "counting-function ratios at the tower thresholds");
    ratios->add_option("--set", set)->capture_default_str();
    ratios->add_option("--n-max", ratio_n_max)->capture_default_str();
    ratios->add_option("--digits", ratio_digits)->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    PrecisionPolicy policy = PrecisionPolicy::from_environment();
    policy.start_bits = precision_bits;

    std::ofstream file;
    if (!output.empty()) {
        file.open(output, std::ios::binary);
        if (!file) {
            err << "error: cannot write " << output << '\n';
            return kUsageError;
        }
    }
    std::ostream& data = output.empty() ? out : file;

    try {
        if (*validate) return cmd_validate(k_rule, horizon, policy, data);
        if (*stages) return cmd_stages(set, stage, cap, data);
        if (*count) return cmd_count(set, delta_text, neg_log_text, bounds_text, depth, oracle, cap, policy, data, err);
        if (*product) return cmd_product(f_name, g_name, delta_text, depth, sweep, cap, policy, data);
        if (*dims) return cmd_dims(set, n_max, digits, data);
        if (*bands) return cmd_bands(set, band_n_max, interior, data);
        if (*profile) return cmd_profile(f_name, g_name, x_min, x_max, samples, summary, policy, data);
        if (*figure1) return cmd_figure1(f_name, g_name, window, fig_samples, policy, data);
        if (*phase) return cmd_phase(f_name, g_name, phase_min, phase_max, phase_samples, csv, policy, data);
        if (*ratios) return cmd_ratios(set, ratio_n_max, ratio_digits, data);
    } catch (const IndeterminateComparison& e) {
        err << "indeterminate: " << e.what() << " (needs about " << e.required_bits() << " bits)\n";
        return kIndeterminate;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kVerificationFailed;
    }
    return kUsageError;
}

}  // namespace boxdim::cli
