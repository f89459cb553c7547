#include "CLI11.hpp"

#include "resroot/dims.hpp"
#include "resroot/format.hpp"
#include "resroot/parabolic.hpp"
#include "resroot/resonance.hpp"
#include "resroot/trace_io.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using namespace resroot;

constexpr int kOk = 0;
constexpr int kUsage = 2;     // invalid input
constexpr int kFalsified = 3; // side condition or verification failure

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::invalid_argument("cannot open output path: " + out_path);
    f << text;
}

RootSystem build_checked(const std::string& family, int rank) {
    return build_root_system({parse_family(family), rank});
}

// Every irreducible system with min_rank <= rank <= max_rank.
std::vector<RootSystemType> scope_types(int max_rank, int min_rank) {
    std::vector<RootSystemType> out;
    auto range = [&](Family f, int lo) {
        for (int n = std::max(lo, min_rank); n <= max_rank; ++n) out.push_back({f, n});
    };
    range(Family::A, 1);
    range(Family::B, 2);
    range(Family::C, 2);
    range(Family::BC, 1);
    range(Family::D, 4);
    for (RootSystemType t : {RootSystemType{Family::G2, 2}, RootSystemType{Family::F4, 4},
                             RootSystemType{Family::E6, 6}, RootSystemType{Family::E7, 7},
                             RootSystemType{Family::E8, 8}}) {
        if (t.rank >= min_rank && t.rank <= max_rank) out.push_back(t);
    }
    return out;
}

std::string type_str(RootSystemType t) {
    std::string name = family_name(t.family);
    // Exceptional family names already end in their rank digit.
    if (name.back() < '0' || name.back() > '9') name += std::to_string(t.rank);
    return name;
}

std::string pi_coeffs(const RootSystem& rs, int root) {
    std::ostringstream os;
    for (std::size_t k = 0; k < rs.roots[root].pi.size(); ++k) {
        if (k) os << ',';
        os << rs.roots[root].pi[k];
    }
    return os.str();
}

int cmd_roots(const std::string& family, int rank, OutputFormat fmt,
              const std::string& out) {
    RootSystem rs = build_checked(family, rank);
    Table t;
    t.columns = {"index", "coords", "base_coeffs", "height", "class"};
    for (int i = 0; i < rs.n_roots(); ++i) {
        t.rows.push_back({std::to_string(i), vec_str(rs.roots[i].v), pi_coeffs(rs, i),
                          std::to_string(rs.roots[i].height),
                          std::to_string(rs.class_of[i])});
    }
    emit(render(t, fmt), out);
    return kOk;
}

int cmd_table(int max_rank, OutputFormat fmt, const std::string& out) {
    Table t;
    t.columns = {"type", "adjacency", "bourbaki_node", "delta", "delta_prime",
                 "parabolic_codims", "min"};
    for (RootSystemType ty : scope_types(max_rank, 1)) {
        RootSystem rs = build_root_system(ty);
        std::ostringstream adj;
        bool first = true;
        for (int i = 0; i < rs.rank(); ++i) {
            for (int j = i + 1; j < rs.rank(); ++j) {
                if (dot(rs.roots[rs.base[i]].v, rs.roots[rs.base[j]].v) != 0) {
                    if (!first) adj << ' ';
                    adj << i + 1 << '-' << j + 1;
                    first = false;
                }
            }
        }
        std::ostringstream codims;
        int best = -1;
        for (auto [j, c] : maximal_parabolic_table(rs)) {
            if (j > 1) codims << ' ';
            codims << j << ':' << c;
            if (best < 0 || c < best) best = c;
        }
        t.rows.push_back({type_str(ty), rs.rank() > 1 ? adj.str() : "-",
                          std::to_string(rs.distinguished_bourbaki + 1),
                          pi_coeffs(rs, rs.highest),
                          rs.second_highest >= 0 ? pi_coeffs(rs, rs.second_highest) : "-",
                          codims.str(), std::to_string(best)});
    }
    emit(render(t, fmt), out);
    return kOk;
}

int cmd_parabolics(const std::string& family, int rank, OutputFormat fmt,
                   const std::string& out) {
    RootSystem rs = build_checked(family, rank);
    int r = minimal_resonant_codimension(rs);
    Table t;
    t.columns = {"vertex", "class_codim", "root_codim", "minimal"};
    for (auto [j, c] : maximal_parabolic_table(rs)) {
        std::vector<int> excluded;
        for (int k = 0; k < rs.rank(); ++k) {
            if (k != j - 1) excluded.push_back(k);
        }
        ParabolicSubalgebra q = standard_parabolic(rs, excluded);
        int root_codim = rs.n_roots() - static_cast<int>(q.root_set.size());
        t.rows.push_back({std::to_string(j), std::to_string(c), std::to_string(root_codim),
                          c == r ? "*" : ""});
    }
    emit(render(t, fmt), out);
    return kOk;
}

int cmd_average(const std::string& family, int rank, const std::string& lambda_csv,
                std::uint64_t seed, OutputFormat fmt, const std::string& out) {
    RootSystem rs = build_checked(family, rank);
    QVec lambda;
    if (lambda_csv.empty()) {
        lambda = random_lambda(rs, seed, 0, 0);
    } else {
        lambda = parse_vec(lambda_csv);
        if (static_cast<int>(lambda.size()) != rs.ambient_dim)
            throw std::invalid_argument("lambda needs " + std::to_string(rs.ambient_dim) +
                                        " coordinates");
    }
    AveragingTrace tr = run_averaging(rs, lambda);
    std::string text;
    switch (fmt) {
    case OutputFormat::Table: text = trace_to_text(rs, tr); break;
    case OutputFormat::JsonLines: text = trace_to_jsonl(rs, tr); break;
    case OutputFormat::Csv: text = trace_to_csv(rs, tr); break;
    }
    emit(text, out);
    return kOk;
}

int cmd_replay(const std::string& path, OutputFormat fmt, const std::string& out) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read trace file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    AveragingTrace tr = parse_trace(buf.str());
    ReplayReport rep = replay(tr);
    Table t;
    t.columns = {"valid", "failing_step", "detail"};
    t.rows.push_back({rep.ok ? "yes" : "no",
                      rep.ok ? "-" : std::to_string(rep.failing_step),
                      rep.ok ? "" : rep.detail});
    emit(render(t, fmt), out);
    return rep.ok ? kOk : kFalsified;
}

int verify_parabolicity(int max_rank, OutputFormat fmt, const std::string& out) {
    Table t;
    t.columns = {"system", "examined", "closed", "candidates", "confirmed", "failures"};
    bool ok = true;
    for (RootSystemType ty : std::vector<RootSystemType>{{Family::A, 2},
                                                         {Family::A, 3},
                                                         {Family::B, 2},
                                                         {Family::B, 3},
                                                         {Family::C, 3},
                                                         {Family::BC, 2},
                                                         {Family::BC, 3},
                                                         {Family::G2, 2}}) {
        if (ty.rank > max_rank) continue;
        CriterionReport rep = verify_parabolicity_criterion(build_root_system(ty));
        ok = ok && rep.ok();
        t.rows.push_back({type_str(ty), std::to_string(rep.examined),
                          std::to_string(rep.closed), std::to_string(rep.candidates),
                          std::to_string(rep.confirmed), std::to_string(rep.failures.size())});
    }
    emit(render(t, fmt), out);
    return ok ? kOk : kFalsified;
}

int verify_commutation(int max_rank, OutputFormat fmt, const std::string& out) {
    Table t;
    t.columns = {"system", "pivot", "commutes", "string_len", "nonproportional",
                 "a1_coeff", "coeff_ok"};
    bool ok = true;
    for (RootSystemType ty : scope_types(max_rank, 2)) {
        RootSystem rs = build_root_system(ty);
        int bh = select_beta_hat(rs);
        bool commutes = true;
        for (int j = 1; j < rs.rank(); ++j)
            commutes = commutes && rs.sum_of[bh][rs.base[j]] < 0;
        std::vector<int> str = root_string(rs, rs.base[0], bh);
        bool nonprop = !positively_proportional(rs.roots[bh].v, rs.roots[rs.base[0]].v);
        long coeff = rs.roots[rs.highest].pi[0];
        bool two = ty.family == Family::C || ty.family == Family::BC ||
                   ty.family == Family::E8 || ty.family == Family::F4 ||
                   ty.family == Family::G2;
        bool coeff_ok = coeff == (two ? 2 : 1);
        ok = ok && commutes && !str.empty() && nonprop && coeff_ok;
        t.rows.push_back({type_str(ty), pi_coeffs(rs, bh), commutes ? "yes" : "no",
                          std::to_string(str.size()), nonprop ? "yes" : "no",
                          std::to_string(coeff), coeff_ok ? "yes" : "no"});
    }
    emit(render(t, fmt), out);
    return ok ? kOk : kFalsified;
}

int verify_dims(int max_rank, OutputFormat fmt, const std::string& out) {
    Table t;
    t.columns = {"subject", "r", "v", "r_le_v"};
    bool ok = true;
    for (RootSystemType ty : scope_types(max_rank, 2)) {
        if (ty.family == Family::BC) continue;
        GroupSpec spec{{GroupFactor{ty, false}}};
        int r = r_of(spec);
        int v = v_of_split(ty);
        ok = ok && r <= v;
        t.rows.push_back({type_str(ty), std::to_string(r), std::to_string(v),
                          r <= v ? "yes" : "no"});
    }
    auto table_row = [&](KnownFamily fam, int param) {
        DimensionReport rep = known_dims(fam, param);
        std::ostringstream subject;
        subject << known_family_name(fam) << " n=" << param;
        t.rows.push_back({subject.str(), std::to_string(rep.r),
                          rep.v ? std::to_string(*rep.v) : "-",
                          rep.v && rep.r <= *rep.v ? "yes" : "no"});
        ok = ok && (!rep.v || rep.r <= *rep.v);
    };
    for (int n = 3; n <= 6; ++n) table_row(KnownFamily::SLnR, n);
    for (int n = 2; n <= 5; ++n) table_row(KnownFamily::Sp2nR, n);
    for (int n = 4; n <= 7; ++n) table_row(KnownFamily::SOnn, n);
    for (int n = 3; n <= 6; ++n) table_row(KnownFamily::SOnn1, n);
    emit(render(t, fmt), out);
    return ok ? kOk : kFalsified;
}

int verify_averaging(int max_rank, int trials, std::uint64_t seed, OutputFormat fmt,
                     const std::string& out) {
    std::vector<RootSystemType> types = scope_types(max_rank, 2);
    SweepResult res = averaging_sweep(types, trials, seed);
    Table t;
    t.columns = {"systems", "trials_each", "runs", "full", "replay_ok", "witness_ok"};
    t.rows.push_back({std::to_string(types.size()), std::to_string(trials),
                      std::to_string(res.runs), std::to_string(res.full),
                      std::to_string(res.replay_ok), std::to_string(res.witness_ok)});
    emit(render(t, fmt), out);
    bool ok = res.runs == res.full && res.runs == res.replay_ok &&
              res.runs == res.witness_ok &&
              res.runs == types.size() * static_cast<std::uint64_t>(trials);
    return ok ? kOk : kFalsified;
}

int verify_scaling(int trials, std::uint64_t seed, OutputFormat fmt,
                   const std::string& out) {
    const std::vector<RootSystemType> pool = {{Family::A, 2},  {Family::A, 3},
                                              {Family::B, 2},  {Family::C, 3},
                                              {Family::BC, 2}, {Family::D, 4},
                                              {Family::G2, 2}};
    std::vector<RootSystem> systems;
    for (RootSystemType ty : pool) systems.push_back(build_root_system(ty));
    int mismatches = 0;
    for (int k = 0; k < trials; ++k) {
        std::mt19937 rng(static_cast<std::uint32_t>(seed) ^
                         (0x9e3779b9u * static_cast<std::uint32_t>(k + 1)));
        const RootSystem& rs = systems[rng() % systems.size()];
        int r = minimal_resonant_codimension(rs);
        ExponentSet a;
        a.dim_m = static_cast<int>(rng() % static_cast<unsigned>(r + 2));
        a.volume = rng() % 2 == 0;
        int count = a.dim_m == 0 ? 0 : static_cast<int>(rng() % (a.dim_m + 1));
        for (int e = 0; e < count; ++e) {
            QVec v(rs.ambient_dim);
            for (int c = 0; c < rs.ambient_dim; ++c)
                v[c] = Rat(static_cast<long>(rng() % 11) - 5);
            // Half the time, aim at an actual root so resonance fires.
            if (rng() % 2 == 0) v = rs.roots[rng() % rs.n_roots()].v;
            a.exponents.push_back(v);
        }
        ExponentSet b = a;
        for (QVec& v : b.exponents) {
            Rat c(1 + static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 5));
            c.canonicalize();
            v = scaled(v, c);
        }
        bool same = true;
        for (std::size_t e = 0; e < a.exponents.size(); ++e) {
            if (resonant_roots(rs, a.exponents[e]) != resonant_roots(rs, b.exponents[e]))
                same = false;
        }
        OutcomeReport ra = classify_outcome(rs, a);
        OutcomeReport rb = classify_outcome(rs, b);
        same = same && ra.verdict == rb.verdict &&
               ra.resonant_classes == rb.resonant_classes &&
               ra.invariant_classes == rb.invariant_classes;
        if (!same) ++mismatches;
    }
    Table t;
    t.columns = {"trials", "mismatches"};
    t.rows.push_back({std::to_string(trials), std::to_string(mismatches)});
    emit(render(t, fmt), out);
    return mismatches == 0 ? kOk : kFalsified;
}

int cmd_dims(const std::string& spec_str, int dim_m, bool volume, const std::string& known,
             int param, OutputFormat fmt, const std::string& out) {
    Table t;
    t.columns = {"field", "value", "source"};
    if (!known.empty()) {
        DimensionReport rep = known_dims(parse_known_family(known), param);
        t.rows.push_back({"family", known_family_name(rep.family), ""});
        t.rows.push_back({"parameter", std::to_string(rep.parameter), ""});
        t.rows.push_back({"r", std::to_string(rep.r), rep.r_source});
        if (rep.v) t.rows.push_back({"v", std::to_string(*rep.v), rep.v_source});
        if (rep.n) t.rows.push_back({"n", std::to_string(*rep.n), rep.n_source});
        if (rep.d) t.rows.push_back({"d", std::to_string(*rep.d), rep.d_source});
        if (rep.d_prime)
            t.rows.push_back({"d_prime", std::to_string(*rep.d_prime), rep.d_prime_source});
        emit(render(t, fmt), out);
        return kOk;
    }
    if (spec_str.empty())
        throw std::invalid_argument("dims needs a group spec or --known FAMILY");
    GroupSpec spec = parse_group_spec(spec_str);
    t.rows.push_back({"spec", group_spec_str(spec), ""});
    t.rows.push_back({"r", std::to_string(r_of(spec)), "computed"});
    if (spec.factors.size() == 1 && !spec.factors[0].compact &&
        spec.factors[0].type.family != Family::BC && spec.factors[0].type.rank >= 2) {
        t.rows.push_back(
            {"v", std::to_string(v_of_split(spec.factors[0].type)), "computed"});
    }
    if (dim_m >= 0) {
        HypothesisVerdict verdict = theorem_hypothesis(spec, dim_m, volume);
        t.rows.push_back({"dim_m", std::to_string(dim_m), ""});
        t.rows.push_back({"clause", verdict.clause == 0 ? "none"
                                                        : std::to_string(verdict.clause),
                          ""});
        t.rows.push_back({"rank_one_factor", verdict.rank_one_factor ? "yes" : "no", ""});
    }
    emit(render(t, fmt), out);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact restricted root systems, parabolic classification and "
                 "measure-averaging traces"};
    app.require_subcommand(1);
    // Let --format and friends appear after the subcommand name too.
    app.fallthrough();

    std::string format = "table";
    std::string out_path;
    std::uint64_t seed = 0;
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"table", "json-lines", "csv"}));
    app.add_option("--out", out_path, "write output to this path instead of stdout");
    app.add_option("--seed", seed, "seed for randomized inputs");

    std::string family, lambda_csv, trace_path, verify_mode, spec_str, known;
    int rank = 0, max_rank = 8, trials = 0, dim_m = -1, param = 0;
    bool volume = false;

    CLI::App* roots = app.add_subcommand("roots", "list the roots of one system");
    roots->add_option("family", family)->required();
    roots->add_option("rank", rank)->required();

    CLI::App* table = app.add_subcommand("table", "per-type summary with every maximal "
                                                  "parabolic's resonant codimension");
    table->add_option("--max-rank", max_rank)->check(CLI::Range(1, 8));

    CLI::App* parab = app.add_subcommand("parabolics", "maximal parabolics of one system");
    parab->add_option("family", family)->required();
    parab->add_option("rank", rank)->required();

    CLI::App* average = app.add_subcommand("average", "run the averaging derivation and "
                                                      "emit its trace");
    average->add_option("family", family)->required();
    average->add_option("rank", rank)->required();
    average->add_option("--lambda", lambda_csv, "exact rational coordinates, comma separated");

    CLI::App* replay_cmd = app.add_subcommand("replay", "validate a previously saved trace");
    replay_cmd->add_option("trace", trace_path)->required();

    CLI::App* verify = app.add_subcommand("verify", "run a verification sweep");
    verify->add_option("mode", verify_mode)
        ->required()
        ->check(CLI::IsMember({"parabolicity", "commutation", "dims", "averaging",
                               "scaling"}));
    verify->add_option("--max-rank", max_rank)->check(CLI::Range(1, 8));
    verify->add_option("--trials", trials);

    CLI::App* dims_cmd = app.add_subcommand("dims", "critical dimensions and the "
                                                    "theorem hypothesis");
    dims_cmd->add_option("spec", spec_str, "factors like A3,A1* ('*' marks compact)");
    dims_cmd->add_option("--dim-m", dim_m);
    dims_cmd->add_flag("--volume", volume);
    dims_cmd->add_option("--known", known, "SL | Sp | SOnn | SOnn1");
    dims_cmd->add_option("--param", param);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Map every command-line problem onto the invalid-input exit code;
        // --help and --version still leave with status 0.
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        OutputFormat fmt = parse_format(format);
        if (*roots) return cmd_roots(family, rank, fmt, out_path);
        if (*table) return cmd_table(max_rank, fmt, out_path);
        if (*parab) return cmd_parabolics(family, rank, fmt, out_path);
        if (*average) return cmd_average(family, rank, lambda_csv, seed, fmt, out_path);
        if (*replay_cmd) return cmd_replay(trace_path, fmt, out_path);
        if (*verify) {
            if (verify_mode == "parabolicity")
                return verify_parabolicity(std::min(max_rank, 3), fmt, out_path);
            if (verify_mode == "commutation")
                return verify_commutation(max_rank, fmt, out_path);
            if (verify_mode == "dims") return verify_dims(max_rank, fmt, out_path);
            if (verify_mode == "averaging")
                return verify_averaging(max_rank, trials > 0 ? trials : 25, seed, fmt,
                                        out_path);
            return verify_scaling(trials > 0 ? trials : 200, seed, fmt, out_path);
        }
        if (*dims_cmd) return cmd_dims(spec_str, dim_m, volume, known, param, fmt, out_path);
    } catch (const SideConditionError& e) {
        std::cerr << "side condition failed: " << e.what() << '\n';
        return kFalsified;
    } catch (const InfeasibleSelectionError& e) {
        std::cerr << "infeasible selection: " << e.what() << '\n';
        return kFalsified;
    } catch (const TraceParseError& e) {
        std::cerr << "trace parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const CapabilityError& e) {
        std::cerr << "not supported: " << e.what() << '\n';
        return kUsage;
    } catch (const OutOfTableError& e) {
        std::cerr << "out of table: " << e.what() << '\n';
        return kUsage;
    } catch (const UndefinedQuantityError& e) {
        std::cerr << "undefined quantity: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kUsage;
}
