#include "resroot/dims.hpp"

#include "resroot/parabolic.hpp"

#include <algorithm>
#include <cctype>

namespace resroot {

namespace {

GroupFactor parse_factor(const std::string& token) {
    if (token.empty()) throw std::invalid_argument("empty factor in group spec");
    std::string body = token;
    GroupFactor f;
    if (body.back() == '*') {
        f.compact = true;
        body.pop_back();
    }
    // Longest family name first so "BC2" does not read as B with junk.
    static const std::pair<const char*, Family> names[] = {
        {"BC", Family::BC}, {"E6", Family::E6}, {"E7", Family::E7}, {"E8", Family::E8},
        {"F4", Family::F4}, {"G2", Family::G2}, {"A", Family::A},   {"B", Family::B},
        {"C", Family::C},   {"D", Family::D},
    };
    for (const auto& [name, fam] : names) {
        if (body.rfind(name, 0) != 0) continue;
        std::string digits = body.substr(std::string(name).size());
        f.type.family = fam;
        if (digits.empty()) {
            // Fixed-rank families may omit the rank.
            switch (fam) {
            case Family::E6: f.type.rank = 6; break;
            case Family::E7: f.type.rank = 7; break;
            case Family::E8: f.type.rank = 8; break;
            case Family::F4: f.type.rank = 4; break;
            case Family::G2: f.type.rank = 2; break;
            default:
                throw std::invalid_argument("factor '" + token + "' is missing its rank");
            }
        } else {
            for (char c : digits) {
                if (!std::isdigit(static_cast<unsigned char>(c)))
                    throw std::invalid_argument("bad rank in factor '" + token + "'");
            }
            f.type.rank = std::stoi(digits);
        }
        validate_type(f.type);
        return f;
    }
    throw std::invalid_argument("unknown family in factor '" + token + "'");
}

} // namespace

GroupSpec parse_group_spec(const std::string& text) {
    GroupSpec spec;
    std::string token;
    for (char c : text + ",") {
        if (c == ',') {
            if (token.empty())
                throw std::invalid_argument("empty factor in group spec '" + text + "'");
            spec.factors.push_back(parse_factor(token));
            token.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            token += c;
        }
    }
    if (spec.factors.empty()) throw std::invalid_argument("group spec has no factors");
    return spec;
}

std::string group_spec_str(const GroupSpec& spec) {
    std::string out;
    for (std::size_t i = 0; i < spec.factors.size(); ++i) {
        if (i) out += ',';
        Family fam = spec.factors[i].type.family;
        out += family_name(fam);
        // Exceptional family names already carry their rank digit.
        if (family_name(fam).back() < '0' || family_name(fam).back() > '9')
            out += std::to_string(spec.factors[i].type.rank);
        if (spec.factors[i].compact) out += '*';
    }
    return out;
}

int r_of(const GroupSpec& spec) {
    int best = -1;
    for (const GroupFactor& f : spec.factors) {
        if (f.compact) continue;
        validate_type(f.type);
        int r = f.type.rank == 1 ? 1 : minimal_resonant_codimension(build_root_system(f.type));
        if (best < 0 || r < best) best = r;
    }
    if (best < 0)
        throw UndefinedQuantityError(
            "r_of: every factor is compact, so no critical codimension exists");
    return best;
}

int v_of_split(RootSystemType type) {
    validate_type(type);
    if (type.family == Family::BC)
        throw std::invalid_argument(
            "v_of_split: the non-reduced family has no split interpretation");
    RootSystem rs = build_root_system(type);
    int best = -1;
    for (int j = 0; j < rs.rank(); ++j) {
        std::vector<int> excluded;
        for (int k = 0; k < rs.rank(); ++k) {
            if (k != j) excluded.push_back(k);
        }
        ParabolicSubalgebra q = standard_parabolic(rs, excluded);
        int codim = rs.n_roots() - static_cast<int>(q.root_set.size());
        if (best < 0 || codim < best) best = codim;
    }
    return best;
}

int d_prime_of(long d_tilde) {
    if (d_tilde < 1) throw std::invalid_argument("d_prime_of: argument must be positive");
    long k = 1;
    while (k * (k + 1) / 2 < d_tilde) ++k;
    return static_cast<int>(k);
}

std::string known_family_name(KnownFamily f) {
    switch (f) {
    case KnownFamily::SLnR: return "SL(n,R)";
    case KnownFamily::Sp2nR: return "Sp(2n,R)";
    case KnownFamily::SOnn: return "SO(n,n)";
    case KnownFamily::SOnn1: return "SO(n,n+1)";
    }
    throw std::logic_error("known_family_name: bad enum value");
}

KnownFamily parse_known_family(const std::string& s) {
    if (s == "SL" || s == "SL(n,R)" || s == "sl") return KnownFamily::SLnR;
    if (s == "Sp" || s == "Sp(2n,R)" || s == "sp") return KnownFamily::Sp2nR;
    if (s == "SOnn" || s == "SO(n,n)" || s == "sonn") return KnownFamily::SOnn;
    if (s == "SOnn1" || s == "SO(n,n+1)" || s == "sonn1") return KnownFamily::SOnn1;
    throw std::invalid_argument("unknown group family: " + s);
}

DimensionReport known_dims(KnownFamily family, int parameter) {
    DimensionReport rep;
    rep.family = family;
    rep.parameter = parameter;
    const int n = parameter;
    RootSystemType restricted{};

    switch (family) {
    case KnownFamily::SLnR:
        if (n < 3) throw OutOfTableError("SL(n,R) table starts at n = 3");
        rep.n = n;
        rep.n_source = "table";
        rep.v = n - 1;
        rep.v_source = "table";
        rep.r = n - 1;
        restricted = {Family::A, n - 1};
        break;
    case KnownFamily::Sp2nR:
        if (n < 2) throw OutOfTableError("Sp(2n,R) table starts at n = 2");
        rep.n = 2 * n;
        rep.n_source = "table";
        rep.v = 2 * n - 1;
        rep.v_source = "table";
        rep.r = 2 * n - 1;
        restricted = {Family::C, n};
        break;
    case KnownFamily::SOnn:
        if (n < 4) throw OutOfTableError("SO(n,n) table starts at n = 4");
        rep.n = 2 * n;
        rep.n_source = "table";
        rep.d = 2 * n - 1;
        rep.d_source = "table";
        rep.d_prime = 2 * n - 1;
        rep.d_prime_source = "table";
        rep.v = 2 * n - 2;
        rep.v_source = "table";
        rep.r = 2 * n - 2;
        restricted = {Family::D, n};
        break;
    case KnownFamily::SOnn1:
        if (n < 3) throw OutOfTableError("SO(n,n+1) table starts at n = 3");
        rep.n = 2 * n + 1;
        rep.n_source = "table";
        rep.d = 2 * n;
        rep.d_source = "table";
        rep.v = 2 * n - 1;
        rep.v_source = "table";
        rep.r = 2 * n - 1;
        restricted = {Family::B, n};
        break;
    }

    // The r column is never trusted from the table: recompute it from the
    // restricted system and insist they agree.
    RootSystem rs = build_root_system(restricted);
    if (minimal_resonant_codimension(rs) != rep.r)
        throw std::logic_error("known_dims: table r disagrees with the computed value");
    rep.r_source = "computed";

    // For the orthogonal families the dimension of the split group is a
    // triangular number, pinning d' exactly; cross-check when stated.
    if (rep.d_prime) {
        long dim = rs.n_roots() + rs.rank();
        if (d_prime_of(dim) != *rep.d_prime)
            throw std::logic_error("known_dims: table d' disagrees with the computed value");
    }
    return rep;
}

HypothesisVerdict theorem_hypothesis(const GroupSpec& spec, int dim_m,
                                     bool volume_preserving) {
    if (dim_m < 0)
        throw std::invalid_argument("theorem_hypothesis: negative manifold dimension");
    HypothesisVerdict verdict;
    for (const GroupFactor& f : spec.factors) {
        if (!f.compact && f.type.rank == 1) verdict.rank_one_factor = true;
    }
    verdict.r = r_of(spec);
    if (dim_m < verdict.r)
        verdict.clause = 1;
    else if (dim_m == verdict.r && volume_preserving)
        verdict.clause = 2;
    return verdict;
}

std::vector<FactorRun> run_averaging_product(const GroupSpec& spec,
                                             const std::vector<QVec>& lambdas) {
    if (lambdas.size() != spec.factors.size())
        throw std::invalid_argument(
            "run_averaging_product: one functional per factor is required");
    std::vector<FactorRun> runs;
    for (std::size_t i = 0; i < spec.factors.size(); ++i) {
        FactorRun run;
        run.factor = spec.factors[i];
        if (run.factor.compact) {
            run.skipped_compact = true;
        } else {
            if (run.factor.type.rank < 2)
                throw CapabilityError(
                    "run_averaging_product: a non-compact rank-1 ideal cannot drive "
                    "the pipeline");
            run.trace = run_averaging(build_root_system(run.factor.type), lambdas[i]);
        }
        runs.push_back(std::move(run));
    }
    return runs;
}

} // namespace resroot
