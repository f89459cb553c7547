#include "resroot/trace_io.hpp"

#include "json.hpp"

#include <sstream>
#include <vector>

namespace resroot {

namespace {

using nlohmann::json;

std::string pi_str(const RootSystem& rs, int root) {
    std::ostringstream os;
    const std::vector<long>& pi = rs.roots[root].pi;
    for (std::size_t k = 0; k < pi.size(); ++k) {
        if (k) os << ',';
        os << pi[k];
    }
    return os.str();
}

// Root lists serialize as base coefficients joined by '|'; empty lists as
// a bare '-'.
std::string roots_str(const RootSystem& rs, const std::vector<int>& ids) {
    if (ids.empty()) return "-";
    std::ostringstream os;
    for (std::size_t k = 0; k < ids.size(); ++k) {
        if (k) os << '|';
        os << pi_str(rs, ids[k]);
    }
    return os.str();
}

std::vector<int> state_roots(const RootSystem& rs, const InvarianceSet& st) {
    std::vector<int> ids;
    for (int c : st.classes) {
        for (int i : rs.classes[c].roots) ids.push_back(i);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

int parse_pi_root(const RootSystem& rs, const std::string& text, int line) {
    std::vector<long> pi;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        try {
            pi.push_back(std::stol(item));
        } catch (const std::exception&) {
            throw TraceParseError("line " + std::to_string(line) +
                                  ": bad base coefficient '" + item + "'");
        }
    }
    int id = rs.find_root_pi(pi);
    if (id < 0)
        throw TraceParseError("line " + std::to_string(line) + ": '" + text +
                              "' is not a root of this system");
    return id;
}

std::vector<int> parse_roots(const RootSystem& rs, const std::string& text, int line) {
    std::vector<int> ids;
    if (text == "-") return ids;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, '|')) ids.push_back(parse_pi_root(rs, item, line));
    return ids;
}

QVec parse_vec_at(const std::string& text, int line) {
    try {
        return parse_vec(text);
    } catch (const std::exception& e) {
        throw TraceParseError("line " + std::to_string(line) + ": " + e.what());
    }
}

} // namespace

std::string trace_to_text(const RootSystem& rs, const AveragingTrace& tr) {
    std::ostringstream os;
    os << "avtrace 1\n";
    os << "type " << family_name(tr.type.family) << ' ' << tr.type.rank << '\n';
    os << "lambda " << vec_str(tr.lambda) << '\n';
    os << "word ";
    if (tr.word.empty()) {
        os << '-';
    } else {
        for (std::size_t k = 0; k < tr.word.size(); ++k) {
            if (k) os << '|';
            os << tr.word[k];
        }
    }
    os << '\n';
    os << "lambda-prime " << vec_str(tr.lambda_prime) << '\n';
    os << "beta-hat " << pi_str(rs, tr.beta_hat) << '\n';
    os << "beta-prime " << pi_str(rs, tr.beta_prime) << '\n';
    os << "string " << roots_str(rs, tr.string_path) << '\n';
    for (std::size_t k = 0; k < tr.steps.size(); ++k) {
        const AveragingStep& st = tr.steps[k];
        os << "step " << k + 1 << ' ' << rule_name(st.rule) << " roots="
           << roots_str(rs, st.subgroup_roots) << " witness=" << vec_str(st.witness)
           << " after=" << roots_str(rs, state_roots(rs, st.after))
           << " a=" << (st.after.a_invariant ? 1 : 0) << " cite=" << rule_citation(st.rule)
           << '\n';
    }
    os << "final after=" << roots_str(rs, state_roots(rs, tr.final_state))
       << " a=" << (tr.final_state.a_invariant ? 1 : 0) << '\n';
    return os.str();
}

namespace {

json root_pi_json(const RootSystem& rs, int root) { return json(rs.roots[root].pi); }

json roots_json(const RootSystem& rs, const std::vector<int>& ids) {
    json arr = json::array();
    for (int i : ids) arr.push_back(root_pi_json(rs, i));
    return arr;
}

json vec_json(const QVec& v) {
    json arr = json::array();
    for (const Rat& x : v) arr.push_back(rat_str(x));
    return arr;
}

} // namespace

std::string trace_to_jsonl(const RootSystem& rs, const AveragingTrace& tr) {
    std::ostringstream os;
    json head;
    head["record"] = "header";
    head["format"] = 1;
    head["type"] = family_name(tr.type.family);
    head["rank"] = tr.type.rank;
    head["lambda"] = vec_json(tr.lambda);
    head["word"] = json(tr.word);
    head["lambda_prime"] = vec_json(tr.lambda_prime);
    head["beta_hat"] = root_pi_json(rs, tr.beta_hat);
    head["beta_prime"] = root_pi_json(rs, tr.beta_prime);
    head["string"] = roots_json(rs, tr.string_path);
    os << head.dump() << '\n';
    for (std::size_t k = 0; k < tr.steps.size(); ++k) {
        const AveragingStep& st = tr.steps[k];
        json rec;
        rec["record"] = "step";
        rec["index"] = k + 1;
        rec["rule"] = rule_name(st.rule);
        rec["roots"] = roots_json(rs, st.subgroup_roots);
        rec["witness"] = vec_json(st.witness);
        rec["after"] = roots_json(rs, state_roots(rs, st.after));
        rec["a_invariant"] = st.after.a_invariant;
        rec["citation"] = rule_citation(st.rule);
        os << rec.dump() << '\n';
    }
    json fin;
    fin["record"] = "final";
    fin["after"] = roots_json(rs, state_roots(rs, tr.final_state));
    fin["a_invariant"] = tr.final_state.a_invariant;
    os << fin.dump() << '\n';
    return os.str();
}

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> csv_split(const std::string& line, int lineno) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted)
        throw TraceParseError("line " + std::to_string(lineno) + ": unterminated quote");
    fields.push_back(cur);
    return fields;
}

const char* kCsvHeader =
    "record,index,rule,roots,witness,after,a_invariant,citation,type,rank,"
    "lambda,word,lambda_prime,beta_hat,beta_prime,string";

std::string word_str(const std::vector<int>& word) {
    if (word.empty()) return "-";
    std::ostringstream os;
    for (std::size_t k = 0; k < word.size(); ++k) {
        if (k) os << '|';
        os << word[k];
    }
    return os.str();
}

std::vector<int> parse_word(const std::string& text, int rank, int line) {
    std::vector<int> word;
    if (text == "-") return word;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, '|')) {
        try {
            word.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw TraceParseError("line " + std::to_string(line) + ": bad word entry '" +
                                  item + "'");
        }
        if (word.back() < 0 || word.back() >= rank)
            throw TraceParseError("line " + std::to_string(line) +
                                  ": word entry out of range");
    }
    return word;
}

} // namespace

std::string trace_to_csv(const RootSystem& rs, const AveragingTrace& tr) {
    std::ostringstream os;
    os << kCsvHeader << '\n';
    os << "header,,,,,,,," << family_name(tr.type.family) << ',' << tr.type.rank << ','
       << csv_quote(vec_str(tr.lambda)) << ',' << csv_quote(word_str(tr.word)) << ','
       << csv_quote(vec_str(tr.lambda_prime)) << ',' << csv_quote(pi_str(rs, tr.beta_hat))
       << ',' << csv_quote(pi_str(rs, tr.beta_prime)) << ','
       << csv_quote(roots_str(rs, tr.string_path)) << '\n';
    for (std::size_t k = 0; k < tr.steps.size(); ++k) {
        const AveragingStep& st = tr.steps[k];
        os << "step," << k + 1 << ',' << rule_name(st.rule) << ','
           << csv_quote(roots_str(rs, st.subgroup_roots)) << ','
           << csv_quote(vec_str(st.witness)) << ','
           << csv_quote(roots_str(rs, state_roots(rs, st.after))) << ','
           << (st.after.a_invariant ? 1 : 0) << ',' << rule_citation(st.rule)
           << ",,,,,,,,\n";
    }
    os << "final,,,,," << csv_quote(roots_str(rs, state_roots(rs, tr.final_state))) << ','
       << (tr.final_state.a_invariant ? 1 : 0) << ",,,,,,,,,\n";
    return os.str();
}

namespace {

InvarianceSet state_from_roots(const RootSystem& rs, const std::vector<int>& ids, bool a) {
    InvarianceSet st;
    st.a_invariant = a;
    for (int i : ids) st.classes.insert(rs.class_of[i]);
    return st;
}

bool parse_bool01(const std::string& s, int line) {
    if (s == "0") return false;
    if (s == "1") return true;
    throw TraceParseError("line " + std::to_string(line) + ": expected 0 or 1, got '" + s +
                          "'");
}

// Pulls "key=value" off a stream where value runs to the next space.
std::string expect_kv(std::istringstream& is, const std::string& key, int line) {
    std::string tok;
    if (!(is >> tok) || tok.rfind(key + "=", 0) != 0)
        throw TraceParseError("line " + std::to_string(line) + ": expected " + key + "=");
    return tok.substr(key.size() + 1);
}

AveragingTrace parse_text(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    int lineno = 0;
    auto next_line = [&]() -> std::string& {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty()) return line;
        }
        throw TraceParseError("unexpected end of trace at line " + std::to_string(lineno));
    };

    std::istringstream ls(next_line());
    std::string tag, val;
    ls >> tag >> val;
    if (tag != "avtrace" || val != "1")
        throw TraceParseError("line 1: not an avtrace version 1 file");

    AveragingTrace tr;
    {
        std::istringstream ts(next_line());
        std::string fam;
        int rank = 0;
        ts >> tag >> fam >> rank;
        if (tag != "type")
            throw TraceParseError("line " + std::to_string(lineno) + ": expected type");
        tr.type = {parse_family(fam), rank};
        validate_type(tr.type);
    }
    RootSystem rs = build_root_system(tr.type);

    auto tagged = [&](const std::string& want) {
        std::istringstream vs(next_line());
        std::string got, rest;
        vs >> got >> rest;
        if (got != want)
            throw TraceParseError("line " + std::to_string(lineno) + ": expected " + want);
        return rest;
    };
    tr.lambda = parse_vec_at(tagged("lambda"), lineno);
    tr.word = parse_word(tagged("word"), rs.rank(), lineno);
    tr.lambda_prime = parse_vec_at(tagged("lambda-prime"), lineno);
    tr.beta_hat = parse_pi_root(rs, tagged("beta-hat"), lineno);
    tr.beta_prime = parse_pi_root(rs, tagged("beta-prime"), lineno);
    tr.string_path = parse_roots(rs, tagged("string"), lineno);

    bool saw_final = false;
    while (!saw_final) {
        std::istringstream ss(next_line());
        ss >> tag;
        if (tag == "step") {
            int idx = 0;
            std::string rule;
            ss >> idx >> rule;
            if (idx != static_cast<int>(tr.steps.size()) + 1)
                throw TraceParseError("line " + std::to_string(lineno) +
                                      ": step records out of order");
            AveragingStep st;
            st.rule = parse_rule(rule);
            st.subgroup_roots = parse_roots(rs, expect_kv(ss, "roots", lineno), lineno);
            st.witness = parse_vec_at(expect_kv(ss, "witness", lineno), lineno);
            std::vector<int> after = parse_roots(rs, expect_kv(ss, "after", lineno), lineno);
            bool a = parse_bool01(expect_kv(ss, "a", lineno), lineno);
            st.after = state_from_roots(rs, after, a);
            expect_kv(ss, "cite", lineno); // informational; rule determines it
            tr.steps.push_back(std::move(st));
        } else if (tag == "final") {
            std::vector<int> after = parse_roots(rs, expect_kv(ss, "after", lineno), lineno);
            bool a = parse_bool01(expect_kv(ss, "a", lineno), lineno);
            tr.final_state = state_from_roots(rs, after, a);
            saw_final = true;
        } else {
            throw TraceParseError("line " + std::to_string(lineno) +
                                  ": expected step or final, got '" + tag + "'");
        }
    }
    return tr;
}

std::vector<int> roots_from_json(const RootSystem& rs, const json& arr, int line) {
    std::vector<int> ids;
    for (const json& item : arr) {
        std::vector<long> pi = item.get<std::vector<long>>();
        int id = rs.find_root_pi(pi);
        if (id < 0)
            throw TraceParseError("line " + std::to_string(line) +
                                  ": coefficients do not name a root");
        ids.push_back(id);
    }
    return ids;
}

QVec vec_from_json(const json& arr, int line) {
    QVec v;
    for (const json& item : arr) {
        try {
            v.push_back(parse_rat(item.get<std::string>()));
        } catch (const std::exception& e) {
            throw TraceParseError("line " + std::to_string(line) + ": " + e.what());
        }
    }
    return v;
}

AveragingTrace parse_jsonl(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    int lineno = 0;
    AveragingTrace tr;
    RootSystem rs;
    bool saw_header = false, saw_final = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (saw_final)
            throw TraceParseError("line " + std::to_string(lineno) +
                                  ": record after the final one");
        json rec;
        try {
            rec = json::parse(line);
        } catch (const std::exception& e) {
            throw TraceParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
        const std::string kind = rec.value("record", "");
        try {
            if (kind == "header") {
                if (saw_header)
                    throw TraceParseError("line " + std::to_string(lineno) +
                                          ": duplicate header");
                tr.type = {parse_family(rec.at("type").get<std::string>()),
                           rec.at("rank").get<int>()};
                validate_type(tr.type);
                rs = build_root_system(tr.type);
                tr.lambda = vec_from_json(rec.at("lambda"), lineno);
                tr.word = rec.at("word").get<std::vector<int>>();
                tr.lambda_prime = vec_from_json(rec.at("lambda_prime"), lineno);
                tr.beta_hat = roots_from_json(rs, json::array({rec.at("beta_hat")}), lineno)[0];
                tr.beta_prime =
                    roots_from_json(rs, json::array({rec.at("beta_prime")}), lineno)[0];
                tr.string_path = roots_from_json(rs, rec.at("string"), lineno);
                saw_header = true;
            } else if (kind == "step") {
                if (!saw_header)
                    throw TraceParseError("line " + std::to_string(lineno) +
                                          ": step before header");
                AveragingStep st;
                st.rule = parse_rule(rec.at("rule").get<std::string>());
                st.subgroup_roots = roots_from_json(rs, rec.at("roots"), lineno);
                st.witness = vec_from_json(rec.at("witness"), lineno);
                st.after = state_from_roots(rs, roots_from_json(rs, rec.at("after"), lineno),
                                            rec.at("a_invariant").get<bool>());
                tr.steps.push_back(std::move(st));
            } else if (kind == "final") {
                if (!saw_header)
                    throw TraceParseError("line " + std::to_string(lineno) +
                                          ": final before header");
                tr.final_state =
                    state_from_roots(rs, roots_from_json(rs, rec.at("after"), lineno),
                                     rec.at("a_invariant").get<bool>());
                saw_final = true;
            } else {
                throw TraceParseError("line " + std::to_string(lineno) +
                                      ": unknown record kind '" + kind + "'");
            }
        } catch (const TraceParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw TraceParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!saw_header || !saw_final)
        throw TraceParseError("trace is missing its header or final record");
    return tr;
}

AveragingTrace parse_csv(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line) || csv_split(line, 1) != csv_split(kCsvHeader, 1))
        throw TraceParseError("line 1: unrecognized csv schema");
    lineno = 1;
    AveragingTrace tr;
    RootSystem rs;
    bool saw_header = false, saw_final = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f = csv_split(line, lineno);
        if (f.size() != 16)
            throw TraceParseError("line " + std::to_string(lineno) +
                                  ": expected 16 fields, got " + std::to_string(f.size()));
        if (f[0] == "header") {
            tr.type = {parse_family(f[8]), std::stoi(f[9])};
            validate_type(tr.type);
            rs = build_root_system(tr.type);
            tr.lambda = parse_vec_at(f[10], lineno);
            tr.word = parse_word(f[11], rs.rank(), lineno);
            tr.lambda_prime = parse_vec_at(f[12], lineno);
            tr.beta_hat = parse_pi_root(rs, f[13], lineno);
            tr.beta_prime = parse_pi_root(rs, f[14], lineno);
            tr.string_path = parse_roots(rs, f[15], lineno);
            saw_header = true;
        } else if (f[0] == "step") {
            if (!saw_header)
                throw TraceParseError("line " + std::to_string(lineno) +
                                      ": step before header");
            AveragingStep st;
            st.rule = parse_rule(f[2]);
            st.subgroup_roots = parse_roots(rs, f[3], lineno);
            st.witness = parse_vec_at(f[4], lineno);
            st.after = state_from_roots(rs, parse_roots(rs, f[5], lineno),
                                        parse_bool01(f[6], lineno));
            tr.steps.push_back(std::move(st));
        } else if (f[0] == "final") {
            if (!saw_header)
                throw TraceParseError("line " + std::to_string(lineno) +
                                      ": final before header");
            tr.final_state = state_from_roots(rs, parse_roots(rs, f[5], lineno),
                                              parse_bool01(f[6], lineno));
            saw_final = true;
        } else {
            throw TraceParseError("line " + std::to_string(lineno) +
                                  ": unknown record kind '" + f[0] + "'");
        }
    }
    if (!saw_header || !saw_final)
        throw TraceParseError("trace is missing its header or final record");
    return tr;
}

} // namespace

AveragingTrace parse_trace(const std::string& content) {
    std::size_t k = content.find_first_not_of(" \t\r\n");
    if (k == std::string::npos) throw TraceParseError("empty trace");
    try {
        if (content.compare(k, 7, "avtrace") == 0) return parse_text(content);
        if (content[k] == '{') return parse_jsonl(content);
        if (content.compare(k, 7, "record,") == 0) return parse_csv(content);
    } catch (const TraceParseError&) {
        throw;
    } catch (const std::exception& e) {
        // Bad families, ranks and numbers surface from helpers as generic
        // errors; fold them into the parse-error channel.
        throw TraceParseError(e.what());
    }
    throw TraceParseError("unrecognized trace format");
}

} // namespace resroot
