// Command-line front end: exact p-adic volume tables, local zeta assemblies,
// twisted character values, and the full verification suite.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>

#include "pzeta/character.hpp"

using namespace pzeta;
using json = nlohmann::ordered_json;

namespace {

struct Options {
    long prime = 3;
    int max_n = 6;
    std::string engine = "both";
    std::string format = "table";
    std::string output;
    std::string case_label;
    std::string form_expr;
    std::string type;
    std::string D, A, r, br;
    std::string expect_rf;
    int k = 1;
    int threads = 0;
    bool dump_rep = false;
};

std::ostream& out_stream(const Options& opt, std::ofstream& file) {
    if (opt.output.empty())
        return std::cout;
    file.open(opt.output);
    if (!file)
        throw invalid_params_error("cannot open output file " + opt.output);
    return file;
}

Engine primary_engine(const std::string& e) {
    if (e == "naive")
        return Engine::naive;
    return Engine::hensel;
}

SquareClass need_class(const std::string& s, const std::string& flag) {
    const auto c = parse_square_class(s);
    if (!c)
        throw invalid_params_error("bad square class for " + flag + ": '" + s +
                                   "' (expected 1, u, pi or u*pi)");
    return *c;
}

struct ResolvedForm {
    QuadraticForm Q{2};
    std::optional<FormCase> label;
};

ResolvedForm resolve_form(const Options& opt, const LocalField& F) {
    if (opt.case_label.empty() == opt.form_expr.empty())
        throw invalid_params_error("exactly one of --case and --form-expr is required");
    ResolvedForm r;
    if (!opt.case_label.empty()) {
        const auto c = parse_form_case(opt.case_label);
        if (!c)
            throw invalid_params_error("unknown case label '" + opt.case_label + "'");
        r.label = c;
        r.Q = case_form(*c, F);
    } else {
        r.Q = parse_form(opt.form_expr, F);
    }
    return r;
}

json tail_json(const VolumeSequence& vs) {
    json t;
    switch (vs.tail.kind) {
    case Tail::Kind::geometric:
        t["kind"] = "geometric";
        t["rho"] = rat_str(q_pow(vs.q, -1));
        t["from"] = vs.tail.from;
        break;
    case Tail::Kind::finite:
        t["kind"] = "finite";
        t["from"] = vs.tail.from;
        break;
    case Tail::Kind::undetected:
        t["kind"] = "undetected";
        break;
    }
    return t;
}

// naive cross-check of the counts behind vol(V_n^0) for n <= n_max, limited
// to levels within the enumeration budget; returns a diagnostic on mismatch.
std::optional<std::string> cross_check_naive(const QuadraticForm& Q, int n_max,
                                             const LocalField& F) {
    const long long budget = naive_budget();
    for (int k = 1; k <= n_max + 1; ++k) {
        double points = 1;
        for (int i = 0; i < 4 * k; ++i)
            points *= F.p;
        if (points > static_cast<double>(budget))
            break;
        const Int naive = count_naive(Q, k, F).count;
        const Int hensel = count_hensel(Q, k, F).count;
        if (naive != hensel)
            return "engine disagreement at k=" + std::to_string(k) + ": naive " + naive.str() +
                   " != hensel " + hensel.str();
    }
    return std::nullopt;
}

int cmd_volumes(const Options& opt) {
    const LocalField F = LocalField::make(opt.prime, opt.max_n + 2);
    const ResolvedForm rf = resolve_form(opt, F);
    const Engine eng = primary_engine(opt.engine);

    if (opt.engine == "both")
        if (const auto diag = cross_check_naive(rf.Q, opt.max_n, F)) {
            std::cerr << "error: " << *diag << "\n";
            return 1;
        }

    VolumeSequence vs = volume_sequence(rf.Q, opt.max_n, F, eng);
    try {
        vs = detect_tail(vs);
    } catch (const tail_error&) {
        // volumes remain printable without a detected tail
    }

    int rc = 0;
    std::ofstream file;
    std::ostream& os = out_stream(opt, file);
    const std::string form_str = to_string(rf.Q, F);

    if (opt.format == "json") {
        json j;
        j["q"] = opt.prime;
        j["form"] = form_str;
        auto rows = json::array();
        for (int n = 0; n <= opt.max_n; ++n)
            rows.push_back({std::to_string(n), rat_str(vs.values[n])});
        j["volumes"] = rows;
        j["tail"] = tail_json(vs);
        os << j.dump(2) << "\n";
    } else {
        const bool csv = opt.format == "csv";
        if (csv)
            os << (rf.label ? "n,volume,reference,match\n" : "n,volume\n");
        else {
            os << "form: " << form_str << "  (q = " << opt.prime << ", engine " << opt.engine
               << ")\n";
            os << std::left << std::setw(4) << "n" << std::setw(24) << "vol(V_n^0)";
            if (rf.label)
                os << std::setw(24) << "reference" << "match";
            os << "\n";
        }
        for (int n = 0; n <= opt.max_n; ++n) {
            const std::string v = rat_str(vs.values[n]);
            if (csv)
                os << n << "," << v;
            else
                os << std::left << std::setw(4) << n << std::setw(24) << v;
            if (rf.label) {
                const Rat want = reference_volume(*rf.label, n, opt.prime);
                const bool match = vs.values[n] == want;
                if (!match)
                    rc = 1;
                if (csv)
                    os << "," << rat_str(want) << "," << (match ? "true" : "false");
                else
                    os << std::setw(24) << rat_str(want) << (match ? "yes" : "NO");
            }
            os << "\n";
        }
        if (!csv && vs.tail.kind == Tail::Kind::geometric)
            os << "tail: geometric, ratio 1/" << opt.prime << " from n = " << vs.tail.from
               << "\n";
        if (!csv && vs.tail.kind == Tail::Kind::finite)
            os << "tail: zero from n = " << vs.tail.from << "\n";
    }
    return rc;
}

int cmd_zeta(const Options& opt) {
    const LocalField F = LocalField::make(opt.prime, opt.max_n + 2);
    const ResolvedForm rf = resolve_form(opt, F);
    const Engine eng = primary_engine(opt.engine);
    if (opt.engine == "both")
        if (const auto diag = cross_check_naive(rf.Q, opt.max_n, F)) {
            std::cerr << "error: " << *diag << "\n";
            return 1;
        }

    VolumeSequence vs = volume_sequence(rf.Q, opt.max_n, F, eng);
    vs = detect_tail(std::move(vs));
    const RationalFunction z = assemble_zeta(vs);
    const Rat at0 = evaluate_at_s0(z, opt.prime);

    int rc = 0;
    if (!opt.expect_rf.empty() && parse_rational_function(opt.expect_rf) != z) {
        std::cerr << "error: assembled function " << to_string(z)
                  << " differs from the expected fixture " << opt.expect_rf << "\n";
        rc = 1;
    }

    std::ofstream file;
    std::ostream& os = out_stream(opt, file);
    if (opt.format == "json") {
        json j;
        j["q"] = opt.prime;
        j["form"] = to_string(rf.Q, F);
        j["rational_function"] = to_string(z);
        j["value_at_s0"] = rat_str(at0);
        j["tail"] = tail_json(vs);
        j["convergence"] = "series converges for m > -1 (Re s > 1/2); s = 0 is X = q^2";
        os << j.dump(2) << "\n";
    } else {
        os << "form: " << to_string(rf.Q, F) << "  (q = " << opt.prime << ")\n";
        os << "I(X)     = " << to_string(z) << "\n";
        os << "I at s=0 = " << rat_str(at0) << "   (X = q^2 = " << opt.prime * opt.prime
           << ")\n";
    }
    return rc;
}

json verdict_json(const CharacterVerdict& v) {
    json j;
    j["type"] = v.class_type;
    j["case"] = v.case_label;
    j["computed"] = rat_str(v.computed);
    j["expected"] = rat_str(v.expected);
    j["source"] = v.expected_source;
    j["match"] = v.match;
    if (!v.note.empty())
        j["note"] = v.note;
    return j;
}

void print_verdict_table(std::ostream& os, const std::vector<CharacterVerdict>& rows,
                         const std::string& format) {
    if (format == "csv") {
        os << "type,case,computed,expected,source,match\n";
        for (const auto& v : rows)
            os << v.class_type << "," << v.case_label << "," << rat_str(v.computed) << ","
               << rat_str(v.expected) << "," << v.expected_source << ","
               << (v.match ? "true" : "false") << "\n";
        return;
    }
    os << std::left << std::setw(6) << "type" << std::setw(34) << "case" << std::setw(12)
       << "computed" << std::setw(12) << "expected" << std::setw(14) << "source" << std::setw(7)
       << "match" << "note\n";
    for (const auto& v : rows)
        os << std::left << std::setw(6) << v.class_type << std::setw(34) << v.case_label
           << std::setw(12) << rat_str(v.computed) << std::setw(12) << rat_str(v.expected)
           << std::setw(14) << v.expected_source << std::setw(7) << (v.match ? "yes" : "NO")
           << v.note << "\n";
}

int cmd_character(const Options& opt) {
    // character values always certify the series tail, which takes six shells
    const LocalField F = LocalField::make(opt.prime, std::max(opt.max_n, 6) + 2);
    const Engine eng = primary_engine(opt.engine);
    CharacterVerdict v;
    std::optional<Rep> rep;
    json rep_params;

    if (opt.type == "I") {
        if (opt.D.empty() || opt.r.empty())
            throw invalid_params_error("--type I needs --D and --r");
        const SquareClass D = need_class(opt.D, "--D");
        const SquareClass r = need_class(opt.r, "--r");
        const NormalizedCase nc = normalize_typeI(D, r, F);
        v.class_type = "I";
        v.case_label = to_string(nc.label) + " (D=" + to_string(D) + ", r=" + to_string(r) + ")";
        v.note = nc.substitution;
        v.expected_source = "Theorem I";
        v.expected = Rat(2 * kappa(r, D, F));
        if (!v.note.empty())
            v.note += "; ";
        v.note += "normalized |4Dr| I / N(0)";
        v.computed = character_value_case(nc.label, F, opt.max_n, eng);
        if (opt.dump_rep) {
            rep = build_rep(TypeIParams{Int(0), Int(1), Int(0), Int(1), D, r, SquareClass::one},
                            F);
            rep_params = {{"a", {"0", "1"}}, {"b", {"0", "1"}}, {"D", to_string(D)},
                          {"r", to_string(r)}, {"s", "1"}};
        }
    } else if (opt.type == "II") {
        FormCase label;
        if (!opt.case_label.empty()) {
            const auto c = parse_form_case(opt.case_label);
            if (!c || (*c != FormCase::II1 && *c != FormCase::II2 && *c != FormCase::II3a &&
                       *c != FormCase::II3b && *c != FormCase::II4 && *c != FormCase::II5))
                throw invalid_params_error("--type II --case must name one of the II.* cases");
            label = *c;
            v.case_label = to_string(label);
        } else {
            if (opt.D.empty() || opt.A.empty() || opt.r.empty())
                throw invalid_params_error("--type II needs --case or all of --D --A --r");
            const SquareClass D = need_class(opt.D, "--D");
            const SquareClass A = need_class(opt.A, "--A");
            const SquareClass r = need_class(opt.r, "--r");
            const NormalizedCase nc = normalize_typeII(D, A, r, F);
            label = nc.label;
            v.note = nc.substitution;
            v.case_label = to_string(label) + " (D=" + to_string(D) + ", A=" + to_string(A) +
                           ", r=" + to_string(r) + ")";
        }
        v.class_type = "II";
        v.expected_source = "Theorem II";
        v.expected = 0;
        if (!v.note.empty())
            v.note += "; ";
        v.note += "bare integral at s = 0";
        v.computed = character_value_case(label, F, opt.max_n, eng);
        if (opt.dump_rep) {
            rep = build_rep(TypeIIParams{Int(0), Int(1), Int(0), Int(1), SquareClass::pi,
                                         SquareClass::u, SquareClass::one, SquareClass::one},
                            F);
            rep_params = {{"a", {"0", "1"}}, {"b", {"0", "1"}}, {"D", "pi"}, {"A", "u"},
                          {"r", "1"}, {"s", "1"}};
        }
    } else if (opt.type == "III") {
        if (opt.br.empty() || opt.A.empty() || opt.D.empty())
            throw invalid_params_error("--type III needs --br, --A and --D");
        const auto br = parse_br_case(opt.br);
        if (!br)
            throw invalid_params_error("--br must be one of 1, sqrtA, d+i");
        const SquareClass Ac = need_class(opt.A, "--A");
        const SquareClass Dc = need_class(opt.D, "--D");
        Int A = sq_rep(Ac, F);
        if (*br == BrCase::d_plus_i) {
            if (Ac != SquareClass::u || F.p % 4 != 3)
                throw unavailable_case_error(
                    "--br d+i needs --A u with p = 3 mod 4 (A is represented by -1)");
            A = -1;
        }
        const Int D = sq_rep(Dc, F);
        v.class_type = "III";
        v.case_label =
            "III (br=" + to_string(*br) + ", A=" + to_string(Ac) + ", D=" + to_string(Dc) + ")";
        v.expected_source = "Theorem III";
        const QuadExtension ext = QuadExtension::over_E3(A, D, F);
        const Int r1 = *br == BrCase::d_plus_i ? Int(*F.d) : Int(*br == BrCase::one ? 1 : 0);
        const Int r2 = Int(*br == BrCase::one ? 0 : 1);
        v.expected = Rat(2 * kappa_rel(r1, r2, ext, F));
        v.note = "normalized |br tau(br) D| I / N(0)";
        v.computed = character_value_typeIII(*br, A, D, F, opt.max_n, eng);
        if (opt.dump_rep) {
            rep = build_rep(TypeIIIParams{Int(0), Int(1), Int(1), Int(0), r1, r2, A, D}, F);
            rep_params = {{"a", {"0", "1"}}, {"b", {"1", "0"}}, {"r", {r1.str(), r2.str()}},
                          {"A", A.str()}, {"D", D.str()}};
        }
    } else if (opt.type == "IV") {
        const auto c = parse_form_case(opt.case_label);
        if (!c || (*c != FormCase::IV_pi && *c != FormCase::IV_u))
            throw invalid_params_error("--type IV needs --case IV-pi or --case IV-u");
        v.class_type = "IV";
        v.case_label = to_string(*c);
        v.expected_source = "Theorem IV";
        v.expected = 0;
        v.note = "bare integral at s = 0";
        v.computed = character_value_case(*c, F, opt.max_n, eng);
        if (opt.dump_rep) {
            TypeIVParams P{Int(0), Int(1), Int(1), Int(0), Int(1), Int(0), Int(F.p), Int(0),
                           Int(1)};
            if (*c == FormCase::IV_u)
                P.A = F.p % 4 == 3 ? Int(-1) : Int(F.u);
            if (*c == FormCase::IV_u && F.p % 4 == 3) {
                P.d1 = Int(*F.d);
                P.d2 = 1;
            }
            rep = build_rep(P, F);
            rep_params = {{"a", {"0", "1"}},        {"b", {"1", "0"}},
                          {"r", {"1", "0"}},        {"A", P.A.str()},
                          {"D", {P.d1.str(), P.d2.str()}}};
        }
    } else {
        throw invalid_params_error("--type must be one of I, II, III, IV");
    }
    v.match = v.computed == v.expected;

    std::ofstream file;
    std::ostream& os = out_stream(opt, file);
    if (opt.format == "json") {
        json j = verdict_json(v);
        if (rep) {
            j["rep"] = json::parse(rep_to_json(*rep));
            j["rep"]["params"] = rep_params;
        }
        os << j.dump(2) << "\n";
    } else {
        print_verdict_table(os, {v}, opt.format);
        if (rep) {
            json r = json::parse(rep_to_json(*rep));
            r["params"] = rep_params;
            os << "rep: " << r.dump() << "\n";
        }
    }
    return v.match ? 0 : 1;
}

int cmd_verify(const Options& opt) {
    const LocalField F = LocalField::make(opt.prime, std::max(opt.max_n, 6) + 2);
    if (opt.engine == "naive")
        throw invalid_params_error(
            "verify needs the hensel engine (use --engine hensel or both)");

    int checks = 0, passed = 0;
    std::vector<CharacterVerdict> verdicts = verify_all(F, opt.max_n);
    std::vector<std::pair<std::string, bool>> extra;

    for (const auto& v : verdicts) {
        ++checks;
        if (v.match)
            ++passed;
    }

    auto add = [&](const std::string& name, bool ok) {
        extra.push_back({name, ok});
        ++checks;
        if (ok)
            ++passed;
    };

    for (const auto& row : instability_report(F, opt.max_n))
        add("instability " + row.stable_class, row.ok);

    {
        bool ok = true;
        for (const Int& c : {Int(1), Int(4)})
            for (int n = 1; n <= std::min(opt.max_n, 4); ++n)
                ok = ok && square_shell_volume(c, n, F) ==
                               2 * q_pow(F.p, -n) * (1 - q_pow(F.p, -1));
        add("one-variable shell volumes", ok);
    }
    {
        bool ok = true;
        const Int coeffs[] = {Int(1), Int(F.u), Int(2)};
        for (const Int& c1 : coeffs)
            for (const Int& c2 : coeffs)
                for (const Int& c3 : coeffs)
                    for (long b = 0; b < F.p; ++b)
                        ok = ok && count_Fq({c1, c2, c3}, Int(b), F.p) ==
                                       count_Fq_brute({c1, c2, c3}, Int(b), F.p);
        add("residue-field count formula vs enumeration", ok);
    }
    {
        VolumeSequence vs = volume_sequence(linear_x(), opt.max_n, F);
        vs = detect_tail(std::move(vs));
        const RationalFunction z = assemble_zeta(vs);
        add("normalizer closed loop", z == normalizer_rf(F.p) &&
                                          evaluate_at_s0(z, F.p) == normalizer(0, F.p));
    }
    if (opt.engine == "both") {
        bool ok = true;
        for (const FormCase c : all_form_cases()) {
            if (c == FormCase::III_d_plus_i && F.p % 4 != 3)
                continue;
            ok = ok && !cross_check_naive(case_form(c, F), std::min(opt.max_n, 3), F);
        }
        add("naive/hensel cross-check within budget", ok);
    }

    std::ofstream file;
    std::ostream& os = out_stream(opt, file);
    if (opt.format == "json") {
        json j;
        j["q"] = opt.prime;
        auto rows = json::array();
        for (const auto& v : verdicts)
            rows.push_back(verdict_json(v));
        j["verdicts"] = rows;
        auto ex = json::array();
        for (const auto& [name, ok] : extra)
            ex.push_back({{"check", name}, {"pass", ok}});
        j["checks"] = ex;
        j["passed"] = passed;
        j["total"] = checks;
        os << j.dump(2) << "\n";
    } else {
        print_verdict_table(os, verdicts, opt.format);
        for (const auto& [name, ok] : extra)
            os << (ok ? "pass  " : "FAIL  ") << name << "\n";
        os << passed << "/" << checks << " checks passed\n";
    }
    return passed == checks ? 0 : 1;
}

int cmd_count(const Options& opt) {
    const LocalField F = LocalField::make(opt.prime, std::max(opt.k, opt.max_n) + 2);
    const ResolvedForm rf = resolve_form(opt, F);

    std::ofstream file;
    std::ostream& os = out_stream(opt, file);
    std::vector<CountResult> results;
    if (opt.engine == "naive" || opt.engine == "both")
        results.push_back(count_naive(rf.Q, opt.k, F, -1, opt.threads));
    if (opt.engine == "hensel" || opt.engine == "both")
        results.push_back(count_hensel(rf.Q, opt.k, F));

    if (opt.format == "json") {
        json j;
        j["q"] = opt.prime;
        j["form"] = to_string(rf.Q, F);
        j["k"] = opt.k;
        for (const auto& r : results)
            j[to_string(r.engine)] = r.count.str();
        os << j.dump(2) << "\n";
    } else {
        os << "form: " << to_string(rf.Q, F) << ", primitive zeros mod " << opt.prime << "^"
           << opt.k << ":\n";
        for (const auto& r : results)
            os << "  " << to_string(r.engine) << ": " << r.count.str() << "\n";
    }
    if (results.size() == 2 && results[0].count != results[1].count) {
        std::cerr << "error: engine disagreement\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact p-adic volumes, local zeta values and twisted characters for the "
                 "four families of twisted conjugacy classes of PGL(4)"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool with_engine = true) {
        cmd->add_option("--prime,-p", opt.prime, "odd prime q");
        cmd->add_option("--max-n,-n", opt.max_n, "largest shell index n (default 6)");
        cmd->add_option("--format,-f", opt.format, "table, csv or json")
            ->check(CLI::IsMember({"table", "csv", "json"}));
        cmd->add_option("--output,-o", opt.output, "write the report to a file");
        if (with_engine)
            cmd->add_option("--engine,-e", opt.engine, "naive, hensel or both")
                ->check(CLI::IsMember({"naive", "hensel", "both"}));
    };

    CLI::App* volumes = app.add_subcommand("volumes", "exact vol(V_n^0) tables");
    add_common(volumes);
    volumes->add_option("--case,-c", opt.case_label, "catalog case label, e.g. I.1");
    volumes->add_option("--form-expr", opt.form_expr, "integrand, e.g. \"x^2 - u*y^2 - 2*z*t\"");

    CLI::App* zeta = app.add_subcommand("zeta", "assembled series as a rational function of X");
    add_common(zeta);
    zeta->add_option("--case,-c", opt.case_label, "catalog case label");
    zeta->add_option("--form-expr", opt.form_expr, "integrand expression");
    zeta->add_option("--expect-rf", opt.expect_rf,
                     "regression fixture: fail unless the assembled function matches");

    CLI::App* character = app.add_subcommand("character", "normalized twisted character value");
    add_common(character);
    character->add_option("--type,-t", opt.type, "class type: I, II, III or IV")->required();
    character->add_option("--case,-c", opt.case_label, "catalog case (types II, IV)");
    character->add_option("--D", opt.D, "square class of D");
    character->add_option("--A", opt.A, "square class of A");
    character->add_option("--r", opt.r, "square class of the twist r (type I/II)");
    character->add_option("--br", opt.br, "type III twist: 1, sqrtA or d+i");
    character->add_flag("--dump-rep", opt.dump_rep, "emit the representative matrix as JSON");

    CLI::App* verify = app.add_subcommand("verify", "run the full verification suite");
    add_common(verify);

    CLI::App* count = app.add_subcommand("count", "raw primitive-solution counts mod p^k");
    add_common(count);
    count->add_option("--case,-c", opt.case_label, "catalog case label");
    count->add_option("--form-expr", opt.form_expr, "integrand expression");
    count->add_option("--k,-k", opt.k, "precision level");
    count->add_option("--threads", opt.threads, "worker threads for the naive engine");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (volumes->parsed())
            return cmd_volumes(opt);
        if (zeta->parsed())
            return cmd_zeta(opt);
        if (character->parsed())
            return cmd_character(opt);
        if (verify->parsed())
            return cmd_verify(opt);
        if (count->parsed())
            return cmd_count(opt);
    } catch (const invalid_field_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const invalid_params_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const unavailable_case_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const not_extension_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const budget_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const precision_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
