#include "hypint/report.hpp"

#include <sstream>

#include "hypint/arith.hpp"
#include "hypint/error.hpp"

namespace hypint {

namespace {

const char* kModeNames[] = {"analyze", "classical", "series",
                            "bound",   "thm63",     "eisenstein"};

std::string status_name(CertificateStatus s) {
    switch (s) {
    case CertificateStatus::integral_certified: return "integral_certified";
    case CertificateStatus::unbounded_certified: return "unbounded_certified";
    default: return "undecided";
    }
}

// ---- problem-file field access with diagnostics ----

[[noreturn]] void fail(const std::string& what) {
    throw input_error("problem file: " + what);
}

const ReportJson& field(const ReportJson& j, const std::string& key) {
    auto it = j.find(key);
    if (it == j.end())
        fail("missing field '" + key + "'");
    return *it;
}

Int int_value(const ReportJson& j, const std::string& where) {
    if (j.is_number_integer())
        return Int(j.get<long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            fail("field '" + where + "': '" + j.get<std::string>() +
                 "' is not an integer");
        }
    }
    fail("field '" + where + "': expected an integer or a decimal string");
}

long long_value(const ReportJson& j, const std::string& where) {
    if (!j.is_number_integer())
        fail("field '" + where + "': expected an integer");
    return j.get<long>();
}

Rat rat_value(const ReportJson& j, const std::string& where) {
    if (!j.is_string())
        fail("field '" + where + "': rationals must be \"p/q\" strings");
    try {
        return parse_rat(j.get<std::string>());
    } catch (const input_error& e) {
        fail("field '" + where + "': " + e.what());
    }
}

VecQ rat_array(const ReportJson& j, const std::string& where) {
    if (!j.is_array())
        fail("field '" + where + "': expected an array of rational strings");
    VecQ out;
    for (const auto& e : j)
        out.push_back(rat_value(e, where));
    return out;
}

MatZ int_matrix(const ReportJson& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        fail("field '" + where + "': expected a nonempty array of integer rows");
    MatZ out;
    for (const auto& row : j) {
        if (!row.is_array())
            fail("field '" + where + "': expected an array of integer rows");
        VecZ r;
        for (const auto& e : row) {
            if (!e.is_number_integer())
                fail("field '" + where + "': entries must be integers");
            r.emplace_back(e.get<long>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

MatQ rat_matrix(const ReportJson& j, const std::string& where) {
    if (!j.is_array())
        fail("field '" + where + "': expected an array of rows");
    MatQ out;
    for (const auto& row : j) {
        if (!row.is_array())
            fail("field '" + where + "': expected an array of rows");
        out.push_back(rat_array(row, where));
    }
    return out;
}

std::vector<Int> parse_primes(const ReportJson& doc) {
    std::vector<Int> out;
    auto one = [&](const ReportJson& e) {
        Int q = int_value(e, "p");
        if (!is_prime(q))
            fail("field 'p': " + q.get_str() + " is not prime");
        out.push_back(q);
    };
    const ReportJson& p = field(doc, "p");
    if (p.is_array()) {
        if (p.empty())
            fail("field 'p': prime list is empty");
        for (const auto& e : p)
            one(e);
    } else {
        one(p);
    }
    return out;
}

RunParameters parse_parameters(const ReportJson& doc) {
    RunParameters out;
    auto it = doc.find("parameters");
    if (it == doc.end())
        return out;
    if (!it->is_object())
        fail("field 'parameters': expected an object");
    for (const auto& [key, value] : it->items()) {
        if (key == "max_b")
            out.max_b = long_value(value, "parameters.max_b");
        else if (key == "box")
            out.box = long_value(value, "parameters.box");
        else if (key == "order")
            out.order = long_value(value, "parameters.order");
        else if (key == "guard")
            out.guard = int_value(value, "parameters.guard");
        else
            fail("parameters: unknown field '" + key + "'");
    }
    if (out.max_b < 1)
        fail("parameters.max_b must be at least 1");
    if (out.box < 0 || out.order < 0)
        fail("parameters.box and parameters.order must be nonnegative");
    if (out.guard < 1)
        fail("parameters.guard must be positive");
    return out;
}

void check_keys(const ReportJson& doc, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        bool ok = key == "mode" || key == "parameters";
        for (const char* a : allowed)
            ok = ok || key == a;
        if (!ok)
            fail("unknown field '" + key + "'");
    }
}

Configuration parse_configuration(const ReportJson& doc) {
    try {
        return Configuration::from_columns(int_matrix(field(doc, "A"), "A"));
    } catch (const input_error& e) {
        fail(std::string("field 'A': ") + e.what());
    }
}

VecQ parse_exponent(const ReportJson& doc, const Configuration& cfg) {
    VecQ v = rat_array(field(doc, "v"), "v");
    if (static_cast<long>(v.size()) != cfg.count())
        fail("field 'v': length " + std::to_string(v.size()) +
             " does not match the " + std::to_string(cfg.count()) + " columns of A");
    return v;
}

// ---- report payload builders ----

ReportJson rat_strings(const VecQ& v) {
    ReportJson out = ReportJson::array();
    for (const Rat& q : v)
        out.push_back(rat_str(q));
    return out;
}

ReportJson int_strings(const VecZ& v) {
    ReportJson out = ReportJson::array();
    for (const Int& z : v)
        out.push_back(z.get_str());
    return out;
}

std::string residue_statement(const Int& modulus, const Int& residue) {
    if (modulus == 1)
        return "all p";
    return "all p ≡ " + residue.get_str() + " mod " + modulus.get_str();
}

ReportJson certificate_json(const Certificate& c) {
    ReportJson j;
    j["p"] = c.p.get_str();
    j["status"] = status_name(c.status);
    j["w"] = rat_str(c.w_p_v);
    j["bound"] = rat_str(c.lower_bound);
    if (c.witness) {
        ReportJson w;
        w["r"] = rat_strings(c.witness->r);
        w["b"] = c.witness->b;
        w["l"] = int_strings(c.witness->l);
        j["witness"] = w;
    }
    j["residue_modulus"] = c.residue_modulus.get_str();
    j["residue"] = c.residue.get_str();
    j["statement"] = residue_statement(c.residue_modulus, c.residue);
    ReportJson s;
    s["max_b"] = c.search_bounds.b_steps;
    s["box"] = c.search_bounds.box_radius;
    j["search"] = s;
    return j;
}

std::string aggregate_status(long integral, long unbounded, long undecided,
                             long total) {
    if (undecided > 0)
        return "undecided";
    if (integral == total)
        return "integral_certified";
    if (unbounded == total)
        return "unbounded_certified";
    return "mixed";
}

void run_analyze(const Problem& problem, Report& out) {
    AnalyzeOptions opts;
    opts.b_steps = problem.params.max_b;
    opts.box_radius = problem.params.box;
    opts.guard = problem.params.guard;
    ReportJson certs = ReportJson::array();
    long integral = 0, unbounded = 0, undecided = 0;
    for (const Int& p : problem.primes) {
        Certificate cert = analyze(*problem.cfg, problem.v, p, opts);
        certs.push_back(certificate_json(cert));
        switch (cert.status) {
        case CertificateStatus::integral_certified: ++integral; break;
        case CertificateStatus::unbounded_certified: ++unbounded; break;
        default: ++undecided; break;
        }
    }
    out.payload["certificates"] = certs;
    out.status = aggregate_status(integral, unbounded, undecided,
                                  static_cast<long>(problem.primes.size()));
}

void run_series(const Problem& problem, Report& out) {
    ReportJson expansions = ReportJson::array();
    for (const Int& p : problem.primes) {
        std::vector<SeriesTerm> terms = expand(*problem.cfg, problem.v, p,
                                               problem.params.order,
                                               problem.params.guard);
        ReportJson e;
        e["p"] = p.get_str();
        ReportJson rows = ReportJson::array();
        for (const SeriesTerm& t : terms) {
            ReportJson r;
            r["l"] = int_strings(t.l);
            r["coefficient"] = rat_str(t.coefficient);
            r["pi_exponent"] = t.pi_exponent.get_str();
            r["valuation"] = rat_str(t.valuation);
            rows.push_back(r);
        }
        e["terms"] = rows;
        expansions.push_back(e);
    }
    out.payload["order"] = problem.params.order;
    out.payload["expansions"] = expansions;
    out.status = "computed";
}

void run_bound(const Problem& problem, Report& out) {
    ReportJson bounds = ReportJson::array();
    bool all_equal = true;
    for (const Int& p : problem.primes) {
        WeightResult wr = padic_weight(problem.v, p);
        WeightBound wb = orbit_lower_bound(*problem.cfg, problem.v, p,
                                           problem.params.guard);
        ReportJson b;
        b["p"] = p.get_str();
        b["w"] = rat_str(wr.weight);
        b["bound"] = rat_str(wb.bound);
        b["equal"] = wr.weight == wb.bound;
        b["e"] = wb.e;
        b["per_mu"] = rat_strings(wb.per_mu_terms);
        bounds.push_back(b);
        all_equal = all_equal && wr.weight == wb.bound;
    }
    out.payload["bounds"] = bounds;
    out.status = all_equal ? "integral_certified" : "undecided";
}

void run_thm63(const Problem& problem, Report& out) {
    const Configuration& cfg = *problem.cfg;
    MatZ negatives, zeros;
    for (long i = 0; i < cfg.count(); ++i) {
        if (problem.v[i] == -1)
            negatives.push_back(cfg.vectors[i]);
        else if (problem.v[i] == 0)
            zeros.push_back(cfg.vectors[i]);
        else
            throw input_error("support criterion needs exponent entries in {-1, 0}");
    }
    const long m_count = static_cast<long>(negatives.size());
    negatives.insert(negatives.end(), zeros.begin(), zeros.end());
    SupportWeightCriterion res = support_weight_criterion(
        Configuration::from_columns(std::move(negatives)), m_count,
        problem.params.guard);
    ReportJson j;
    j["support_size"] = m_count;
    j["minimum"] = rat_str(res.minimum);
    j["holds"] = res.holds;
    out.payload["criterion"] = j;
    out.status = res.holds ? "integral_certified" : "undecided";
}

void run_classical(const Problem& problem, Report& out) {
    const ClassicalSpec& spec = *problem.ratio;
    ResidueClassSurvey survey = residue_survey(spec, problem.params.guard);
    ReportJson j;
    j["modulus"] = spec.modulus.get_str();
    j["holds"] = survey.holds;
    j["rescalings_exist"] = survey.rescalings_exist;
    j["statement"] = survey.holds
                         ? "integral for all p coprime to " + spec.modulus.get_str()
                         : "not integral on at least one residue class mod " +
                               spec.modulus.get_str();
    ReportJson classes = ReportJson::array();
    for (const ClassTrace& cls : survey.classes) {
        ReportJson c;
        c["h"] = cls.h.get_str();
        c["holds"] = cls.result.holds;
        ReportJson orbits = ReportJson::array();
        for (const XiTrace& t : cls.result.per_mu) {
            ReportJson o;
            o["mu"] = t.mu;
            o["upper"] = rat_strings(t.upper);
            o["lower"] = rat_strings(t.lower);
            o["minimum"] = t.minimum.get_str();
            o["minimizer"] = rat_strings(t.minimizer);
            orbits.push_back(o);
        }
        c["orbits"] = orbits;
        classes.push_back(c);
    }
    j["classes"] = classes;
    out.payload["survey"] = j;
    out.status = survey.holds ? "integral_certified" : "non_integral_certified";
}

void run_eisenstein(const Problem& problem, Report& out) {
    TailNormalization tn = tail_normalize(*problem.algebraic);
    DenominatorBound bound = denominator_constant(tn, *problem.algebraic);
    ReportJson j;
    j["N"] = bound.prefix_minimal.get_str();
    j["assembled"] = bound.constant.get_str();
    j["verified_order"] = bound.verified_order;
    j["mu"] = tn.mu;
    j["head_degree"] = tn.head_degree;
    j["tail_shift"] = tn.tail_shift;
    j["scale"] = tn.scale.get_str();
    out.payload["eisenstein"] = j;
    out.status = "computed";
}

// ---- text rendering ----

std::string joined(const ReportJson& strings) {
    std::string out = "(";
    for (std::size_t i = 0; i < strings.size(); ++i) {
        if (i)
            out += ", ";
        out += strings[i].get<std::string>();
    }
    return out + ")";
}

void text_certificates(const ReportJson& certs, std::ostringstream& os) {
    for (const auto& c : certs) {
        os << "p = " << c["p"].get<std::string>() << "\n";
        os << "  status: " << c["status"].get<std::string>() << "\n";
        os << "  w_p(v) = " << c["w"].get<std::string>()
           << " ≥ bound = " << c["bound"].get<std::string>() << "\n";
        if (c.contains("witness")) {
            const auto& w = c["witness"];
            os << "  witness: r = " << joined(w["r"]) << ", b = "
               << w["b"].get<long>() << ", l = " << joined(w["l"]) << "\n";
        }
        os << "  residue: " << c["statement"].get<std::string>() << "\n";
    }
}

void text_bounds(const ReportJson& bounds, std::ostringstream& os) {
    for (const auto& b : bounds) {
        os << "p = " << b["p"].get<std::string>() << "\n";
        os << "  w_p(v) = " << b["w"].get<std::string>()
           << " ≥ bound = " << b["bound"].get<std::string>() << "\n";
        os << "  equality: " << (b["equal"].get<bool>() ? "yes" : "no") << "\n";
    }
}

void text_series(const ReportJson& payload, std::ostringstream& os) {
    os << "order = " << payload["order"].get<long>() << "\n";
    for (const auto& e : payload["expansions"]) {
        os << "p = " << e["p"].get<std::string>() << "\n";
        for (const auto& t : e["terms"])
            os << "  l = " << joined(t["l"]) << "  coefficient = "
               << t["coefficient"].get<std::string>() << "  pi_exponent = "
               << t["pi_exponent"].get<std::string>() << "  valuation = "
               << t["valuation"].get<std::string>() << "\n";
    }
}

void text_classical(const ReportJson& survey, std::ostringstream& os) {
    os << "modulus = " << survey["modulus"].get<std::string>() << "\n";
    os << "verdict: " << survey["statement"].get<std::string>() << "\n";
    for (const auto& c : survey["classes"]) {
        os << "class h = " << c["h"].get<std::string>() << ": "
           << (c["holds"].get<bool>() ? "holds" : "fails") << "\n";
        for (const auto& o : c["orbits"]) {
            os << "  orbit mu = " << o["mu"].get<long>() << ": minimum = "
               << o["minimum"].get<std::string>() << " at "
               << joined(o["minimizer"]) << "\n";
        }
    }
}

void text_thm63(const ReportJson& j, std::ostringstream& os) {
    os << "support size = " << j["support_size"].get<long>() << "\n";
    os << "coset minimum = " << j["minimum"].get<std::string>() << "\n";
    os << "criterion holds: " << (j["holds"].get<bool>() ? "yes" : "no") << "\n";
}

void text_eisenstein(const ReportJson& j, std::ostringstream& os) {
    os << "N = " << j["N"].get<std::string>() << "\n";
    os << "assembled constant = " << j["assembled"].get<std::string>() << "\n";
    os << "verified: N^m c_m integral for m <= " << j["verified_order"].get<long>()
       << "\n";
    os << "mu = " << j["mu"].get<long>() << ", head degree = "
       << j["head_degree"].get<long>() << ", tail shift = "
       << j["tail_shift"].get<long>() << ", scale = "
       << j["scale"].get<std::string>() << "\n";
}

} // namespace

Mode mode_from_name(const std::string& name) {
    for (int i = 0; i < 6; ++i)
        if (name == kModeNames[i])
            return static_cast<Mode>(i);
    throw input_error("unknown mode '" + name + "'");
}

std::string mode_name(Mode mode) { return kModeNames[static_cast<int>(mode)]; }

bool operator==(const RunParameters& a, const RunParameters& b) {
    return a.max_b == b.max_b && a.box == b.box && a.order == b.order &&
           a.guard == b.guard;
}

bool operator==(const Report& a, const Report& b) {
    return a.mode == b.mode && a.params == b.params && a.status == b.status &&
           a.payload == b.payload;
}

Problem parse_problem(const std::string& text) {
    ReportJson doc;
    try {
        doc = ReportJson::parse(text);
    } catch (const ReportJson::parse_error& e) {
        long line = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i)
            if (text[i] == '\n')
                ++line;
        fail("JSON parse error at line " + std::to_string(line) + ": " + e.what());
    }
    if (!doc.is_object())
        fail("expected a JSON object");

    Problem out;
    const ReportJson& mode = field(doc, "mode");
    if (!mode.is_string())
        fail("field 'mode': expected a string");
    out.mode = mode_from_name(mode.get<std::string>());
    out.params = parse_parameters(doc);

    switch (out.mode) {
    case Mode::analyze:
    case Mode::series:
    case Mode::bound:
        check_keys(doc, {"A", "v", "p"});
        out.cfg = parse_configuration(doc);
        out.v = parse_exponent(doc, *out.cfg);
        out.primes = parse_primes(doc);
        break;
    case Mode::thm63:
        check_keys(doc, {"A", "v"});
        out.cfg = parse_configuration(doc);
        out.v = parse_exponent(doc, *out.cfg);
        break;
    case Mode::classical: {
        check_keys(doc, {"upper_exponents", "lower_exponents", "upper", "lower",
                         "modulus"});
        Int modulus = 0;
        if (doc.contains("modulus"))
            modulus = int_value(doc["modulus"], "modulus");
        try {
            out.ratio = make_spec(
                int_matrix(field(doc, "upper_exponents"), "upper_exponents"),
                int_matrix(field(doc, "lower_exponents"), "lower_exponents"),
                rat_array(field(doc, "upper"), "upper"),
                rat_array(field(doc, "lower"), "lower"), modulus);
        } catch (const input_error& e) {
            fail(std::string("classical payload: ") + e.what());
        }
        break;
    }
    case Mode::eisenstein: {
        check_keys(doc, {"annihilator", "prefix"});
        AlgebraicSeries s;
        s.annihilator = rat_matrix(field(doc, "annihilator"), "annihilator");
        s.prefix = rat_array(field(doc, "prefix"), "prefix");
        out.algebraic = std::move(s);
        break;
    }
    }
    return out;
}

Report run(const Problem& problem) {
    Report out;
    out.mode = problem.mode;
    out.params = problem.params;
    switch (problem.mode) {
    case Mode::analyze: run_analyze(problem, out); break;
    case Mode::series: run_series(problem, out); break;
    case Mode::bound: run_bound(problem, out); break;
    case Mode::thm63: run_thm63(problem, out); break;
    case Mode::classical: run_classical(problem, out); break;
    case Mode::eisenstein: run_eisenstein(problem, out); break;
    }
    return out;
}

std::string emit_json(const Report& report) {
    ReportJson doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["mode"] = mode_name(report.mode);
    ReportJson params;
    params["max_b"] = report.params.max_b;
    params["box"] = report.params.box;
    params["order"] = report.params.order;
    params["guard"] = report.params.guard.get_str();
    doc["parameters"] = params;
    doc["status"] = report.status;
    for (const auto& [key, value] : report.payload.items())
        doc[key] = value;
    return doc.dump(2) + "\n";
}

std::string emit_text(const Report& report) {
    std::ostringstream os;
    os << kToolName << " " << kToolVersion << "\n";
    os << "mode: " << mode_name(report.mode) << "\n";
    os << "status: " << report.status << "\n";
    os << "parameters: max_b=" << report.params.max_b << " box="
       << report.params.box << " order=" << report.params.order << " guard="
       << report.params.guard.get_str() << "\n";
    switch (report.mode) {
    case Mode::analyze: text_certificates(report.payload["certificates"], os); break;
    case Mode::bound: text_bounds(report.payload["bounds"], os); break;
    case Mode::series: text_series(report.payload, os); break;
    case Mode::classical: text_classical(report.payload["survey"], os); break;
    case Mode::thm63: text_thm63(report.payload["criterion"], os); break;
    case Mode::eisenstein: text_eisenstein(report.payload["eisenstein"], os); break;
    }
    return os.str();
}

Report parse_report(const std::string& text) {
    ReportJson doc;
    try {
        doc = ReportJson::parse(text);
    } catch (const ReportJson::parse_error& e) {
        throw input_error(std::string("report: JSON parse error: ") + e.what());
    }
    if (!doc.is_object())
        throw input_error("report: expected a JSON object");
    for (const char* key : {"tool", "version", "mode", "parameters", "status"})
        if (!doc.contains(key))
            throw input_error(std::string("report: missing field '") + key + "'");
    if (doc["tool"] != kToolName || doc["version"] != kToolVersion)
        throw input_error("report: emitted by a different tool or version");

    Report out;
    out.mode = mode_from_name(doc["mode"].get<std::string>());
    const ReportJson& params = doc["parameters"];
    out.params.max_b = long_value(field(params, "max_b"), "parameters.max_b");
    out.params.box = long_value(field(params, "box"), "parameters.box");
    out.params.order = long_value(field(params, "order"), "parameters.order");
    out.params.guard = int_value(field(params, "guard"), "parameters.guard");
    out.status = doc["status"].get<std::string>();
    for (const auto& [key, value] : doc.items()) {
        if (key == "tool" || key == "version" || key == "mode" ||
            key == "parameters" || key == "status")
            continue;
        out.payload[key] = value;
    }
    return out;
}

int exit_code_for(const std::string& status) {
    return status == "undecided" ? 2 : 0;
}

} // namespace hypint
