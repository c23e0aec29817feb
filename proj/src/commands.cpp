#include "credalkit/commands.hpp"

#include <CLI11.hpp>
#include <fstream>

#include "credalkit/io.hpp"

namespace credalkit {

namespace {

std::string envelope_line(const CredalSet& belief, const Query& query) {
    Rational lo, hi;
    if (query.given) {
        std::tie(lo, hi) = conditional_envelopes(belief, query.target, *query.given);
    } else {
        lo = lower_envelope(belief, query.target);
        hi = upper_envelope(belief, query.target);
    }
    return to_string(query) + " : [" + to_exact_string(lo) + ", " + to_exact_string(hi) +
           "] = [" + to_decimal4(lo) + ", " + to_decimal4(hi) + "]";
}

struct AdjustArgs {
    std::string model_path;
    std::string evidence_path;
    std::string op_name;
    std::vector<std::string> queries;
    std::string out_path;
    bool coupled = false;
};

int cmd_adjust(const AdjustArgs& args, std::string& out) {
    const Model model = load_model(args.model_path);
    const Evidence evidence = load_evidence(args.evidence_path, model.space);
    const AdjustmentOp op = standard_operator(args.op_name, args.coupled);
    const CredalSet adjusted = op.apply(model.belief, evidence);

    for (const std::string& q : args.queries)
        out += envelope_line(adjusted, parse_query(q, model.space)) + "\n";

    if (!args.out_path.empty()) {
        std::ofstream file(args.out_path, std::ios::binary);
        if (!file) throw UsageError("cannot write '" + args.out_path + "'");
        file << model_to_string(adjusted);
    }
    return 0;
}

struct CheckArgs {
    std::string model_path;
    std::string evidence_path;
    std::string op_name;
    std::string family;
    std::string aux_path;
    bool strict = false;
    bool coupled = false;
};

int cmd_check(const CheckArgs& args, std::string& out) {
    const Model model = load_model(args.model_path);
    const Evidence evidence = load_evidence(args.evidence_path, model.space);
    const AdjustmentOp op = standard_operator(args.op_name, args.coupled);

    std::vector<std::string> lines;
    bool ok = false;
    if (args.family == "pk" || args.family == "cpk") {
        if (!model.belief.is_sharp())
            throw UsageError("family '" + args.family + "' needs a sharp model");
        const CredalSet adjusted = op.apply(model.belief, evidence);
        if (!adjusted.is_sharp())
            throw UsageError("family '" + args.family + "' needs a sharp adjustment");
        KinematicsReport report;
        if (args.family == "pk") {
            const auto* ev = std::get_if<MarginalEvidence>(&evidence);
            if (!ev) throw UsageError("family 'pk' needs marginal evidence");
            report = check_pk(model.belief.sharp(), adjusted.sharp(), *ev);
        } else {
            const auto* ev = std::get_if<ConditionalEvidence>(&evidence);
            if (!ev) throw UsageError("family 'cpk' needs conditional evidence");
            report = check_cpk(model.belief.sharp(), adjusted.sharp(), *ev);
        }
        lines = render_lines(report);
        ok = report.all_hold();
    } else if (args.family == "ik") {
        CredalEvidence credal = [&] {
            if (const auto* ev = std::get_if<CredalEvidence>(&evidence)) return *ev;
            const auto* m = std::get_if<MarginalEvidence>(&evidence);
            if (!m) throw UsageError("family 'ik' needs marginal or credal evidence");
            std::vector<std::pair<Rational, Rational>> bounds;
            for (const auto& c : m->value_prob()) bounds.emplace_back(c, c);
            return CredalEvidence(m->space(), m->variable(), std::move(bounds));
        }();
        const CredalSet adjusted = op.apply(model.belief, evidence);
        const KinematicsReport report =
            check_ik(model.belief, adjusted, credal, args.strict);
        lines = render_lines(report);
        ok = report.all_hold();
    } else if (args.family == "ick") {
        const auto* ev = std::get_if<ConditionalEvidence>(&evidence);
        if (!ev) throw UsageError("family 'ick' needs conditional evidence");
        const CredalSet adjusted = op.apply(model.belief, evidence);
        const KinematicsReport report = check_ick(model.belief, adjusted, *ev, args.strict);
        lines = render_lines(report);
        ok = report.all_hold();
    } else if (args.family == "km") {
        std::optional<Evidence> aux;
        if (!args.aux_path.empty()) aux = load_evidence(args.aux_path, model.space);
        const PostulateReport report = check_km(model.belief, evidence, op, aux);
        lines = render_lines(report);
        ok = report.all_hold();
    } else {
        throw UsageError("unknown family '" + args.family + "'");
    }

    for (const std::string& line : lines) out += line + "\n";
    return ok ? 0 : 3;
}

struct EnvelopeArgs {
    std::string model_path;
    std::vector<std::string> queries;
};

int cmd_envelope(const EnvelopeArgs& args, std::string& out) {
    const Model model = load_model(args.model_path);
    for (const std::string& q : args.queries)
        out += envelope_line(model.belief, parse_query(q, model.space)) + "\n";
    return 0;
}

} // namespace

CommandResult run_cli(const std::vector<std::string>& args) {
    CLI::App app{"belief adjustment over sharp and credal probability models"};
    app.require_subcommand(1);

    AdjustArgs adjust;
    CLI::App* adjust_cmd =
        app.add_subcommand("adjust", "apply an adjustment operator and query the result");
    adjust_cmd->add_option("--model", adjust.model_path, "model file")->required();
    adjust_cmd->add_option("--evidence", adjust.evidence_path, "evidence file")->required();
    adjust_cmd
        ->add_option("--op", adjust.op_name,
                     "condition | jeffrey | adams | image | jeffrey-image | adams-image | "
                     "credal-jeffrey-image | identity")
        ->required();
    adjust_cmd->add_option("--query", adjust.queries,
                           "formula, or 'target | given' for a conditional query (repeatable)");
    adjust_cmd->add_option("--out", adjust.out_path, "write the adjusted model here");
    adjust_cmd->add_flag("--coupled", adjust.coupled,
                         "tie Adams'-imaging components to one extreme point");

    CheckArgs check;
    CLI::App* check_cmd =
        app.add_subcommand("check", "run an operator and verify a kinematics family");
    check_cmd->add_option("--model", check.model_path, "model file")->required();
    check_cmd->add_option("--evidence", check.evidence_path, "evidence file")->required();
    check_cmd->add_option("--op", check.op_name, "operator name")->required();
    check_cmd->add_option("--family", check.family, "pk | cpk | ik | ick | km")->required();
    check_cmd->add_option("--aux-evidence", check.aux_path,
                          "second evidence file for the KM conjunction postulates");
    check_cmd->add_flag("--strict", check.strict, "demand envelope equality for IK1/ICK1");
    check_cmd->add_flag("--coupled", check.coupled,
                        "tie Adams'-imaging components to one extreme point");

    EnvelopeArgs envelope;
    CLI::App* envelope_cmd =
        app.add_subcommand("envelope", "print lower/upper envelopes of queries");
    envelope_cmd->add_option("--model", envelope.model_path, "model file")->required();
    envelope_cmd->add_option("--query", envelope.queries, "query formula (repeatable)");

    CommandResult result{0, "", ""};
    std::vector<std::string> argv_storage = args;
    std::vector<const char*> argv;
    argv.push_back("credalkit");
    for (const std::string& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        result.out = app.help();
        return result;
    } catch (const CLI::ParseError& e) {
        result.err = std::string(e.what()) + "\n";
        result.exit_code = 1;
        return result;
    }

    try {
        if (adjust_cmd->parsed()) result.exit_code = cmd_adjust(adjust, result.out);
        if (check_cmd->parsed()) result.exit_code = cmd_check(check, result.out);
        if (envelope_cmd->parsed()) result.exit_code = cmd_envelope(envelope, result.out);
    } catch (const ParseError& e) {
        result.err = std::string("error: ") + e.what() + "\n";
        result.exit_code = 1;
    } catch (const UsageError& e) {
        result.err = std::string("error: ") + e.what() + "\n";
        result.exit_code = 1;
    } catch (const Error& e) {
        result.err = std::string("error: ") + e.what() + "\n";
        result.exit_code = 2;
    }
    return result;
}

} // namespace credalkit
