#include <ostream>

#include "treeitp/driver.hpp"
#include "treeitp/printer.hpp"
#include "treeitp/reader.hpp"
#include "treeitp/simplify.hpp"

namespace treeitp {

namespace {

std::string node_list(const TreeProblem& problem, const std::vector<int>& nodes) {
    std::string s = "(";
    for (std::size_t i = 0; i < nodes.size(); ++i)
        s += (i ? " " : "") + problem.node(nodes[i]).name;
    return s + ")";
}

}  // namespace

int run(const RunConfig& config, const std::vector<std::string>& texts, std::ostream& out,
        std::ostream& err) {
    Context ctx;
    TermParser parser(ctx);
    Document doc;
    try {
        doc = read_document(parser, texts);
    } catch (const MalformedProof& e) {
        err << "error: " << e.what() << "\n";
        return kExitProofRejected;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    if (!doc.problem) {
        err << "error: no tree given\n";
        return kExitInputError;
    }
    const TreeProblem& problem = doc.problem->problem;

    CheckReport check = check_proof(doc.proof, problem);
    if (!check.ok()) {
        for (const Violation& v : check.violations)
            err << "proof: " << v.node << ": " << v.message << "\n";
        return kExitProofRejected;
    }

    ColouringOptions options;
    switch (config.colouring) {
    case ColouringSource::Heuristic:
        options.strategy = ColouringStrategy::Heuristic;
        break;
    case ColouringSource::File:
        options.strategy = ColouringStrategy::Fixed;
        options.fixed = doc.colours;
        break;
    case ColouringSource::Random:
        if (!config.seed) {
            err << "error: random colouring needs a seed\n";
            return kExitInputError;
        }
        options.strategy = ColouringStrategy::Random;
        options.seed = *config.seed;
        break;
    }

    try {
        Colouring colouring = assign_colours(doc.proof, problem, options);
        Interpolator interpolator(problem, doc.proof, colouring);
        const auto& vectors = interpolator.run();
        auto shown = [&](Formula f) { return to_string(config.simplify ? simplify(ctx, f) : f); };

        if (doc.binarized)
            for (const auto& [name, v] : doc.problem->node_of)
                if (problem.node(v).name != name)
                    out << "; node " << name << " is internal node " << problem.node(v).name << "\n";
        const InterpolantVector& root = interpolator.root();
        for (int v = 0; v < static_cast<int>(problem.num_nodes()); ++v)
            if (v != problem.root() && !problem.node(v).synthetic)
                out << "(interpolant " << problem.node(v).name << " " << shown(root.at[v]) << ")\n";
        if (config.dump_partials)
            for (int i : doc.proof.order())
                for (int v = 0; v < static_cast<int>(problem.num_nodes()); ++v)
                    out << "(partial " << doc.proof.node(i).name << " " << problem.node(v).name
                        << " " << shown(vectors[i].at[v]) << ")\n";

        if (config.validate == ValidationLevel::Off)
            return kExitOk;
        Validator validator(problem, doc.proof, interpolator, config.budget);
        ValidationReport report = config.parallel ? validator.check_all(config.validate)
                                                  : validator.check_all_serial(config.validate);
        for (const ObligationResult& r : report.results) {
            const Obligation& o = r.obligation;
            const std::string& proof_node = doc.proof.node(o.proof_node).name;
            out << "(obligation " << proof_node << " " << to_string(o.kind) << " "
                << node_list(problem, o.tree_nodes) << " " << to_string(r.verdict.kind) << ")\n";
            if (!r.verdict.passed())
                err << to_string(r.verdict.kind) << ": " << proof_node << " " << to_string(o.kind)
                    << " " << node_list(problem, o.tree_nodes) << ": " << r.verdict.detail << "\n";
        }
        out << "(summary :obligations " << report.results.size() << " :valid "
            << report.count(VerdictKind::Valid) << " :bounded "
            << report.count(VerdictKind::ValidUpToSize) << " :failed " << report.failed()
            << " :unknown " << report.unknown() << ")\n";
        if (report.failed() > 0)
            return kExitObligationFailed;
        if (report.unknown() > 0)
            err << "warning: " << report.unknown() << " obligations undecided\n";
        return kExitOk;
    } catch (const InvalidColouring& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitProofRejected;
    }
}

}  // namespace treeitp
