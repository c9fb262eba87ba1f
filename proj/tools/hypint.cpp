#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hypint/error.hpp"
#include "hypint/report.hpp"

using namespace hypint;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw input_error("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& bytes) {
    if (path.empty()) {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw input_error("cannot open output file '" + path + "'");
    out << bytes;
    if (!out)
        throw input_error("failed writing output file '" + path + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact integrality certificates for hypergeometric series"};
    app.require_subcommand(1);

    std::string input, output, format = "json", guard;
    long max_b = 0, box = 0, order = 0, threads = 0;

    const std::pair<const char*, const char*> subcommands[] = {
        {"analyze", "certify p-integrality of the series attached to (A, v), or "
                    "find an unbounded-valuation witness"},
        {"classical", "residue-class integrality survey for a Pochhammer ratio "
                      "family"},
        {"series", "expand the series attached to (A, v) with exact valuations"},
        {"bound", "compare the p-adic weight of v with the coset lower bound"},
        {"thm63", "interior support-weight criterion for {-1,0} exponents"},
        {"eisenstein", "denominator-clearing constant for an algebraic power "
                       "series prefix"},
    };
    for (const auto& [name, description] : subcommands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--input", input, "problem file (JSON)")->required();
        sub->add_option("--output", output, "write the report here instead of stdout");
        sub->add_option("--format", format, "report format")
            ->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--max-b", max_b, "exponent steps for the witness search");
        sub->add_option("--box", box, "coordinate radius for the witness search");
        sub->add_option("--order", order, "series truncation order");
        sub->add_option("--guard", guard, "enumeration node guard");
        sub->add_option("--threads", threads, "worker threads (0 = library default)");
    }
    CLI11_PARSE(app, argc, argv);
    CLI::App* sub = app.get_subcommands().front();

    try {
        Problem problem = parse_problem(read_file(input));
        if (mode_name(problem.mode) != sub->get_name())
            throw input_error("mode '" + mode_name(problem.mode) +
                              "' in the problem file does not match subcommand '" +
                              sub->get_name() + "'");
        if (sub->count("--max-b")) {
            if (max_b < 1)
                throw input_error("--max-b must be at least 1");
            problem.params.max_b = max_b;
        }
        if (sub->count("--box")) {
            if (box < 0)
                throw input_error("--box must be nonnegative");
            problem.params.box = box;
        }
        if (sub->count("--order")) {
            if (order < 0)
                throw input_error("--order must be nonnegative");
            problem.params.order = order;
        }
        if (sub->count("--guard")) {
            try {
                problem.params.guard = Int(guard);
            } catch (const std::invalid_argument&) {
                throw input_error("--guard: '" + guard + "' is not an integer");
            }
            if (problem.params.guard < 1)
                throw input_error("--guard must be positive");
        }
        if (threads < 0)
            throw input_error("--threads must be nonnegative");
#ifdef _OPENMP
        if (threads > 0)
            omp_set_num_threads(static_cast<int>(threads));
#endif

        const auto started = std::chrono::steady_clock::now();
        Report report = run(problem);
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - started);

        write_output(output, format == "text" ? emit_text(report)
                                              : emit_json(report));
        // Timing stays out of the canonical report so bytes are reproducible.
        std::cerr << "# elapsed_ms=" << elapsed.count() << "\n";
        return exit_code_for(report.status);
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const resource_error& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
