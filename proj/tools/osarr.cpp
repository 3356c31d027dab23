#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "osarr/cli.hpp"
#include "osarr/errors.hpp"

namespace {

enum Exit { kOk = 0, kInput = 1, kSkipped = 2, kViolation = 3 };

template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const osarr::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const osarr::PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return kSkipped;
  } catch (const osarr::InternalInvariantViolation& e) {
    std::cerr << "INVARIANT VIOLATION: " << e.what() << "\n";
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orlik-Solomon algebras, hypersolvable arrangements and torsion searches"};
  app.set_version_flag("--version", std::string(osarr::kVersion));
  app.require_subcommand(1);

  std::string input, format, fields, json_path, family, output;
  std::optional<std::size_t> max_degree, size;
  bool timing = false, chordless = false, text = false;
  osarr::SearchJob job;

  auto* analyze = app.add_subcommand("analyze", "classify an arrangement and compute its homotopy data");
  analyze->add_option("--input", input, "arrangement or graph file")->required();
  analyze->add_option("--format", format, "arr or graph (default: from the header)");
  analyze->add_option("--fields", fields, "comma separated characteristics for the r-table, e.g. 0,2,3,5");
  analyze->add_option("--json", json_path, "write the JSON report here ('-' for stdout)");
  analyze->add_option("--max-degree", max_degree, "cap the degrees of Hilbert data and r-tables");
  analyze->add_flag("--timing", timing, "add wall-clock timings to the report");
  analyze->add_flag("--text", text, "print a text summary even when --json is given");

  auto* circ = app.add_subcommand("circuits", "list circuits");
  circ->add_option("--input", input, "arrangement or graph file")->required();
  circ->add_option("--format", format, "arr or graph");
  circ->add_flag("--chordless", chordless, "only chordless circuits");
  circ->add_option("--size", size, "only circuits of this size");

  auto* search = app.add_subcommand("search", "sweep a family for torsion");
  search->add_option("--family", family, "graphic or random2g")->required();
  search->add_option("--max-size", job.max_size, "vertices (graphic) or hyperplanes (random2g)")->required();
  search->add_option("--seed", job.seed, "random seed");
  search->add_option("--output", output, "JSONL output path ('-' for stdout)")->required();
  search->add_option("--count", job.count, "random2g: number of instances");
  search->add_option("--max-dim", job.max_dim, "random2g: largest ambient dimension");
  search->add_option("--jobs", job.workers, "worker threads (0: all cores)");

  CLI11_PARSE(app, argc, argv);

  auto spec = [&] {
    osarr::InputSpec s;
    s.path = input;
    if (!format.empty()) s.format = osarr::parse_format(format);
    if (!fields.empty()) s.fields = osarr::parse_fields(fields);
    s.max_degree = max_degree;
    s.timing = timing;
    return s;
  };

  if (*analyze) {
    return guarded([&] {
      auto result = osarr::cmd_analyze(spec());
      if (!json_path.empty()) osarr::emit_report(result.report, json_path);
      if (json_path.empty() || (text && json_path != "-")) std::cout << osarr::render_text(result.report);
      return result.exit_code;
    });
  }
  if (*circ) {
    return guarded([&] {
      osarr::emit_report(osarr::cmd_circuits(spec(), chordless, size), "-");
      return int{kOk};
    });
  }
  return guarded([&] {
    job.family = osarr::parse_family(family);
    job.output = output;
    const auto summary = osarr::cmd_search(job);
    std::cerr << "candidates " << summary.candidates << ", instances " << summary.instances << ", torsion "
              << summary.torsion_found << ", violations " << summary.violations << "\n";
    return summary.violations ? int{kViolation} : int{kOk};
  });
}
