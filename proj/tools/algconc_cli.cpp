// Batch classifier: Seifert matrices in, algebraic concordance orders out.

#include "algconc/io.hpp"
#include "algconc/order_engine.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

using namespace algconc;

namespace {

constexpr int kOk = 0, kItemError = 1, kConfigError = 2;

std::optional<unsigned> jobs_from_env() {
  const char* s = std::getenv("ALGCONC_JOBS");
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) throw std::invalid_argument(std::string("ALGCONC_JOBS must be a positive integer, got \"") + s + "\"");
  return static_cast<unsigned>(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify Seifert matrices by their order in the algebraic concordance group."};
  std::string input = "-", output = "-", format = "json", report = "table";
  bool explain = false, verify = false;
  int max_precision = 64;
  unsigned jobs = 0;
  app.add_option("--input", input, "input file, - for stdin")->capture_default_str();
  app.add_option("--format", format, "input format")->check(CLI::IsMember({"json", "brace", "csv"}))->capture_default_str();
  app.add_option("--output", output, "report file, - for stdout")->capture_default_str();
  app.add_option("--report", report, "report format")->check(CLI::IsMember({"json", "csv", "table"}))->capture_default_str();
  app.add_flag("--explain", explain, "include full certificates in the report");
  app.add_option("--max-precision", max_precision, "p-adic precision ceiling k (work modulo p^k)")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  app.add_option("--jobs", jobs, "parallel workers (default: ALGCONC_JOBS, else 1)")->check(CLI::Range(1u, 1024u));
  app.add_flag("--verify", verify, "replay every certificate before emitting");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (jobs == 0) jobs = jobs_from_env().value_or(1);
  } catch (const std::exception& e) {
    std::cerr << "algconc: " << e.what() << "\n";
    return kConfigError;
  }

  std::vector<InputRecord> records;
  if (input == "-") {
    records = parse_input(std::cin, input_format_from_string(format));
  } else {
    std::ifstream in(input);
    if (!in) {
      std::cerr << "algconc: cannot open input " << input << "\n";
      return kConfigError;
    }
    records = parse_input(in, input_format_from_string(format));
  }

  std::ofstream file;
  if (output != "-") {
    file.open(output);
    if (!file) {
      std::cerr << "algconc: cannot open output " << output << "\n";
      return kConfigError;
    }
  }
  std::ostream& os = output == "-" ? std::cout : file;

  // Classify the parsable records; failed parses keep their slot.
  std::vector<BatchInput> batch;
  std::vector<std::size_t> slot(records.size(), SIZE_MAX);
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!records[i].ok()) continue;
    ClassifyOptions opt;
    opt.amphicheiral = records[i].amphicheiral.value_or(false);
    opt.max_precision = max_precision;
    slot[i] = batch.size();
    batch.push_back({records[i].name, records[i].seifert_matrix, opt});
  }
  std::vector<BatchResult> results = classify_batch(batch, jobs);

  int status = kOk;
  std::vector<ReportRecord> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    ReportRecord r;
    r.name = records[i].name;
    if (slot[i] == SIZE_MAX) {
      r.error = "line " + std::to_string(records[i].line) + ": " + records[i].error;
      status = kItemError;
      out.push_back(std::move(r));
      continue;
    }
    const BatchResult& b = results[slot[i]];
    r.seconds = b.seconds;
    if (!b.verdict) {
      r.error = b.error;
      status = kItemError;
    } else {
      r.order = b.verdict->order;
      r.reason = b.verdict->reason;
      r.rule = b.verdict->certificate.back().rule;
      if (verify) {
        r.verified = verify_certificate(records[i].seifert_matrix, *b.verdict);
        if (!*r.verified) status = kItemError;
      }
      if (explain) r.certificate = b.verdict->certificate;
    }
    out.push_back(std::move(r));
  }
  write_report(os, out, report_format_from_string(report));
  os.flush();
  if (!os) {
    std::cerr << "algconc: failed writing report\n";
    return kConfigError;
  }
  for (const auto& r : out)
    if (!r.error.empty()) std::cerr << "algconc: " << r.name << ": " << r.error << "\n";
  return status;
}
