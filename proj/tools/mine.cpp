#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "topicmine/errors.hpp"
#include "topicmine/exports.hpp"
#include "topicmine/pipeline.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string input;
  std::string input_format;
  std::string k;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool strict_repro = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "TOML config file");
  cmd->add_option("--input", f.input, "input file (one document per line)");
  cmd->add_option("--input-format", f.input_format, "lines or tsv")
      ->check(CLI::IsMember({"lines", "tsv"}));
  cmd->add_option("--k", f.k, "number of topics, or 'auto' for the eigengap suggestion");
  cmd->add_option("--seed", f.seed, "master RNG seed")->each([&f](const std::string&) {
    f.seed_given = true;
  });
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_flag("--strict-repro", f.strict_repro,
                "reproducible mode: omit timings, require an explicit seed");
}

topicmine::PipelineConfig resolve_config(const CommonFlags& f) {
  topicmine::PipelineConfig cfg;
  bool seed_in_file = false;
  if (!f.config_path.empty()) {
    const topicmine::TomlTable table = topicmine::load_toml_file(f.config_path);
    cfg = topicmine::config_from_toml(table);
    seed_in_file = table.has("seed");
  }
  if (!f.input.empty()) cfg.input_path = f.input;
  if (!f.input_format.empty())
    cfg.input_format = f.input_format == "tsv" ? topicmine::InputFormat::tsv
                                               : topicmine::InputFormat::lines;
  if (!f.k.empty()) {
    if (f.k == "auto") {
      cfg.k = 0;
    } else {
      try {
        cfg.k = std::stoi(f.k);
      } catch (...) {
        throw topicmine::ConfigError("--k must be an integer or 'auto'");
      }
      if (cfg.k < 1) throw topicmine::ConfigError("--k must be >= 1");
    }
  }
  if (f.seed_given) cfg.seed = f.seed;
  if (!f.out.empty()) cfg.out_dir = f.out;
  if (f.strict_repro) cfg.strict_repro = true;
  if (cfg.strict_repro && !f.seed_given && !seed_in_file)
    throw topicmine::ConfigError("--strict-repro requires an explicit seed");
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"topicmine: topic discovery in short-text corpora"};
  app.require_subcommand(1);

  CommonFlags run_flags, eigs_flags, noise_flags;
  std::string eigs_out, noise_out;

  CLI::App* run = app.add_subcommand("run", "full pipeline with exports");
  add_common(run, run_flags);
  CLI::App* eigs = app.add_subcommand("eigs", "print the Laplacian spectrum and suggested k");
  add_common(eigs, eigs_flags);
  eigs->add_option("--eigs-out", eigs_out, "also write the spectrum as TSV");
  CLI::App* noise = app.add_subcommand("noise", "print the noise-removal report");
  add_common(noise, noise_flags);
  noise->add_option("--noise-out", noise_out, "also write per-document flags as TSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const auto cfg = resolve_config(run_flags);
      const auto result = topicmine::run_pipeline(cfg, topicmine::RunMode::full);
      std::cout << topicmine::format_report(result);
      std::cout << "outputs written to " << cfg.out_dir << "\n";
    } else if (eigs->parsed()) {
      const auto cfg = resolve_config(eigs_flags);
      const auto result = topicmine::run_pipeline(cfg, topicmine::RunMode::eigs_only);
      std::cout << topicmine::format_eigs_report(result);
      if (!eigs_out.empty())
        topicmine::export_eigenvalues_tsv(result.spectrum.eigenvalues, eigs_out);
    } else if (noise->parsed()) {
      const auto cfg = resolve_config(noise_flags);
      const auto result = topicmine::run_pipeline(cfg, topicmine::RunMode::noise_only);
      std::cout << topicmine::format_noise_report(result);
      if (!noise_out.empty()) {
        std::ofstream out(noise_out, std::ios::binary);
        if (!out) throw topicmine::IoError("cannot open " + noise_out);
        out << "doc_id\talg1\talg2\talg3\tremoved\n";
        const auto& v = result.verdict;
        for (std::size_t i = 0; i < result.deduped_docs.size(); ++i)
          out << result.deduped_docs[i].id << '\t' << v.alg1[i] << '\t' << v.alg2[i] << '\t'
              << v.alg3[i] << '\t' << v.combined[i] << '\n';
      }
    }
  } catch (const topicmine::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
