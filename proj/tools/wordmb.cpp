// Command-line surface: power / word / sweep / oracle / field, with seeded,
// reproducible JSON reports.
#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wordmb/report.hpp"

using namespace wordmb;

namespace {

long long now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

int exit_for_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  if (msg.rfind("unsupported size", 0) == 0 || msg.find("above the factorable bound") != std::string::npos)
    return 3;
  return 2;
}

int cmd_power(long long e, const RunConfig& cfg) {
  long long t0 = now_ms();
  Verdict v = decide_power(e, cfg);
  long long elapsed = now_ms() - t0;
  if (cfg.json) {
    std::cout << verdict_json(v, json{{"kind", "power"}, {"e", e}}, cfg, elapsed).dump() << "\n";
  } else {
    std::cout << "power " << e << ": " << verdict_text(v);
  }
  return verdict_exit_code(v.kind);
}

int cmd_word(const std::string& text, const std::string& mode, const RunConfig& cfg) {
  Word w = parse_word(text);
  if (w.empty()) {
    std::cerr << "error: word is empty after free reduction\n";
    return 2;
  }
  long long t0 = now_ms();
  Verdict v = mode == "vwmb" ? decide_vwmb(w, cfg) : decide_vsmb(w, cfg);
  long long elapsed = now_ms() - t0;
  if (cfg.json) {
    std::cout << verdict_json(
                     v, json{{"kind", "word"}, {"text", format_word(w)}, {"mode", mode}}, cfg,
                     elapsed)
                     .dump()
              << "\n";
  } else {
    std::cout << "word " << format_word(w) << " (" << mode << "): " << verdict_text(v);
  }
  return verdict_exit_code(v.kind);
}

int cmd_sweep(int l, const RunConfig& cfg, const std::string& resume_path) {
  std::set<std::string> skip;
  if (!resume_path.empty()) {
    std::ifstream in(resume_path);
    if (!in) {
      std::cerr << "error: cannot read resume file " << resume_path << "\n";
      return 2;
    }
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto j = json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) continue;
      if (j.value("type", "") == "word" && j.value("verdict", "") == "VWMB")
        skip.insert(j.value("word", ""));
    }
  }
  long long t0 = now_ms();
  std::cout << json{{"type", "config"}, {"l_max", l}, {"config", config_json(cfg)}}.dump() << "\n";
  SweepReport rep = sweep(
      l, cfg,
      [&](const SweepWordLine& line) { std::cout << sweep_line_json(line, cfg).dump() << "\n"; },
      skip);
  for (const SweepLengthReport& lr : rep.lengths)
    std::cout << sweep_length_json(lr).dump() << "\n";
  std::cout << json{{"type", "summary"},
                    {"ok", rep.ok},
                    {"l_max", rep.l_max},
                    {"elapsed_ms", now_ms() - t0}}
                   .dump()
            << "\n";
  return rep.ok ? 0 : 1;
}

int cmd_oracle(const std::string& name, const RunConfig& cfg) {
  std::vector<std::string> names;
  if (name == "all") {
    names = oracle_check_names();
  } else {
    names.push_back(name);
  }
  bool all_pass = true;
  for (const std::string& n : names) {
    long long t0 = now_ms();
    OracleResult res = run_oracle_check(n, cfg);
    all_pass = all_pass && res.pass;
    std::cout << json{{"check", res.name},
                      {"pass", res.pass},
                      {"data", res.data},
                      {"config", config_json(cfg)},
                      {"elapsed_ms", now_ms() - t0}}
                     .dump()
              << "\n";
  }
  return all_pass ? 0 : 1;
}

Poly parse_coeffs(const std::string& text) {
  Poly out;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      if (cur.empty()) throw error("empty coefficient");
      out.push_back(std::stoull(cur));
      cur.clear();
    } else if (c >= '0' && c <= '9') {
      cur += c;
    } else if (c != ' ') {
      throw error(std::string("unexpected character '") + c + "' in coefficient list");
    }
  }
  return out;
}

int cmd_field_find(std::uint64_t p, int k, const RunConfig& cfg) {
  Poly f = find_irreducible(p, k, mix_seed(cfg.seed, "cli-field"));
  json j{{"p", p},
         {"k", k},
         {"seed", cfg.seed},
         {"modulus", f},
         {"irreducible", true}};
  if (pow_mpz(p, static_cast<unsigned long>(k)) - 1 <= mpz_class("18446744073709551615"))
    j["primitive"] = is_primitive(f, p);
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_field_verify(std::uint64_t p, int k, const std::string& coeffs) {
  Poly f = parse_coeffs(coeffs);
  if (static_cast<int>(f.size()) != k + 1) {
    std::cerr << "error: expected " << k + 1 << " coefficients\n";
    return 2;
  }
  bool irr = is_irreducible(f, p);
  json j{{"p", p}, {"k", k}, {"modulus", f}, {"irreducible", irr}};
  if (irr) j["primitive"] = is_primitive(f, p);  // throws exit-3 error past the bound
  std::cout << j.dump() << "\n";
  return irr ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision procedures for multiplicity-bounding words over PSL2 and Suzuki groups"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  cfg.json = true;
  bool text = false;
  app.add_option("--seed", cfg.seed, "global random seed");
  app.add_option("--budget", cfg.budget, "random witness samples per assignment")
      ->check(CLI::PositiveNumber);
  app.add_option("--threshold", cfg.threshold, "exhaustive evaluation cap")
      ->check(CLI::PositiveNumber);
  app.add_option("--jobs", cfg.jobs, "parallel workers")->check(CLI::PositiveNumber);
  app.add_flag("--json", "emit machine-readable JSON (default)");
  app.add_flag("--text", text, "emit human-readable text instead of JSON");

  long long power_e = 0;
  auto* power = app.add_subcommand("power", "decide a power word from its exponent");
  power->fallthrough();
  power->add_option("e", power_e, "nonzero exponent")->required();

  std::string word_text, word_mode = "vsmb";
  auto* word = app.add_subcommand("word", "decide a reduced word");
  word->fallthrough();
  word->add_option("text", word_text, "word, e.g. abAB or a^3B^2")->required();
  word->add_option("--mode", word_mode, "vsmb or vwmb")
      ->check(CLI::IsMember({"vsmb", "vwmb"}));

  int sweep_l = 0;
  std::string resume_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "certify all reduced words up to a length");
  sweep_cmd->fallthrough();
  sweep_cmd->add_option("l", sweep_l, "maximum length, 1..8")->required();
  sweep_cmd->add_option("--resume", resume_path, "previous sweep report to skip words from");

  std::string oracle_name;
  auto* oracle_cmd = app.add_subcommand("oracle", "run an exhaustive verification suite");
  oracle_cmd->fallthrough();
  oracle_cmd->add_option("name", oracle_name, "check name or 'all'")->required();

  auto* field_cmd = app.add_subcommand("field", "irreducible/primitive polynomial utilities");
  field_cmd->fallthrough();
  std::uint64_t field_p = 0;
  int field_k = 0;
  std::string field_coeffs;
  auto* ffind = field_cmd->add_subcommand("find-irreducible", "seeded random search");
  ffind->fallthrough();
  ffind->add_option("p", field_p, "prime characteristic")->required();
  ffind->add_option("k", field_k, "degree")->required();
  auto* fverify = field_cmd->add_subcommand("verify", "verify a supplied polynomial");
  fverify->fallthrough();
  fverify->add_option("p", field_p, "prime characteristic")->required();
  fverify->add_option("k", field_k, "degree")->required();
  fverify->add_option("coeffs", field_coeffs, "comma-separated, low to high")->required();
  field_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  cfg.json = !text;

  try {
    if (power->parsed()) {
      if (power_e == 0) {
        std::cerr << "error: the empty word is rejected; e must be nonzero\n";
        return 2;
      }
      return cmd_power(power_e, cfg);
    }
    if (word->parsed()) return cmd_word(word_text, word_mode, cfg);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_l, cfg, resume_path);
    if (oracle_cmd->parsed()) {
      auto names = oracle_check_names();
      if (oracle_name != "all" &&
          std::find(names.begin(), names.end(), oracle_name) == names.end()) {
        std::cerr << "error: unknown check '" << oracle_name << "'\n";
        return 2;
      }
      return cmd_oracle(oracle_name, cfg);
    }
    if (field_cmd->parsed()) {
      if (!is_prime_u64(field_p)) {
        std::cerr << "error: p must be prime\n";
        return 2;
      }
      if (field_k < 1) {
        std::cerr << "error: k must be >= 1\n";
        return 2;
      }
      if (ffind->parsed()) return cmd_field_find(field_p, field_k, cfg);
      return cmd_field_verify(field_p, field_k, field_coeffs);
    }
  } catch (const error& e) {
    return exit_for_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
