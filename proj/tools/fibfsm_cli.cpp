// Command-line frontend.  Every subcommand is deterministic given its
// flags; all randomness flows from a single 64-bit seed (default 0).
// Exit codes: 0 success, 1 internal assertion/violation, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <fibfsm/fsm.hpp>
#include <fibfsm/io.hpp>
#include <fibfsm/subshift.hpp>
#include <fibfsm/transfer.hpp>
#include <fibfsm/word.hpp>

namespace {

constexpr const char* kToolVersion = "1.0.0";

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void attach_metadata(nlohmann::json& j, const std::string& config) {
  j["tool_version"] = kToolVersion;
  j["config_hash"] = fnv1a(config);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n')
      std::cout << '\n';
  } else {
    std::ofstream f(out_path, std::ios::binary);
    f << text;
  }
}

fibfsm::CutoffSchedule make_schedule(const std::string& kind, long step,
                                     std::uint64_t seed, long max_step) {
  fibfsm::CutoffSchedule s;
  if (kind == "symmetric")
    s.kind = fibfsm::CutoffSchedule::Kind::symmetric;
  else if (kind == "one_sided")
    s.kind = fibfsm::CutoffSchedule::Kind::one_sided;
  else if (kind == "fibonacci")
    s.kind = fibfsm::CutoffSchedule::Kind::fibonacci;
  else if (kind == "random")
    s.kind = fibfsm::CutoffSchedule::Kind::random;
  else
    throw CLI::ValidationError("schedule", "unknown schedule kind: " + kind);
  s.step = step;
  s.seed = seed;
  s.max_step = max_step;
  return s;
}

int parse_p(const std::string& p) {
  if (p == "1")
    return 1;
  if (p == "2")
    return 2;
  if (p == "inf")
    return 0;
  throw CLI::ValidationError("p", "p must be 1, 2 or inf");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fibonacci Hamiltonian finite-section toolbox"};
  app.require_subcommand(1);

  std::string format = "text";
  std::string out_path;
  std::uint64_t seed = 0;
  app.add_option("--format", format, "output format: text, json or csv")
      ->capture_default_str();
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--seed", seed, "seed for randomized schedules")
      ->capture_default_str();

  // word
  auto* word_cmd = app.add_subcommand("word", "emit a window of the word");
  long w_from = 1, w_to = 55, sym_radius = 0;
  bool check_symmetry = false;
  word_cmd->add_option("--from", w_from, "first index");
  word_cmd->add_option("--to", w_to, "last index");
  word_cmd->add_flag("--check-symmetry", check_symmetry,
                     "run the v_n = v_{-1-n} self-check");
  word_cmd->add_option("--radius", sym_radius, "symmetry check radius")
      ->default_val(10000);

  // subwords
  auto* sub_cmd = app.add_subcommand("subwords", "subword complexity table");
  std::size_t sub_max = 4;
  sub_cmd->add_option("--max", sub_max, "maximal subword length")
      ->capture_default_str();

  // partition
  auto* part_cmd =
      app.add_subcommand("partition", "block partition of a hull window");
  long p_shift = 0;
  std::size_t p_width = 50;
  std::string p_dir = "right";
  part_cmd->add_option("--shift", p_shift, "window center");
  part_cmd->add_option("--width", p_width, "window half width");
  part_cmd->add_option("--direction", p_dir, "right or left")
      ->capture_default_str();

  // certify
  auto* cert_cmd =
      app.add_subcommand("certify", "transfer-matrix growth certificate");
  std::string c_mode = "one_sided", c_prefix = "eps";
  std::string c_alpha = "1", c_beta = "1", c_bound = "1000000";
  long c_shift = 0;
  std::size_t c_width = 3000;
  bool c_trajectory = false;
  cert_cmd->add_option("--mode", c_mode, "one_sided or two_sided")
      ->capture_default_str();
  cert_cmd->add_option("--prefix", c_prefix, "one_sided start: eps or 1")
      ->capture_default_str();
  cert_cmd->add_option("--shift", c_shift, "one_sided window center");
  cert_cmd->add_option("--width", c_width, "window half width")
      ->capture_default_str();
  cert_cmd->add_option("--alpha", c_alpha, "two_sided seed x_0 (rational)");
  cert_cmd->add_option("--beta", c_beta, "two_sided seed x_1 (rational)");
  cert_cmd->add_option("--bound", c_bound, "growth bound (rational)")
      ->capture_default_str();
  cert_cmd->add_flag("--trajectory", c_trajectory, "record the trajectory");

  // stability
  auto* stab_cmd = app.add_subcommand("stability", "inverse-norm sweep");
  std::string s_schedule = "symmetric", s_p = "2";
  long s_step = 1, s_max_step = 8;
  std::size_t s_count = 100;
  stab_cmd->add_option("--schedule", s_schedule,
                       "symmetric, one_sided, fibonacci or random")
      ->capture_default_str();
  stab_cmd->add_option("--step", s_step, "stride")->capture_default_str();
  stab_cmd->add_option("--max-step", s_max_step, "random stride cap")
      ->capture_default_str();
  stab_cmd->add_option("--count", s_count, "number of truncations")
      ->capture_default_str();
  stab_cmd->add_option("--p", s_p, "norm: 1, 2 or inf")->capture_default_str();

  // fsm
  auto* fsm_cmd =
      app.add_subcommand("fsm", "pointwise convergence of the inverses");
  std::string f_schedule = "symmetric";
  long f_step = 30, f_max_step = 8, f_rhs = 0, f_wlo = -10, f_whi = 10;
  std::size_t f_count = 30;
  fsm_cmd->add_option("--schedule", f_schedule, "schedule kind")
      ->capture_default_str();
  fsm_cmd->add_option("--step", f_step, "stride")->capture_default_str();
  fsm_cmd->add_option("--max-step", f_max_step, "random stride cap")
      ->capture_default_str();
  fsm_cmd->add_option("--rhs-index", f_rhs, "unit right-hand side position")
      ->capture_default_str();
  fsm_cmd->add_option("--window-lo", f_wlo, "window start")
      ->capture_default_str();
  fsm_cmd->add_option("--window-hi", f_whi, "window end")
      ->capture_default_str();
  fsm_cmd->add_option("--count", f_count, "number of truncations")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  std::string config;
  for (int i = 1; i < argc; ++i) {
    config += argv[i];
    config += '\x1f';
  }

  try {
    using namespace fibfsm;

    if (word_cmd->parsed()) {
      if (w_from > w_to || w_to - w_from > 10000000) {
        std::cerr << "word: bad range\n";
        return 2;
      }
      PotentialWindow w = window(w_from, w_to);
      bool sym_ok = true;
      if (check_symmetry) {
        PotentialWindow s = window(-sym_radius, sym_radius);
        for (long n = -sym_radius; n <= sym_radius; ++n) {
          if (n == -1 || n == 0)
            continue;
          long m = -1 - n;
          if (m >= -sym_radius && m <= sym_radius && s.at(n) != s.at(m))
            sym_ok = false;
        }
        if (s.at(-1) != 1 || s.at(0) != 0)
          sym_ok = false;
      }
      if (format == "json") {
        nlohmann::json j = {{"schema_version", kSchemaVersion},
                            {"from", w_from},
                            {"to", w_to},
                            {"letters", w.letters.str()}};
        if (check_symmetry)
          j["symmetry"] = sym_ok ? "OK" : "FAIL";
        attach_metadata(j, config);
        emit(j.dump(2), out_path);
      } else {
        std::string text = w.letters.str();
        if (check_symmetry)
          text += std::string("\nsymmetry: ") + (sym_ok ? "OK" : "FAIL");
        emit(text, out_path);
      }
      return (check_symmetry && !sym_ok) ? 1 : 0;
    }

    if (sub_cmd->parsed()) {
      auto counts = subword_complexity(sub_max);
      if (format == "json") {
        nlohmann::json sets = nlohmann::json::array();
        for (std::size_t n = 1; n <= sub_max; ++n)
          sets.push_back(to_json(enumerate_subwords(n)));
        nlohmann::json j = {{"schema_version", kSchemaVersion},
                            {"max_length", sub_max},
                            {"counts", counts},
                            {"sets", sets}};
        attach_metadata(j, config);
        emit(j.dump(2), out_path);
      } else {
        std::ostringstream os;
        for (std::size_t n = 1; n <= sub_max; ++n) {
          os << n << ": " << counts[n - 1];
          if (counts[n - 1] != n + 1) {
            os << "  (expected " << n + 1 << ")";
            emit(os.str(), out_path);
            return 1;
          }
          os << '\n';
        }
        emit(os.str(), out_path);
      }
      return 0;
    }

    if (part_cmd->parsed()) {
      PotentialWindow h = hull_sample(p_shift, p_width);
      BlockParse p =
          p_dir == "left" ? parse_left(h.letters) : parse_right(h.letters);
      if (p.concatenated() != h.letters) {
        std::cerr << "partition: concatenation invariant violated\n";
        return 1;
      }
      nlohmann::json j = to_json(p);
      j["shift"] = p_shift;
      j["half_width"] = p_width;
      attach_metadata(j, config);
      emit(j.dump(2), out_path);
      return 0;
    }

    if (cert_cmd->parsed()) {
      GrowthCertificate cert;
      if (c_mode == "one_sided") {
        PotentialWindow h = hull_sample(c_shift, c_width);
        BlockParse p = parse_right(h.letters);
        BinaryWord prefix =
            c_prefix == "1" ? BinaryWord("1") : BinaryWord();
        cert = certify_one_sided(p.blocks, prefix, Rational(c_bound),
                                 c_trajectory);
      } else if (c_mode == "two_sided") {
        long off = static_cast<long>(central_motif_locate());
        PotentialWindow win = window(off - static_cast<long>(c_width),
                                     off + static_cast<long>(c_width));
        cert = certify_two_sided(win, Rational(c_alpha), Rational(c_beta),
                                 Rational(c_bound), c_trajectory);
      } else {
        std::cerr << "certify: unknown mode " << c_mode << '\n';
        return 2;
      }
      nlohmann::json j = to_json(cert);
      attach_metadata(j, config);
      emit(j.dump(2), out_path);
      return 0;
    }

    if (stab_cmd->parsed()) {
      CutoffSchedule sched = make_schedule(s_schedule, s_step, seed,
                                           s_max_step);
      StabilityReport rep = stability_sweep(sched, s_count, parse_p(s_p));
      if (format == "csv") {
        emit(to_csv(rep), out_path);
      } else {
        nlohmann::json j = to_json(rep);
        attach_metadata(j, config);
        emit(j.dump(2), out_path);
      }
      return 0;
    }

    if (fsm_cmd->parsed()) {
      CutoffSchedule sched = make_schedule(f_schedule, f_step, seed,
                                           f_max_step);
      ConvergenceTable t =
          fsm_convergence(sched, f_rhs, f_wlo, f_whi, f_count);
      if (format == "csv") {
        emit(to_csv(t), out_path);
      } else {
        nlohmann::json j = to_json(t);
        attach_metadata(j, config);
        emit(j.dump(2), out_path);
      }
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const fibfsm::CertificateViolation& e) {
    std::cerr << "certificate violation: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
