#include "reachmod/commands.hpp"

#include <chrono>
#include <iomanip>
#include <ostream>

#include <json.hpp>

#include "reachmod/errors.hpp"
#include "reachmod/field_oracle.hpp"
#include "reachmod/system_file.hpp"

namespace reachmod::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Json vector_json(const ModuleElement& v) {
  Json out = Json::array();
  for (const auto& p : v.entries()) out.push_back(to_string(p));
  return out;
}

Json generators_json(const std::vector<ModuleElement>& gens) {
  Json out = Json::array();
  for (const auto& g : gens) out.push_back(vector_json(g));
  return out;
}

void print_generators(std::ostream& out, const std::vector<ModuleElement>& gens) {
  if (gens.empty()) {
    out << "zero module\n";
    return;
  }
  for (const auto& g : gens) out << to_string(g) << "\n";
}

void timing(std::ostream& err, const std::string& phase, double seconds) {
  err << "timing " << phase << " " << std::fixed << std::setprecision(6) << seconds << " s\n";
}

Json header(const std::string& command, const SystemFile& file) {
  Json j;
  j["command"] = command;
  j["ring"] = file.ring->describe();
  j["n"] = file.system.n();
  j["m"] = file.system.m();
  return j;
}

class Runner {
 public:
  Runner(const SystemFile& file, const RunOptions& options, std::ostream& out, std::ostream& err)
      : file_(file), sys_(file.system), m_(file.m), options_(options), out_(out), err_(err) {
    reach_.engine.order = options.order;
    reach_.engine.pair_cap = options.pair_cap;
    reach_.chain_cap = options.chain_cap;
  }

  int maxreach() {
    Json j = header("maxreach", file_);
    j["method"] = options_.method == Method::Kernel ? "kernel" : "iterative";
    if (options_.method == Method::Iterative) {
      IterativeResult r = max_reachability_iterative(sys_, m_, reach_);
      auto gens = r.module.canonical_generators();
      bool ok = true;
      Json checks = Json::array();
      if (options_.verify) {
        bool invariant = is_AB_invariant(sys_, r.module);
        bool contained = is_submodule(r.module, m_);
        ok = invariant && contained;
        checks.push_back({{"clause", "AB-invariance"}, {"passed", invariant}});
        checks.push_back({{"clause", "contained-in-M"}, {"passed", contained}});
      }
      if (options_.structured) {
        j["generators"] = generators_json(gens);
        j["conditioned_steps"] = r.conditioned.steps;
        j["chain_steps"] = r.chain.steps;
        if (options_.verify) j["verification"] = {{"passed", ok}, {"entries", checks}};
        out_ << j.dump(2) << "\n";
      } else {
        print_generators(out_, gens);
        if (options_.verify) {
          out_ << "verification:\n";
          for (const auto& c : checks)
            out_ << "  " << c["clause"].get<std::string>() << ": "
                 << (c["passed"].get<bool>() ? "pass" : "FAIL") << "\n";
          out_ << (ok ? "VERIFIED" : "VERIFICATION FAILED") << "\n";
        }
      }
      return ok ? kOk : kVerificationFailed;
    }

    ReachabilityResult r = max_reachability_kernel(sys_, m_, reach_);
    auto gens = r.module.canonical_generators();
    VerificationReport report;
    if (options_.verify) report = verify_reachability_certificate(sys_, m_, r);

    if (options_.structured) {
      j["generators"] = generators_json(gens);
      if (options_.verify) {
        Json pieces = Json::array();
        for (const auto& piece : r.pieces) {
          ControlTrajectory traj = trajectory_from_kernel_element(KernelElement(sys_, piece.generator));
          Json states = Json::array(), inputs = Json::array();
          for (std::size_t k = 1; k <= traj.horizon; ++k) states.push_back(vector_json(traj.states[k]));
          for (const auto& u : traj.inputs) inputs.push_back(vector_json(u));
          pieces.push_back({{"h", vector_json(piece.generator)},
                            {"horizon", traj.horizon},
                            {"states", states},
                            {"inputs", inputs},
                            {"span", generators_json(piece.span.canonical_generators())}});
        }
        j["pieces"] = pieces;
        Json entries = Json::array();
        for (const auto& e : report.entries) {
          Json entry;
          entry["piece"] = e.piece ? Json(*e.piece + 1) : Json(nullptr);
          entry["clause"] = std::string(to_string(e.clause));
          entry["passed"] = e.passed;
          entry["detail"] = e.detail;
          entries.push_back(entry);
        }
        j["verification"] = {{"passed", report.passed()}, {"entries", entries}};
      }
      out_ << j.dump(2) << "\n";
    } else {
      print_generators(out_, gens);
      if (options_.verify) {
        out_ << "cyclic decomposition: " << r.pieces.size() << " piece(s)\n";
        for (std::size_t i = 0; i < r.pieces.size(); ++i) {
          const auto& piece = r.pieces[i];
          ControlTrajectory traj = trajectory_from_kernel_element(KernelElement(sys_, piece.generator));
          out_ << "piece " << i + 1 << ": h = " << to_string(piece.generator) << "\n";
          out_ << "  d = " << traj.horizon << "\n";
          for (std::size_t k = 1; k <= traj.horizon; ++k)
            out_ << "  x_" << k << " = " << to_string(traj.states[k]) << "\n";
          for (std::size_t k = 0; k < traj.inputs.size(); ++k)
            out_ << "  u_" << k << " = " << to_string(traj.inputs[k]) << "\n";
        }
        out_ << "verification:\n";
        for (const auto& e : report.entries) {
          out_ << "  ";
          if (e.piece) out_ << "piece " << *e.piece + 1 << " ";
          out_ << to_string(e.clause) << ": " << (e.passed ? "pass" : "FAIL");
          if (!e.detail.empty()) out_ << " (" << e.detail << ")";
          out_ << "\n";
        }
        out_ << (report.passed() ? "VERIFIED" : "VERIFICATION FAILED") << "\n";
      }
    }
    return !options_.verify || report.passed() ? kOk : kVerificationFailed;
  }

  int kernel() {
    auto gens = pencil_kernel(sys_, reach_.engine).generators();
    emit_generators("kernel", gens);
    return kOk;
  }

  int curly_m() {
    auto gens = curly_M(sys_, m_, reach_.engine).generators();
    emit_generators("curly-m", gens);
    return kOk;
  }

  int invariant_check() {
    bool invariant = is_AB_invariant(sys_, m_);
    if (options_.structured) {
      Json j = header("invariant-check", file_);
      j["invariant"] = invariant;
      out_ << j.dump(2) << "\n";
    } else {
      out_ << (invariant ? "INVARIANT" : "NOT INVARIANT") << "\n";
    }
    return kOk;
  }

  int compare() {
    auto start = Clock::now();
    SubmodulePresentation kernel = pencil_kernel(sys_, reach_.engine);
    double t_kernel = since(start);
    start = Clock::now();
    ReachabilityResult by_kernel = max_reachability_kernel(sys_, m_, kernel, reach_);
    double t_intersect = since(start);
    start = Clock::now();
    IterativeResult by_chain = max_reachability_iterative(sys_, m_, reach_);
    double t_iterative = since(start);

    bool equal = module_equal(by_kernel.module, by_chain.module);
    auto gens = by_kernel.module.canonical_generators();
    if (options_.structured) {
      Json j = header("compare", file_);
      j["equal"] = equal;
      j["kernel_generators"] = generators_json(gens);
      j["iterative_generators"] = generators_json(by_chain.module.canonical_generators());
      j["conditioned_steps"] = by_chain.conditioned.steps;
      j["chain_steps"] = by_chain.chain.steps;
      out_ << j.dump(2) << "\n";
    } else {
      out_ << "kernel method:\n";
      print_generators(out_, gens);
      out_ << "iterative method:\n";
      print_generators(out_, by_chain.module.canonical_generators());
      out_ << (equal ? "EQUAL" : "DIFFERENT") << "\n";
    }
    double s_total = 0, w_total = 0;
    for (double s : by_chain.conditioned.step_seconds) s_total += s;
    for (double s : by_chain.chain.step_seconds) w_total += s;
    timing(err_, "kernel.pencil_kernel", t_kernel);
    timing(err_, "kernel.intersection_and_extraction", t_intersect);
    timing(err_, "kernel.total", t_kernel + t_intersect);
    timing(err_, "iterative.s_chain(" + std::to_string(by_chain.conditioned.steps) + " steps)",
           s_total);
    timing(err_, "iterative.w_chain(" + std::to_string(by_chain.chain.steps) + " steps)", w_total);
    timing(err_, "iterative.total", t_iterative);
    return equal ? kOk : kMethodDisagreement;
  }

  int oracle() {
    if (!file_.ring->is_field_case()) {
      err_ << "error: oracle requires a ring without variables (field case), got "
           << file_.ring->describe() << "\n";
      return kUsage;
    }
    oracle::FieldSystem fs = oracle::to_field_system(sys_);
    oracle::Subspace m = oracle::to_subspace(m_);
    oracle::ChainOutcome vstar = oracle::vstar_isa(fs, m);
    oracle::ChainOutcome rstar = oracle::rstar_classical(fs, m);
    oracle::Subspace by_kernel = oracle::to_subspace(max_reachability_kernel(sys_, m_, reach_).module);
    oracle::Subspace by_chain = oracle::to_subspace(max_reachability_iterative(sys_, m_, reach_).module);
    bool agree = by_kernel == rstar.space && by_chain == rstar.space &&
                 vstar.steps <= fs.n && rstar.steps <= fs.n;
    if (options_.structured) {
      Json j = header("oracle", file_);
      j["kernel_dim"] = by_kernel.dim();
      j["iterative_dim"] = by_chain.dim();
      j["rstar_dim"] = rstar.space.dim();
      j["rstar_steps"] = rstar.steps;
      j["vstar_dim"] = vstar.space.dim();
      j["vstar_steps"] = vstar.steps;
      j["agree"] = agree;
      out_ << j.dump(2) << "\n";
    } else {
      out_ << "kernel method: dim " << by_kernel.dim() << "\n";
      out_ << "iterative method: dim " << by_chain.dim() << "\n";
      out_ << "classical R*: dim " << rstar.space.dim() << " (" << rstar.steps << " steps)\n";
      out_ << "classical V*: dim " << vstar.space.dim() << " (" << vstar.steps << " steps)\n";
      out_ << (agree ? "AGREE" : "DISAGREE") << "\n";
    }
    return agree ? kOk : kMethodDisagreement;
  }

 private:
  void emit_generators(const std::string& command, const std::vector<ModuleElement>& gens) {
    if (options_.structured) {
      Json j = header(command, file_);
      j["generators"] = generators_json(gens);
      out_ << j.dump(2) << "\n";
    } else {
      print_generators(out_, gens);
    }
  }

  const SystemFile& file_;
  const SystemPair& sys_;
  const StateSubmodule& m_;
  const RunOptions& options_;
  ReachOptions reach_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run(const std::string& command, const std::string& path, const RunOptions& options,
        std::ostream& out, std::ostream& err) {
  static const char* kCommands[] = {"maxreach", "kernel", "curly-m", "invariant-check", "compare",
                                    "oracle"};
  if (std::find(std::begin(kCommands), std::end(kCommands), command) == std::end(kCommands)) {
    err << "error: unknown command '" << command << "'\n";
    return kUsage;
  }
  try {
    EngineOptions engine{options.order, PositionRule::TermOverPosition, options.pair_cap};
    SystemFile file = parse_system_file(path, options.order, engine);
    Runner runner(file, options, out, err);
    if (command == "maxreach") return runner.maxreach();
    if (command == "kernel") return runner.kernel();
    if (command == "curly-m") return runner.curly_m();
    if (command == "invariant-check") return runner.invariant_check();
    if (command == "compare") return runner.compare();
    return runner.oracle();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const DimensionError& e) {
    err << "dimension error: " << e.what() << "\n";
    return kDimensionError;
  } catch (const ResourceExhausted& e) {
    err << "resource exhausted: " << e.what() << "\n";
    return kCapExhausted;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kDimensionError;
  }
}

}  // namespace reachmod::cli
