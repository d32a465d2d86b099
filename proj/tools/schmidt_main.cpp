// Copyright 2026 The schmidt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.  Exit codes: 0 success / decomposable / feasible,
// 2 well-formed negative verdict, 1 operational error.

#include <atomic>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "schmidt/bipartite.hpp"
#include "schmidt/decompose.hpp"
#include "schmidt/density.hpp"
#include "schmidt/errors.hpp"
#include "schmidt/io.hpp"
#include "schmidt/partition.hpp"
#include "schmidt/purification.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace schmidt;

struct GlobalOpts {
  double tol = 1e-9;
  double accept_tol = kDefaultAcceptTol;
  std::string format = "machine";
  unsigned jobs = 1;

  Tolerance tolerance() const { return Tolerance{tol}; }
  bool machine() const { return format == "machine"; }
};

// User-facing subsystem indices are 1-based.
std::vector<std::size_t> to_internal(const std::vector<std::size_t>& one_based) {
  std::vector<std::size_t> out;
  for (auto i : one_based) {
    if (i == 0) throw BadPartition("subsystem indices are 1-based");
    out.push_back(i - 1);
  }
  return out;
}

Json to_external(const std::vector<std::size_t>& zero_based) {
  Json out = Json::array();
  for (auto i : zero_based) out.push_back(i + 1);
  return out;
}

Json coeffs_json(const std::vector<double>& cs) {
  Json out = Json::array();
  for (double c : cs) out.push_back(c);
  return out;
}

Json verdict_json(const DecomposabilityVerdict& v, bool with_vectors) {
  Json j;
  j["decomposable"] = v.decomposable;
  j["reason"] = to_string(v.reason);
  j["residual"] = v.residual;
  if (v.decomposition) {
    const auto& d = *v.decomposition;
    j["rank"] = d.rank();
    j["coeffs"] = coeffs_json(d.coeffs);
    if (with_vectors) {
      Json vectors = Json::array();
      for (const auto& sub : d.vectors) {
        Json list = Json::array();
        for (const auto& vec : sub) {
          Json vj = Json::array();
          for (const auto& x : vec) vj.push_back(Json::array({x.real(), x.imag()}));
          list.push_back(std::move(vj));
        }
        vectors.push_back(std::move(list));
      }
      j["vectors"] = std::move(vectors);
    }
  }
  return j;
}

std::string verdict_text(const DecomposabilityVerdict& v) {
  std::string out = "decomposable: ";
  out += v.decomposable ? "yes" : "no";
  out += "\nreason: " + to_string(v.reason);
  out += "\nresidual: " + std::to_string(v.residual);
  if (v.decomposition) {
    out += "\nrank: " + std::to_string(v.decomposition->rank());
    out += "\ncoeffs:";
    for (double c : v.decomposition->coeffs) out += " " + std::to_string(c);
  }
  out += "\n";
  return out;
}

struct FileResult {
  int status = 1;
  std::string output;  // stdout payload
  std::string error;   // stderr payload
};

// Runs one verdict per input file, in parallel when asked; output order
// follows the input order.
int run_verdicts(const std::vector<std::string>& files, const GlobalOpts& g, bool with_vectors) {
  std::vector<FileResult> results(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= files.size()) return;
      FileResult& r = results[i];
      try {
        const StateTensor psi = load_state(read_text_file(files[i]), g.tolerance());
        const DecomposabilityVerdict v = decompose(psi, g.tolerance(), g.accept_tol);
        r.status = v.decomposable ? 0 : 2;
        if (g.machine()) {
          Json j = verdict_json(v, with_vectors);
          if (files.size() > 1) {
            Json wrapped;
            wrapped["file"] = files[i];
            wrapped.update(j);
            r.output = wrapped.dump() + "\n";
          } else {
            r.output = j.dump(2) + "\n";
          }
        } else {
          r.output = (files.size() > 1 ? files[i] + ":\n" : "") + verdict_text(v);
        }
      } catch (const std::exception& e) {
        r.status = 1;
        r.error = files[i] + ": " + e.what() + "\n";
      }
    }
  };

  const unsigned jobs = std::max(1u, std::min<unsigned>(g.jobs, files.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  bool any_error = false, any_negative = false;
  for (const auto& r : results) {
    std::cout << r.output;
    std::cerr << r.error;
    any_error |= r.status == 1;
    any_negative |= r.status == 2;
  }
  return any_error ? 1 : (any_negative ? 2 : 0);
}

void emit(const GlobalOpts& g, const Json& machine, const std::string& text) {
  if (g.machine()) {
    std::cout << machine.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

int run_schmidt_number(const std::string& file, const std::vector<std::size_t>& keep,
                       const GlobalOpts& g) {
  const StateTensor psi = load_state(read_text_file(file), g.tolerance());
  const auto keep0 = to_internal(keep);
  const std::size_t k = schmidt_number(psi, keep0, g.tolerance());
  Json j;
  j["keep"] = to_external(keep0);
  j["schmidt_number"] = k;
  emit(g, j, "schmidt_number: " + std::to_string(k) + "\n");
  return 0;
}

int run_reduced(const std::string& file, const std::vector<std::size_t>& keep,
                const std::string& out, const GlobalOpts& g) {
  const StateTensor psi = load_state(read_text_file(file), g.tolerance());
  const auto keep0 = to_internal(keep);
  const DensityMatrix rho = reduced_density(psi, keep0, g.tolerance());
  std::vector<std::size_t> kept_dims;
  for (auto k : keep0) {
    if (k >= psi.subsystems()) throw BadPartition("subsystem index out of range");
    kept_dims.push_back(psi.dim(k));
  }
  const std::string doc = save_density(kept_dims, rho);
  if (out.empty()) {
    std::cout << doc;
  } else {
    write_text_file(out, doc);
  }
  return 0;
}

int run_purify(const std::string& file, std::size_t ancilla_dim, const std::string& out,
               const GlobalOpts& g) {
  const DensityDocument doc = load_density(read_text_file(file), g.tolerance());
  const StateTensor ar = purify(doc.rho, ancilla_dim, g.tolerance());
  const std::string text = save_state(ar);
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
  return 0;
}

Json bipartition_json(const Bipartition& b) {
  Json j;
  j["left"] = to_external(b.left);
  j["right"] = to_external(b.right);
  j["left_product"] = b.left_product.str();
  j["right_product"] = b.right_product.str();
  return j;
}

int run_partition(const std::vector<std::size_t>& dims, const std::string& k_str, bool max_mode,
                  const std::string& witness_out, const GlobalOpts& g) {
  std::optional<Bipartition> found;
  Json j;
  int status = 0;
  if (max_mode) {
    auto [bip, k_star] = max_schmidt_partition(dims);
    j = bipartition_json(bip);
    j["k_star"] = k_star.str();
    found = std::move(bip);
  } else {
    PartitionInstance inst{dims, BigInt(k_str)};
    found = solve_partition(inst);
    j["feasible"] = found.has_value();
    j["k"] = inst.k.str();
    if (found) j.update(bipartition_json(*found));
    status = found ? 0 : 2;
  }
  if (found && !witness_out.empty()) {
    write_text_file(witness_out, save_state(witness_state(*found, dims)));
  }
  emit(g, j, j.dump(2) + "\n");
  return status;
}

int run_gen(const std::vector<std::size_t>& dims, std::size_t rank, std::uint64_t seed,
            const std::string& out, const GlobalOpts& g) {
  auto [psi, planted] = random_decomposable(dims, rank, seed);
  const std::string sidecar = out + ".decomp.json";
  write_text_file(out, save_state(psi));
  write_text_file(sidecar, save_decomposition(canonicalize(planted), 0.0));
  Json j;
  j["state"] = out;
  j["sidecar"] = sidecar;
  emit(g, j, "wrote " + out + " and " + sidecar + "\n");
  return 0;
}

int run_verify(const std::string& state_file, const std::string& decomp_file,
               const GlobalOpts& g) {
  const StateTensor psi = load_state(read_text_file(state_file), g.tolerance());
  const DecompositionDocument doc = load_decomposition(read_text_file(decomp_file));
  const double residual = reconstruction_residual(doc.decomposition, psi);
  const bool accepted = residual <= g.accept_tol;
  Json j;
  j["residual"] = residual;
  j["accepted"] = accepted;
  emit(g, j, "residual: " + std::to_string(residual) + "\n");
  return accepted ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schmidt decomposability toolkit for multipartite pure states"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--tol", g.tol, "relative tolerance for structural checks")
      ->capture_default_str();
  app.add_option("--accept-tol", g.accept_tol, "residual acceptance threshold")
      ->capture_default_str();
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"text", "machine"}))
      ->capture_default_str();
  app.add_option("--jobs", g.jobs, "parallel workers for multi-file commands")
      ->capture_default_str();

  std::vector<std::string> files;
  std::vector<std::size_t> keep, dims;
  std::string input, out, k_str, witness_out, decomp_file;
  std::size_t ancilla_dim = 0, rank = 1;
  std::uint64_t seed = 0;
  bool max_mode = false;

  auto* check = app.add_subcommand("check", "decide decomposability of state files");
  check->add_option("files", files, "state files")->required()->expected(-1);

  auto* dec = app.add_subcommand("decompose", "emit the full decomposition of state files");
  dec->add_option("files", files, "state files")->required()->expected(-1);

  auto* sn = app.add_subcommand("schmidt-number", "Schmidt number across a bipartition");
  sn->add_option("file", input, "state file")->required();
  sn->add_option("--keep", keep, "kept subsystems (1-based)")->required()->delimiter(',');

  auto* red = app.add_subcommand("reduced", "reduced density matrix of kept subsystems");
  red->add_option("file", input, "state file")->required();
  red->add_option("--keep", keep, "kept subsystems (1-based)")->required()->delimiter(',');
  red->add_option("--out", out, "write the density document here instead of stdout");

  auto* pur = app.add_subcommand("purify", "purify a density matrix");
  pur->add_option("file", input, "density file")->required();
  pur->add_option("--ancilla-dim", ancilla_dim, "ancilla dimension")->required();
  pur->add_option("--out", out, "write the state document here instead of stdout");

  auto* part = app.add_subcommand("partition", "Schmidt-number bipartition search");
  part->add_option("--dims", dims, "subsystem dimensions")->required()->delimiter(',');
  part->add_option("--k", k_str, "target Schmidt number");
  part->add_flag("--max", max_mode, "maximize the achievable Schmidt number");
  part->add_option("--witness", witness_out, "write a witness state for the bipartition");

  auto* gen = app.add_subcommand("gen", "generate a decomposable state with a known plant");
  gen->add_option("--dims", dims, "subsystem dimensions")->required()->delimiter(',');
  gen->add_option("--rank", rank, "Schmidt rank")->required();
  gen->add_option("--seed", seed, "random seed")->required();
  gen->add_option("--out", out, "state file to write")->required();

  auto* ver = app.add_subcommand("verify", "residual of a decomposition against a state");
  ver->add_option("state", input, "state file")->required();
  ver->add_option("decomposition", decomp_file, "decomposition file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (check->parsed()) return run_verdicts(files, g, false);
    if (dec->parsed()) return run_verdicts(files, g, true);
    if (sn->parsed()) return run_schmidt_number(input, keep, g);
    if (red->parsed()) return run_reduced(input, keep, out, g);
    if (pur->parsed()) return run_purify(input, ancilla_dim, out, g);
    if (part->parsed()) {
      if (max_mode != k_str.empty()) {  // exactly one of --k / --max
        std::cerr << "partition: pass exactly one of --k or --max\n";
        return 1;
      }
      return run_partition(dims, k_str, max_mode, witness_out, g);
    }
    if (gen->parsed()) return run_gen(dims, rank, seed, out, g);
    if (ver->parsed()) return run_verify(input, decomp_file, g);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 1;
}
