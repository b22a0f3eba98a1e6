#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "triuni/chain.hpp"
#include "triuni/channels.hpp"
#include "triuni/csv.hpp"
#include "triuni/entanglement.hpp"
#include "triuni/gate_io.hpp"
#include "triuni/gates.hpp"
#include "triuni/kagome.hpp"

namespace {

using namespace triuni;

struct GateSpec {
    std::string preset = "swap";  // swap | appendix | perfect | random | kicked-ising
    double phi = 0.0;
    double g = 0.0;
    std::uint64_t seed = 1;
    std::string gate_file;

    void add_options(CLI::App* cmd) {
        cmd->add_option("--preset", preset,
                        "gate preset: swap, appendix, perfect, random, kicked-ising");
        cmd->add_option("--phi", phi, "interaction angle (radians), appendix preset");
        cmd->add_option("--g", g, "kick angle (radians), appendix preset");
        cmd->add_option("--seed", seed, "seed for the random preset and output stamping");
        cmd->add_option("--gate-file", gate_file, "JSON gate file (overrides --preset)");
    }

    Gate3 build() const {
        if (!gate_file.empty()) return load_gate(gate_file);
        if (preset == "swap") return triunitary_gate(TriUnitaryParams{});
        if (preset == "appendix") return appendix_gate(phi, g);
        if (preset == "perfect") return perfect_tensor();
        if (preset == "random") {
            Rng rng(seed);
            return triunitary_gate(TriUnitaryParams::random(rng));
        }
        throw validation_error("unknown gate preset: " + preset);
    }
};

QubitOp pauli_by_name(const std::string& name) {
    if (name == "X") return pauli::X();
    if (name == "Y") return pauli::Y();
    if (name == "Z") return pauli::Z();
    throw validation_error("operator must be one of X, Y, Z");
}

int worker_count(std::size_t tasks) {
    unsigned n = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("TRIUNI_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = static_cast<unsigned>(v);
    }
    if (n == 0) n = 1;
    return static_cast<int>(std::min<std::size_t>(n, tasks));
}

template <typename Task>
void parallel_tasks(std::size_t count, Task&& task) {
    const int workers = worker_count(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) task(i);
        });
    }
    for (auto& th : pool) th.join();
}

void write_output(const CsvTable& table, const std::string& path) {
    if (path.empty() || path == "-")
        table.write(std::cout);
    else
        table.save(path);
}

int cmd_verify_gate(const GateSpec& spec, const std::string& export_path) {
    Gate3 g = spec.build();
    auto tri = triunitarity_report(g);
    auto perf = perfectness_report(g);
    nlohmann::json j;
    j["hash"] = gate_hash_hex(g);
    j["unitarity_residual"] = tri.time_residual;
    j["tilde_residual"] = tri.tilde_residual;
    j["breve_residual"] = tri.breve_residual;
    j["tri_unitary"] = tri.ok;
    j["perfect"] = perf.ok;
    j["perfect_max_residual"] = perf.max_residual;
    std::cout << j.dump(2) << "\n";
    if (!export_path.empty()) save_gate(g, export_path, spec.preset);
    return 0;
}

int cmd_classify(const GateSpec& spec) {
    Gate3 g = spec.build();
    auto label = classify_hierarchy(g);
    nlohmann::json j;
    j["hash"] = gate_hash_hex(g);
    j["label"] = to_string(label.label);
    nlohmann::json lam = nlohmann::json::array();
    const char* dirs[3] = {"-", "0", "+"};
    for (int d = 0; d < 3; ++d)
        for (int i = 0; i < 3; ++i)
            lam.push_back({{"mu", dirs[d]},
                           {"re", label.eigenvalues[d][i].real()},
                           {"im", label.eigenvalues[d][i].imag()}});
    j["eigenvalues"] = lam;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_correlations(const GateSpec& spec, int L, int tmax, const std::string& boundary,
                     const std::string& a_name, const std::string& b_name, int anchor,
                     double J, double bfield, double Jprime, double bprime, double hfield,
                     const std::string& out) {
    const Boundary bc = boundary == "open" ? Boundary::Open : Boundary::Periodic;
    const QubitOp a = pauli_by_name(a_name);
    const QubitOp b = pauli_by_name(b_name);

    CsvTable table;
    table.header = {"anchor", "x", "t", "re", "im", "on_ray"};

    if (spec.preset == "kicked-ising" && spec.gate_file.empty()) {
        KickedIsingParams p;
        p.J = J;
        p.b = bfield;
        p.b_prime.assign(L / 2, bprime);
        p.J_prime.assign(L, Jprime);
        p.h.assign(L, hfield);
        Mat uf = kicked_ising_floquet(L, p, bc);
        table.metadata = {"triuni correlations (kicked-ising)",
                          "L=" + std::to_string(L),
                          "boundary=" + boundary,
                          "gate_hash=" + gate_hash_hex(uf),
                          "seed=" + std::to_string(spec.seed),
                          "a=" + a_name, "b=" + b_name,
                          "t_unit=floquet_period", "ray_speed=4"};
        for (int anchor_site = (anchor < 0 ? 0 : anchor);
             anchor_site <= (anchor < 0 ? 3 : anchor); ++anchor_site) {
            for (int t = 1; t <= tmax; ++t) {
                for (int x = -(L / 2 - 1); x <= L / 2; ++x) {
                    const Complex v = floquet_correlator(uf, L, a, anchor_site, b, x, t);
                    const int off = ((x % L) + L) % L;
                    const bool on = off == 0 || off == ((4 * t) % L + L) % L ||
                                    off == ((-4 * t) % L + L) % L;
                    table.rows.push_back({csv_num(anchor_site), csv_num(x), csv_num(t),
                                          csv_num(v.real()), csv_num(v.imag()),
                                          on ? "1" : "0"});
                }
            }
        }
        write_output(table, out);
        return 0;
    }

    Gate3 g = spec.build();
    ChainCircuit circuit(L, bc, g);
    CorrelationGrid grid = correlation_grid(circuit, a, b, tmax);
    table.metadata = {"triuni correlations",
                      "L=" + std::to_string(L),
                      "boundary=" + boundary,
                      "gate_hash=" + gate_hash_hex(g),
                      "seed=" + std::to_string(spec.seed),
                      "a=" + a_name, "b=" + b_name,
                      "t_unit=half_layer", "ray_speed=2"};
    for (const auto& e : grid.entries) {
        if (anchor >= 0 && e.anchor != anchor) continue;
        table.rows.push_back({csv_num(e.anchor), csv_num(e.x), csv_num(e.t),
                              csv_num(e.value.real()), csv_num(e.value.imag()),
                              e.on_ray ? "1" : "0"});
    }
    write_output(table, out);
    return 0;
}

int cmd_entanglement(const std::string& family, double phi, int L, const std::string& boundary,
                     int region_begin, int region_len, int tmax, int nseeds,
                     std::uint64_t seed0, const std::string& out) {
    const Boundary bc = boundary == "periodic" ? Boundary::Periodic : Boundary::Open;

    auto gate_source = [&](std::uint64_t seed) -> Gate3 {
        Rng rng(seed);
        if (family == "swap") return triunitary_gate(TriUnitaryParams{});
        if (family == "tu-random") return triunitary_gate(TriUnitaryParams::random(rng));
        if (family == "tu-phi") {
            TriUnitaryParams p;
            p.phi = {phi, phi, phi};
            for (auto& m : p.u) m = haar_su2(rng);
            for (auto& m : p.v) m = haar_su2(rng);
            for (auto& m : p.w) m = haar_su2(rng);
            return triunitary_gate(p);
        }
        if (family == "perfect-haar") {
            Gate3 g = perfect_tensor();
            Mat left = kron(haar_su2(rng), haar_su2(rng), haar_su2(rng));
            Mat right = kron(haar_su2(rng), haar_su2(rng), haar_su2(rng));
            return Gate3(left * g * right);
        }
        throw validation_error("unknown family: " + family +
                               " (want swap, tu-random, tu-phi, perfect-haar)");
    };

    std::vector<std::uint64_t> seeds(nseeds);
    for (int i = 0; i < nseeds; ++i) seeds[i] = seed0 + static_cast<std::uint64_t>(i);

    std::vector<std::vector<EntropyPoint>> results(seeds.size());
    parallel_tasks(seeds.size(), [&](std::size_t i) {
        results[i] = growth_experiment(gate_source, L, bc, region_begin, region_len, tmax,
                                       {seeds[i]}, phi);
    });

    CsvTable table;
    table.metadata = {"triuni entanglement",
                      "L=" + std::to_string(L),
                      "region_begin=" + std::to_string(region_begin),
                      "region_len=" + std::to_string(region_len),
                      "boundary=" + boundary,
                      "family=" + family,
                      "gate_hash=" + gate_hash_hex(gate_source(seed0))};
    table.header = {"t", "seed", "phi", "S2_bits", "SvN_bits", "flatness_residual"};
    for (const auto& block : results)
        for (const auto& p : block)
            table.rows.push_back({csv_num(p.t), std::to_string(p.seed), csv_num(p.phi),
                                  csv_num(p.s2_bits), csv_num(p.svn_bits), csv_num(p.flatness)});
    write_output(table, out);
    return 0;
}

int cmd_kagome(const GateSpec& spec, int n1, int n2, int cycles, const std::string& a_name,
               const std::string& b_name, const std::string& out) {
    Gate3 g = spec.build();
    KagomeCircuit c = build_kagome(n1, n2, g);
    auto grid = kagome_correlation_grid(c, pauli_by_name(a_name), pauli_by_name(b_name), cycles);

    CsvTable table;
    table.metadata = {"triuni kagome correlations",
                      "n1=" + std::to_string(n1),
                      "n2=" + std::to_string(n2),
                      "gate_hash=" + gate_hash_hex(g),
                      "seed=" + std::to_string(spec.seed),
                      "a=" + a_name, "b=" + b_name,
                      "sublattices=xi,eta,zeta movers"};
    table.header = {"i1", "i2", "sublattice", "cycles", "re", "im", "on_ray"};
    for (const auto& e : grid) {
        auto [i1, i2] = c.line_label(e.site_q);
        table.rows.push_back({csv_num(i1), csv_num(i2), csv_num(c.line_type(e.site_q)),
                              csv_num(e.cycles), csv_num(e.value.real()),
                              csv_num(e.value.imag()), e.on_ray ? "1" : "0"});
    }
    write_output(table, out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact simulation and verification of tri-unitary circuits"};
    app.require_subcommand(1);

    GateSpec spec;
    std::string out, export_path;
    std::string a_name = "Z", b_name = "Z";
    std::string boundary = "periodic";
    int L = 12, tmax = 2, anchor = -1;
    int n1 = 2, n2 = 2, cycles = 1;
    double J = std::numbers::pi / 4, bfield = std::numbers::pi / 4;
    double Jprime = 0.0, bprime = 0.0, hfield = 0.0;
    std::string family = "tu-random";
    double phi = 0.0;
    int region_begin = 0, region_len = 0, nseeds = 1;
    std::uint64_t seed0 = 1;

    auto* verify = app.add_subcommand("verify-gate", "tri-unitarity and perfectness report");
    spec.add_options(verify);
    verify->add_option("--export", export_path, "write the gate as JSON");

    auto* classify = app.add_subcommand("classify", "ergodic-hierarchy label and eigenvalues");
    spec.add_options(classify);

    auto* corr = app.add_subcommand("correlations", "1+1D correlator grid (CSV)");
    spec.add_options(corr);
    corr->add_option("--L", L, "chain length");
    corr->add_option("--tmax", tmax, "half-layers (or periods for kicked-ising)");
    corr->add_option("--boundary", boundary, "periodic or open");
    corr->add_option("--a", a_name, "anchor operator X|Y|Z");
    corr->add_option("--b", b_name, "probe operator X|Y|Z");
    corr->add_option("--anchor", anchor, "anchor site 0..3, -1 = all");
    corr->add_option("--J", J, "kicked-ising coupling");
    corr->add_option("--bfield", bfield, "kicked-ising transverse field");
    corr->add_option("--Jprime", Jprime, "kicked-ising nearest-neighbour coupling");
    corr->add_option("--bprime", bprime, "kicked-ising sublattice-B field");
    corr->add_option("--hfield", hfield, "kicked-ising longitudinal field");
    corr->add_option("--out", out, "output path, default stdout");

    auto* ent = app.add_subcommand("entanglement", "entropy growth from the solvable state (CSV)");
    ent->add_option("--family", family, "swap, tu-random, tu-phi, perfect-haar");
    ent->add_option("--phi", phi, "interaction angle for tu-phi");
    ent->add_option("--L", L, "chain length");
    ent->add_option("--boundary", boundary, "periodic or open");
    ent->add_option("--region-begin", region_begin, "first site of the region");
    ent->add_option("--region-len", region_len, "region size");
    ent->add_option("--tmax", tmax, "half-layers");
    ent->add_option("--seeds", nseeds, "number of seeds");
    ent->add_option("--seed", seed0, "first seed");
    ent->add_option("--out", out, "output path, default stdout");

    auto* kag = app.add_subcommand("kagome-correlations", "2+1D correlator grid (CSV)");
    spec.add_options(kag);
    kag->add_option("--n1", n1, "torus cells along the first axis");
    kag->add_option("--n2", n2, "torus cells along the second axis");
    kag->add_option("--cycles", cycles, "Floquet cycles");
    kag->add_option("--a", a_name, "anchor operator X|Y|Z");
    kag->add_option("--b", b_name, "probe operator X|Y|Z");
    kag->add_option("--out", out, "output path, default stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return cmd_verify_gate(spec, export_path);
        if (classify->parsed()) return cmd_classify(spec);
        if (corr->parsed())
            return cmd_correlations(spec, L, tmax, boundary, a_name, b_name, anchor, J, bfield,
                                    Jprime, bprime, hfield, out);
        if (ent->parsed()) {
            if (region_len <= 0) throw validation_error("entanglement: need --region-len > 0");
            return cmd_entanglement(family, phi, L, boundary, region_begin, region_len, tmax,
                                    nseeds, seed0, out);
        }
        if (kag->parsed()) return cmd_kagome(spec, n1, n2, cycles, a_name, b_name, out);
    } catch (const resource_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 2;
    } catch (const validation_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
