/*
   Copyright 2026 The Airdrop Gas Toolkit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Command-line front end: single-scenario costing, scenario sweeps, Merkle
// distribution workflows, calibration and fiat pricing.
//
// Exit status contract: 0 success, 1 domain error (including proof or claim
// rejection), 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "airdrop/calibration.hpp"
#include "airdrop/cost_model.hpp"
#include "airdrop/fiat.hpp"
#include "airdrop/gas_schedule.hpp"
#include "airdrop/merkle.hpp"
#include "airdrop/merkle_io.hpp"
#include "airdrop/scenarios.hpp"
#include "airdrop/strategy.hpp"

namespace {

using namespace airdrop;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

GasSchedule load_schedule(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open schedule file: " + path);
    return load_schedule_overrides(in);
}

CalibrationTable load_calibration(const std::string& path) {
    std::ifstream in(path);
    if (!in) return {};  // empty table; non-baseline lookups will report it
    return CalibrationTable::load(in);
}

StrategyDescriptor parse_label_or_usage(const std::string& label) {
    try {
        return parse_label(label);
    } catch (const DescriptorError& e) {
        throw UsageError(std::string(e.what()) +
                         "\nvalid labels: NAIVE|PUSH, PULL|RECIPIENT_COST, POOLED|MERKLE, "
                         "[BASE_LINE|]{EXTERNAL_BATCH,INTERNAL_BATCH}|{PUSH,PULL}[|UNIFORM]|<bs>");
    }
}

std::vector<Recipient> load_recipients(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open recipient list: " + path);
    return parse_recipient_list(in);
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open file: " + path);
    return nlohmann::json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write file: " + path);
    out << text;
}

struct RangeSpec {
    std::int64_t from{0};
    std::int64_t to{0};
    std::int64_t step{0};
};

RangeSpec parse_range(const std::string& text) {
    RangeSpec r;
    char c1 = 0;
    char c2 = 0;
    std::istringstream in(text);
    if (!(in >> r.from >> c1 >> r.to >> c2 >> r.step) || c1 != ':' || c2 != ':' || !in.eof() ||
        r.from < 1 || r.to < r.from || r.step < 1) {
        throw UsageError("bad range (want FROM:TO:STEP with 1 <= FROM <= TO, STEP >= 1): " + text);
    }
    return r;
}

std::string file_safe(const std::string& label) {
    std::string out = label;
    for (char& c : out) {
        if (c == '|') c = '_';
    }
    return out;
}

// ---------------------------------------------------------------------------

int cmd_cost(const std::string& label, std::int64_t n, int batch_size, bool uniform,
             bool discounted, bool zero_reset, const std::string& calibration_path,
             const std::string& schedule_path) {
    GasSchedule s = load_schedule(schedule_path);
    StrategyDescriptor d = parse_label_or_usage(label);
    if (batch_size > 0) d.batch_size = batch_size;
    if (uniform) d.uniform = true;
    d.zero_reset = zero_reset;
    d = load_calibration(calibration_path).apply(d);

    if (d.recipient_side) {
        centigas_t each = recipient_cost(d, n, s);
        gas_t total = detail::round_centi(n * each);
        std::cout << "strategy            " << label << "\n"
                  << "recipients          " << n << "\n"
                  << "claim gas each      " << static_cast<double>(each) / 100.0 << "\n"
                  << "recipient gas total " << total << "\n"
                  << "total gas           " << total << "\n";
    } else {
        CostBreakdown b = distributor_cost(d, n, s);
        if (discounted) b = apply_discount(b, s);
        std::cout << "strategy            " << label << "\n"
                  << "recipients          " << n << "\n"
                  << "transactions        " << b.batches.size() << "\n";
        for (const auto& item : b.items) {
            std::cout << "  " << item.label << std::string(18 - item.label.size(), ' ')
                      << item.gas << "\n";
        }
        std::cout << "distributor gas     " << b.distributor_gas << "\n";
        if (b.recipient_gas_total > 0) {
            std::cout << "recipient gas total " << b.recipient_gas_total << "\n";
        }
        std::cout << "total gas           " << b.total_gas() << "\n"
                  << "max tx gas          " << b.max_tx_gas << "\n";
    }

    FeasibilityReport f = feasibility(d, n, s);
    std::cout << "feasible at         "
              << (f.infeasible ? std::string("none") : format_feasible_set(f.feasible_at)) << "\n";
    gas_t total = d.recipient_side
                      ? detail::round_centi(n * recipient_cost(d, n, s))
                      : distributor_cost(d, n, s).distributor_gas - (discounted ? n * 15000 : 0);
    std::cout << "blocks at 50% fill  " << blocks_needed(total, 50, s) << "\n";
    return 0;
}

int cmd_sweep(const std::string& range_text, double fill, bool discounted,
              const std::string& out_path, const std::string& format,
              const std::string& calibration_path, const std::string& schedule_path) {
    if (format != "plot-pairs" && format != "table") {
        throw UsageError("format must be plot-pairs or table");
    }
    RangeSpec range = parse_range(range_text);
    int fill_pct = 0;
    if (fill > 0.0) {
        if (fill > 1.0) throw UsageError("fill grade must be in (0,1]");
        fill_pct = static_cast<int>(fill * 100.0 + 0.5);
    }
    GasSchedule s = load_schedule(schedule_path);
    CalibrationTable cal = load_calibration(calibration_path);
    std::vector<std::int64_t> ns;
    for (std::int64_t n = range.from; n <= range.to; n += range.step) ns.push_back(n);
    auto scenarios = enumerate_paper_scenarios();

    if (format == "table") {
        auto rows = run_sweep(scenarios, ns, discounted, fill_pct, cal, s);
        std::string text = export_rows(rows, ExportFormat::Table, discounted);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            write_text(out_path, text);
        }
        return 0;
    }

    // plot-pairs: one series file per scenario
    if (out_path.empty()) throw UsageError("plot-pairs output needs --out DIRECTORY");
    std::filesystem::create_directories(out_path);
    int written = 0;
    for (const Scenario& scenario : scenarios) {
        auto rows = run_sweep({scenario}, ns, discounted, fill_pct, cal, s);
        if (rows.empty()) continue;
        write_text(out_path + "/" + file_safe(scenario.label) + ".dat",
                   export_rows(rows, ExportFormat::PlotPairs, discounted));
        ++written;
    }
    std::cout << "wrote " << written << " scenario series to " << out_path << "\n";
    return 0;
}

int cmd_feasibility(const std::string& label, std::int64_t n, const std::string& calibration_path,
                    const std::string& schedule_path) {
    GasSchedule s = load_schedule(schedule_path);
    StrategyDescriptor d = load_calibration(calibration_path).apply(parse_label_or_usage(label));
    FeasibilityReport f = feasibility(d, n, s);
    std::cout << "max tx gas  " << f.max_batch_gas << "\n"
              << "feasible at "
              << (f.infeasible ? std::string("none") : format_feasible_set(f.feasible_at)) << "\n";
    return f.infeasible ? 1 : 0;
}

int cmd_merkle_build(const std::string& in_path, const std::string& out_path,
                     const std::string& registry_path, std::int64_t deadline) {
    MerkleDistribution dist = build(load_recipients(in_path));
    nlohmann::json doc = export_distribution(dist);
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        write_text(out_path, doc.dump(2) + "\n");
    }
    if (!registry_path.empty()) {
        ClaimRegistry reg = make_registry(dist, deadline);
        write_text(registry_path, export_registry(reg).dump(2) + "\n");
    }
    return 0;
}

int cmd_merkle_prove(const std::string& in_path, std::int64_t index,
                     const std::string& out_path) {
    auto recipients = load_recipients(in_path);
    if (index < 0 || static_cast<std::size_t>(index) >= recipients.size()) {
        throw UsageError("index out of range: " + std::to_string(index));
    }
    MerkleDistribution dist = build(recipients);
    nlohmann::json doc =
        export_proof(recipients[static_cast<std::size_t>(index)],
                     prove(dist, static_cast<std::size_t>(index)));
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        write_text(out_path, doc.dump(2) + "\n");
    }
    return 0;
}

int cmd_merkle_verify(const std::string& root_text, const std::string& proof_path) {
    Digest root = parse_digest(root_text);
    auto [recipient, proof] = load_proof(load_json(proof_path));
    if (verify(root, recipient, proof)) {
        std::cout << "accept\n";
        return 0;
    }
    std::cout << "reject\n";
    return 1;
}

int cmd_merkle_claim(const std::string& registry_path, const std::string& proof_path,
                     const std::string& address_text, const std::string& amount_text,
                     std::int64_t now) {
    ClaimRegistry reg = load_registry(load_json(registry_path));
    auto [recipient, proof] = load_proof(load_json(proof_path));
    if (!address_text.empty() && parse_address(address_text) != recipient.address) {
        throw UsageError("--address does not match the proof file");
    }
    if (!amount_text.empty() && TokenAmount::from_decimal(amount_text) != recipient.amount) {
        throw UsageError("--amount does not match the proof file");
    }
    ClaimResult result = claim(reg, recipient, proof, now);
    std::cout << claim_result_name(result) << "\n";
    if (result != ClaimResult::Accepted) return 1;
    write_text(registry_path, export_registry(reg).dump(2) + "\n");
    return 0;
}

int cmd_calibrate(const std::string& targets_path, const std::string& out_path, std::int64_t n,
                  const std::string& schedule_path) {
    std::ifstream in(targets_path);
    if (!in) throw UsageError("cannot open targets file: " + targets_path);
    CalibrationTable table = calibrate_targets(load_targets_csv(in), n, load_schedule(schedule_path));
    std::ostringstream text;
    table.save(text);
    if (out_path.empty()) {
        std::cout << text.str();
    } else {
        write_text(out_path, text.str());
    }
    return 0;
}

int cmd_fiat(const std::string& prices_path, int ma_window, gas_t gas, double rate,
             const std::string& strategy_label, std::int64_t n,
             const std::string& calibration_path, const std::string& schedule_path) {
    GasSchedule s = load_schedule(schedule_path);

    PriceSeries series;
    if (!prices_path.empty()) {
        std::ifstream in(prices_path);
        if (!in) throw UsageError("cannot open price file: " + prices_path);
        series = load_prices(in);
        if (ma_window > 0) series = moving_average(series, ma_window);
    }

    if (gas > 0) {
        if (rate > 0.0) {
            std::cout << "usd " << static_cast<double>(gas) * rate << "\n";
            return 0;
        }
        if (series.points.empty()) throw UsageError("--gas needs --rate or --prices");
        std::cout << "date,usd\n";
        for (const PricePoint& p : series.points) {
            std::cout << p.date << ',' << static_cast<double>(gas) * usd_per_gas(p) << "\n";
        }
        return 0;
    }

    if (!strategy_label.empty()) {
        StrategyDescriptor d =
            load_calibration(calibration_path).apply(parse_label_or_usage(strategy_label));
        if (rate > 0.0) {
            gas_t total = d.recipient_side
                              ? detail::round_centi(n * recipient_cost(d, n, s))
                              : distributor_cost(d, n, s).distributor_gas;
            std::cout << "usd_per_recipient "
                      << static_cast<double>(total) / static_cast<double>(n) * rate << "\n";
            return 0;
        }
        if (series.points.empty()) throw UsageError("--strategy needs --rate or --prices");
        std::cout << "date,usd_per_recipient\n";
        for (const PricePoint& p : series.points) {
            std::cout << p.date << ',' << per_recipient_usd(d, n, p, s) << "\n";
        }
        return 0;
    }

    if (series.points.empty()) throw UsageError("nothing to do: give --gas, --strategy or --ma");
    std::cout << export_prices(series);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"airdrop gas and fiat cost modeling"};
    app.require_subcommand(1);

    std::string label;
    std::int64_t n = 1000;
    int batch_size = 0;
    bool uniform = false;
    bool discounted = false;
    bool zero_reset = false;
    std::string calibration_path = "fixtures/calibration.txt";
    std::string schedule_path;
    std::string range_text = "100:5000:100";
    double fill = 0.0;
    std::string out_path;
    std::string format = "table";
    std::string in_path;
    std::string registry_path;
    std::int64_t deadline = 0;
    std::int64_t index = 0;
    std::string root_text;
    std::string proof_path;
    std::string address_text;
    std::string amount_text;
    std::int64_t now = 0;
    std::string targets_path = "fixtures/fig7.csv";
    std::string prices_path;
    int ma_window = 0;
    gas_t gas = 0;
    double rate = 0.0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--calibration", calibration_path, "calibration table file");
        cmd->add_option("--schedule", schedule_path, "fee schedule override file");
    };

    CLI::App* cost = app.add_subcommand("cost", "itemized cost of one strategy");
    cost->add_option("label", label, "strategy label")->required();
    cost->add_option("--recipients", n, "recipient count");
    cost->add_option("--batch-size", batch_size, "override the label's batch size");
    cost->add_flag("--uniform", uniform, "one shared amount per batch");
    cost->add_flag("--discounted", discounted, "price recipients as existing holders");
    cost->add_flag("--zero-reset,!--no-zero-reset", zero_reset,
                   "add the allowance-zeroing pass (pull only)");
    add_common(cost);

    CLI::App* sweep = app.add_subcommand("sweep", "run every cataloged scenario over a range of n");
    sweep->add_flag("--paper-scenarios", "sweep the full scenario catalog (the default)");
    sweep->add_option("--n-range", range_text, "FROM:TO:STEP recipient counts");
    sweep->add_option("--fill", fill, "keep only strategies feasible at this fill grade");
    sweep->add_flag("--discounted", discounted, "discounted totals; drops pull strategies");
    sweep->add_option("--out", out_path, "output file (table) or directory (plot-pairs)");
    sweep->add_option("--format", format, "plot-pairs or table");
    add_common(sweep);

    CLI::App* feas = app.add_subcommand("feasibility", "block fill grades a strategy fits in");
    feas->add_option("label", label, "strategy label")->required();
    feas->add_option("--recipients", n, "recipient count");
    add_common(feas);

    CLI::App* mbuild = app.add_subcommand("merkle-build", "build a distribution from a recipient list");
    mbuild->add_option("--in", in_path, "recipient list file")->required();
    mbuild->add_option("--out", out_path, "distribution document (stdout if omitted)");
    mbuild->add_option("--registry", registry_path, "also write a fresh claim registry");
    mbuild->add_option("--deadline", deadline, "registry claim deadline (logical time)");

    CLI::App* mprove = app.add_subcommand("merkle-prove", "emit one recipient's claim proof");
    mprove->add_option("--in", in_path, "recipient list file")->required();
    mprove->add_option("--index", index, "recipient position in the list")->required();
    mprove->add_option("--out", out_path, "proof document (stdout if omitted)");

    CLI::App* mverify = app.add_subcommand("merkle-verify", "check a proof against a root");
    mverify->add_option("--root", root_text, "distribution root digest")->required();
    mverify->add_option("--proof-file", proof_path, "proof document")->required();

    CLI::App* mclaim = app.add_subcommand("merkle-claim", "apply a claim to a registry");
    mclaim->add_option("--registry", registry_path, "registry document, updated in place")
        ->required();
    mclaim->add_option("--proof-file", proof_path, "proof document")->required();
    mclaim->add_option("--address", address_text, "claimant address (cross-checked)");
    mclaim->add_option("--amount", amount_text, "claim amount (cross-checked)");
    mclaim->add_option("--now", now, "logical claim time");

    CLI::App* cal = app.add_subcommand("calibrate", "fit per-label residuals to measured totals");
    cal->add_option("--targets", targets_path, "label,gas CSV of measured totals");
    cal->add_option("--out", out_path, "calibration table file (stdout if omitted)");
    cal->add_option("--recipients", n, "recipient count the targets were measured at");
    cal->add_option("--schedule", schedule_path, "fee schedule override file");

    CLI::App* fiat = app.add_subcommand("fiat", "convert gas to USD");
    fiat->add_option("--prices", prices_path, "date,gas_price_gwei,eth_usd CSV");
    fiat->add_option("--ma", ma_window, "centered moving-average window in days");
    fiat->add_option("--gas", gas, "total gas to price");
    fiat->add_option("--rate", rate, "USD per gas, bypassing the price file");
    fiat->add_option("--strategy", label, "price one strategy per recipient");
    fiat->add_option("--recipients", n, "recipient count");
    add_common(fiat);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cost->parsed()) {
            return cmd_cost(label, n, batch_size, uniform, discounted, zero_reset,
                            calibration_path, schedule_path);
        }
        if (sweep->parsed()) {
            return cmd_sweep(range_text, fill, discounted, out_path, format, calibration_path,
                             schedule_path);
        }
        if (feas->parsed()) return cmd_feasibility(label, n, calibration_path, schedule_path);
        if (mbuild->parsed()) return cmd_merkle_build(in_path, out_path, registry_path, deadline);
        if (mprove->parsed()) return cmd_merkle_prove(in_path, index, out_path);
        if (mverify->parsed()) return cmd_merkle_verify(root_text, proof_path);
        if (mclaim->parsed()) {
            return cmd_merkle_claim(registry_path, proof_path, address_text, amount_text, now);
        }
        if (cal->parsed()) return cmd_calibrate(targets_path, out_path, n, schedule_path);
        if (fiat->parsed()) {
            return cmd_fiat(prices_path, ma_window, gas, rate, label, n, calibration_path,
                            schedule_path);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
