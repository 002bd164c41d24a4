/* Copyright (C) 2026 The schurlab authors
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License. See accompanying LICENSE file.
 */

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "schurlab/schurlab.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"schurlab: seeded Schatten-norm, Schur-multiplier and matrix "
                 "Riesz-transform experiment suites"};

    std::string suite, config_path, out, format;
    std::vector<std::size_t> n_list, d_list;
    std::vector<double> p_list;
    std::int64_t trials = -1;
    std::int64_t samples = -1;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double k_global = -1.0;
    double beta = -1.0;
    std::string construction;

    app.add_option("--suite", suite, "Suite to run (rs1, rs2, duality, khintchine, "
                                     "gaussian-identities, gh, arazy, beta, triangular, "
                                     "marcinkiewicz, mikhlin, lp-blocks, p-sweep)");
    app.add_option("--config", config_path, "JSON config file; flags override its values");
    app.add_option("--seed", seed, "Master seed")->each([&](const std::string&) { seed_set = true; });
    app.add_option("--out", out, "Report path, '-' for stdout");
    app.add_option("--format", format, "csv or json");
    app.add_option("--k-global", k_global, "Envelope multiplier for inequality checks");
    app.add_option("--trials", trials, "Trials per grid point");
    app.add_option("--samples", samples, "Monte Carlo sample count");
    app.add_option("--n", n_list, "Index-set sizes (repeatable)");
    app.add_option("--d", d_list, "Hilbert dimensions (repeatable)");
    app.add_option("--p", p_list, "Schatten exponents (repeatable)");
    app.add_option("--construction", construction, "p-sweep construction tag");
    app.add_option("--beta", beta, "Divided-difference power for the beta suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        schurlab::SuiteConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "error: cannot open config " << config_path << "\n";
                return kExitIo;
            }
            nlohmann::json doc;
            in >> doc;
            cfg = schurlab::SuiteConfig::from_json(doc);
        }
        if (!suite.empty()) cfg.suite = suite;
        if (!n_list.empty()) cfg.n_list = n_list;
        if (!d_list.empty()) cfg.d_list = d_list;
        if (!p_list.empty()) cfg.p_list = p_list;
        if (trials >= 0) cfg.trials = static_cast<std::size_t>(trials);
        if (samples >= 0) cfg.samples = static_cast<std::size_t>(samples);
        if (seed_set) cfg.seed = seed;
        if (k_global >= 0.0) cfg.k_global = k_global;
        if (beta >= 0.0) cfg.beta = beta;
        if (!out.empty()) cfg.out = out;
        if (!format.empty()) cfg.format = format;
        if (!construction.empty()) cfg.construction = construction;
        cfg.validate();

        const auto t0 = std::chrono::steady_clock::now();
        const auto result = schurlab::run_suite(cfg);
        const auto t1 = std::chrono::steady_clock::now();
        const double secs = std::chrono::duration<double>(t1 - t0).count();

        schurlab::write_report(result.report, cfg.out, cfg.format, std::cout);
        // Wall time goes to the console only, never to the report file, so
        // identical configs keep producing byte-identical reports.
        std::cerr << "suite=" << cfg.suite << " rows=" << result.report.rows.size()
                  << " violations=" << result.violations << " wall_time_s=" << secs << "\n";
        return result.violations > 0 ? kExitViolation : kExitOk;
    } catch (const schurlab::config_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const schurlab::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
