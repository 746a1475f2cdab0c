// Copyright 2026 The fklab Authors
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

#include "fklab/verifier.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

#include "fklab/errors.h"
#include "fklab/simulator.h"

namespace fklab {

namespace {

// Copies per work unit. Fixed so that the reduction tree is independent of
// the number of threads.
constexpr uint64_t kChunk = uint64_t{1} << 15;

struct ChunkResult {
    Counters counters;
    std::vector<uint64_t> samples;
    std::vector<TranscriptRecord> records;
};

void update(Counters &c, const TranscriptRecord &r, std::vector<uint64_t> *samples) {
    switch (r.mode) {
        case MeasurementMode::SAMPLE:
            c.n_total_sampling++;
            if (r.clock_outcome < 0) {
                c.n_sampling_clock_minus++;
                if (samples != nullptr && r.system_measured) {
                    samples->push_back(r.system_bits);
                }
            }
            break;
        case MeasurementMode::INPUT_TEST:
            c.n_input_test++;
            if (r.clock_outcome < 0) {
                c.n_clock_minus++;
            } else {
                c.n_in_plus++;
                if (r.system_measured && r.system_bits == 0) {
                    c.n_in_plus_0++;
                }
            }
            break;
        case MeasurementMode::PROP_TEST_X:
            c.n_x++;
            c.s_xu += static_cast<double>(r.clock_outcome) * *r.u;
            break;
        case MeasurementMode::PROP_TEST_Y:
            c.n_y++;
            c.s_yu += static_cast<double>(r.clock_outcome) * *r.u;
            break;
    }
}

/// Pairwise reduction over [lo, hi) in index order.
Counters tree_merge(const std::vector<Counters> &parts, size_t lo, size_t hi) {
    if (hi - lo == 1) {
        return parts[lo];
    }
    size_t mid = lo + (hi - lo) / 2;
    Counters left = tree_merge(parts, lo, mid);
    left += tree_merge(parts, mid, hi);
    return left;
}

Counters tree_merge(const std::vector<Counters> &parts) {
    return parts.empty() ? Counters{} : tree_merge(parts, 0, parts.size());
}

ChunkResult run_chunk(const ProverInterface &prover, const LatticeGeometry &lattice, uint64_t begin, uint64_t end,
                      uint64_t master_seed, bool keep_records) {
    ChunkResult out;
    out.samples.reserve((end - begin) / 4 + 16);
    if (keep_records) {
        out.records.reserve(end - begin);
    }
    for (uint64_t j = begin; j < end; j++) {
        RandomStream choice(master_seed, "verifier", j);
        RandomStream device(master_seed, "prover", j);
        uint64_t bits = choice();
        TranscriptRecord r;
        r.copy_index = j;
        r.b_sampling = (bits >> 63) & 1;
        r.b_testtype = (bits >> 62) & 1;
        bool use_y = (bits >> 61) & 1;
        if (r.b_sampling) {
            r.mode = MeasurementMode::SAMPLE;
        } else if (!r.b_testtype) {
            r.mode = MeasurementMode::INPUT_TEST;
        } else {
            r.mode = use_y ? MeasurementMode::PROP_TEST_Y : MeasurementMode::PROP_TEST_X;
        }
        PackedOutcome o = prover.measure(MeasurementInstruction{r.mode}, device);
        r.clock_outcome = o.clock;
        r.system_measured = o.system_measured;
        r.system_bits = o.system_bits;
        if (r.mode == MeasurementMode::PROP_TEST_X || r.mode == MeasurementMode::PROP_TEST_Y) {
            r.u = u_value(o.system_bits, lattice);
        }
        update(out.counters, r, &out.samples);
        if (keep_records) {
            out.records.push_back(r);
        }
    }
    return out;
}

}  // namespace

void ProtocolConfig::validate() const {
    auto unit = [](double v, const char *name) {
        if (!(v >= 0 && v <= 1)) {
            throw ValidationError(std::string(name) + " must lie in [0, 1]");
        }
    };
    unit(threshold_o10, "threshold_o10");
    unit(threshold_fin, "threshold_fin");
    unit(psamp_low, "psamp_window low");
    unit(psamp_high, "psamp_window high");
    if (psamp_low > psamp_high) {
        throw ValidationError("psamp_window is inverted");
    }
}

unsigned resolve_thread_count(unsigned requested) {
    unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char *cap = std::getenv("FKLAB_THREADS")) {
        long v = std::strtol(cap, nullptr, 10);
        if (v > 0) {
            n = std::min<unsigned>(n, static_cast<unsigned>(v));
        }
    }
    return n;
}

Counters &Counters::operator+=(const Counters &o) {
    s_xu += o.s_xu;
    s_yu += o.s_yu;
    n_x += o.n_x;
    n_y += o.n_y;
    n_in_plus += o.n_in_plus;
    n_in_plus_0 += o.n_in_plus_0;
    n_input_test += o.n_input_test;
    n_clock_minus += o.n_clock_minus;
    n_total_sampling += o.n_total_sampling;
    n_sampling_clock_minus += o.n_sampling_clock_minus;
    return *this;
}

bool decide(double o10_sq_scaled, double f_in_m, double p_samp_m, const ProtocolConfig &config) {
    return o10_sq_scaled >= config.threshold_o10 && f_in_m >= config.threshold_fin && p_samp_m >= config.psamp_low &&
           p_samp_m <= config.psamp_high;
}

EstimatorReport estimate(const Counters &c, const ProtocolConfig &config) {
    EstimatorReport r;
    r.counters = c;
    std::string missing;
    if (c.n_x == 0) {
        missing += " N_X";
    }
    if (c.n_y == 0) {
        missing += " N_Y";
    }
    if (c.n_in_plus == 0) {
        missing += " N_in+";
    }
    if (c.n_input_test == 0) {
        missing += " N_input_test";
    }
    if (!missing.empty()) {
        r.error = "estimator undefined: zero" + missing;
        r.accepted = false;
        return r;
    }
    std::complex<double> h_xu = c.s_xu / static_cast<double>(c.n_x);
    std::complex<double> h_yu = c.s_yu / static_cast<double>(c.n_y);
    r.o10_m = 0.5 * (h_xu - std::complex<double>{0, 1} * h_yu);
    r.o10_sq_scaled = 4 * std::norm(r.o10_m);
    r.f_in_m = static_cast<double>(c.n_in_plus_0) / static_cast<double>(c.n_in_plus);
    r.p_samp_m = static_cast<double>(c.n_clock_minus) / static_cast<double>(c.n_input_test);
    r.accepted = decide(r.o10_sq_scaled, r.f_in_m, r.p_samp_m, config);
    return r;
}

ProtocolResult run_protocol(const ProverInterface &prover, const LatticeGeometry &lattice, const InputSpec &input,
                            const ProtocolConfig &config, const RunOptions &options) {
    config.validate();
    check_sizes(lattice, input);
    if (prover.num_system_qubits() != lattice.num_qubits()) {
        throw DimensionError("prover register does not match the lattice");
    }

    const uint64_t n_chunks = (config.num_copies + kChunk - 1) / kChunk;
    std::vector<ChunkResult> chunks(n_chunks);
    std::atomic<uint64_t> next{0};
    auto worker = [&] {
        for (uint64_t c = next++; c < n_chunks; c = next++) {
            uint64_t begin = c * kChunk;
            uint64_t end = std::min(config.num_copies, begin + kChunk);
            chunks[c] = run_chunk(prover, lattice, begin, end, config.master_seed, options.record_transcript);
        }
    };
    unsigned threads = std::min<uint64_t>(resolve_thread_count(options.threads), std::max<uint64_t>(n_chunks, 1));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; t++) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }

    std::vector<Counters> parts;
    parts.reserve(n_chunks);
    size_t n_samples = 0;
    for (const auto &c : chunks) {
        parts.push_back(c.counters);
        n_samples += c.samples.size();
    }

    ProtocolResult result;
    result.report = estimate(tree_merge(parts), config);
    result.report.num_system_qubits = lattice.num_qubits();
    result.report.samples.reserve(n_samples);
    result.transcript.num_system_qubits = lattice.num_qubits();
    for (auto &c : chunks) {
        result.report.samples.insert(result.report.samples.end(), c.samples.begin(), c.samples.end());
        if (options.record_transcript) {
            result.transcript.records.insert(result.transcript.records.end(),
                                             std::make_move_iterator(c.records.begin()),
                                             std::make_move_iterator(c.records.end()));
        }
    }
    return result;
}

Counters replay_counters(const ProtocolTranscript &transcript, const LatticeGeometry &lattice) {
    if (transcript.num_system_qubits != lattice.num_qubits()) {
        throw DimensionError("transcript register does not match the lattice");
    }
    std::vector<Counters> parts;
    for (const auto &r : transcript.records) {
        uint64_t chunk = r.copy_index / kChunk;
        if (parts.size() <= chunk) {
            parts.resize(chunk + 1);
        }
        if ((r.mode == MeasurementMode::PROP_TEST_X || r.mode == MeasurementMode::PROP_TEST_Y) && !r.u) {
            throw ValidationError("propagation record without u");
        }
        update(parts[chunk], r, nullptr);
    }
    return tree_merge(parts);
}

}  // namespace fklab
