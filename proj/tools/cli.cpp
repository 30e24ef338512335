#include "cli.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <istream>
#include <iterator>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include <onlz/factorizer.hpp>
#include <onlz/oracle.hpp>

namespace onlz::cli {

namespace {

/// Texts up to this length are checked against the complete reference parse.
constexpr std::uint64_t kFullOracleLimit = 10000;
/// Factors whose maximality is searched directly in spot-check mode.
constexpr std::size_t kSpotSamples = 256;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AlphabetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// \brief Byte to character code mapping.
///
/// By default bytes get codes 0, 1, 2, ... in order of first appearance, which
/// keeps the mapping online; a byte that would need code sigma or more is an
/// alphabet violation. In DNA mode ACGT (either case) map to 0..3.
class ByteMapper {
public:
    ByteMapper(std::uint64_t sigma, bool dna) : sigma_(sigma), dna_(dna) { codes_.fill(kUnset); }

    CharCode map(unsigned char byte) {
        if(dna_) {
            switch(byte) {
            case 'A': case 'a': return 0;
            case 'C': case 'c': return 1;
            case 'G': case 'g': return 2;
            case 'T': case 't': return 3;
            default: throw AlphabetError("byte " + describe(byte) + " is not one of ACGTacgt");
            }
        }
        if(codes_[byte] == kUnset) {
            if(next_ >= sigma_)
                throw AlphabetError("byte " + describe(byte) + " exceeds the declared alphabet of " +
                                    std::to_string(sigma_) + " characters");
            codes_[byte] = next_++;
        }
        return codes_[byte];
    }

private:
    static constexpr CharCode kUnset = ~CharCode{0};

    static std::string describe(unsigned char byte) {
        std::ostringstream s;
        s << "0x" << std::hex << std::setw(2) << std::setfill('0') << unsigned{byte};
        return s.str();
    }

    std::uint64_t sigma_;
    bool dna_;
    std::array<CharCode, 256> codes_{};
    CharCode next_ = 0;
};

/// Streams mapped characters from a byte stream, optionally keeping a copy.
class StreamSource final : public BlockSource {
public:
    StreamSource(std::istream& in, ByteMapper& mapper, std::vector<CharCode>* record)
        : in_(in), mapper_(mapper), record_(record) {}

    std::size_t pull(std::span<CharCode> out) override {
        bytes_.resize(out.size());
        in_.read(bytes_.data(), static_cast<std::streamsize>(out.size()));
        if(in_.bad()) throw IoError("read error");
        auto const got = static_cast<std::size_t>(in_.gcount());
        for(std::size_t i = 0; i < got; ++i) out[i] = mapper_.map(static_cast<unsigned char>(bytes_[i]));
        if(record_) record_->insert(record_->end(), out.begin(), out.begin() + got);
        return got;
    }

private:
    std::istream& in_;
    ByteMapper& mapper_;
    std::vector<CharCode>* record_;
    std::vector<char> bytes_;
};

nlohmann::json factor_json(Factor const& f) {
    nlohmann::json j = {{"i", f.index}, {"start", f.start}, {"len", f.length}, {"kind", to_string(f.kind)}};
    if(f.witness) j["witness"] = *f.witness;
    return j;
}

nlohmann::json stats_json(EngineStats const& s) {
    return {{"n", s.n},
            {"z", s.factors},
            {"r", s.r},
            {"blocks_read", s.blocks_read},
            {"leaves", s.leaves},
            {"tree_vertices", s.tree_vertices},
            {"trie_nodes", s.trie_nodes},
            {"wavelet_nodes", s.wavelet_nodes},
            {"wavelet_bits", s.wavelet_bits},
            {"order_entries", s.order_entries},
            {"exist_calls", s.exist_calls},
            {"max_lag", s.max_lag}};
}

/// Writes factors as they are emitted.
class StreamingWriter final : public FactorObserver {
public:
    StreamingWriter(std::ostream& out, OutputFormat format) : out_(out), format_(format) {
        if(format_ == OutputFormat::json) out_ << '[';
    }

    void on_factor(Factor const& f, FactorTrace const&) override {
        if(format_ == OutputFormat::text) {
            out_ << f.index << '\t' << f.start << '\t' << f.length << '\t' << to_string(f.kind) << '\n';
        } else {
            out_ << (first_ ? "\n" : ",\n") << factor_json(f).dump();
            first_ = false;
        }
        out_.flush();
    }

    void finish(std::optional<EngineStats> const& stats) {
        if(format_ == OutputFormat::text) {
            if(stats) {
                auto const fields = stats_json(*stats);
                out_ << "#stats";
                for(auto const& [key, value] : fields.items()) out_ << '\t' << key << '=' << value;
                out_ << '\n';
            }
        } else {
            if(stats) out_ << (first_ ? "\n" : ",\n") << nlohmann::json{{"stats", stats_json(*stats)}}.dump();
            out_ << "\n]\n";
        }
        out_.flush();
    }

private:
    std::ostream& out_;
    OutputFormat format_;
    bool first_ = true;
};

class Collector final : public FactorObserver {
public:
    void on_factor(Factor const& f, FactorTrace const&) override { factors.push_back(f); }
    std::vector<Factor> factors;
};

/// The input, either opened for streaming or already loaded.
struct Input {
    std::ifstream file;
    std::istream* stream = nullptr;
    std::optional<std::uint64_t> size;  ///< known byte count, if any
};

Input open_input(RunConfig const& cfg, std::istream& in) {
    Input input;
    if(cfg.use_stdin) {
        input.stream = &in;
        return input;
    }
    std::filesystem::path const path(*cfg.input);
    std::error_code ec;
    auto const size = std::filesystem::file_size(path, ec);
    input.file.open(path, std::ios::binary);
    if(!input.file) throw IoError("cannot open " + path.string());
    if(!ec) input.size = size;
    input.stream = &input.file;
    return input;
}

std::vector<unsigned char> slurp(std::istream& in) {
    std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if(in.bad()) throw IoError("read error");
    return bytes;
}

/// Alphabet size implied by the configuration for a fully loaded input.
std::uint64_t inferred_sigma(RunConfig const& cfg, std::span<unsigned char const> bytes) {
    if(cfg.dna) return 4;
    std::array<bool, 256> seen{};
    for(auto b : bytes) seen[b] = true;
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::count(seen.begin(), seen.end(), true)));
}

std::uint64_t declared_sigma(RunConfig const& cfg) {
    if(cfg.sigma) {
        if(cfg.dna && *cfg.sigma < 4) throw UsageError("--dna needs an alphabet of at least 4");
        return *cfg.sigma;
    }
    if(cfg.dna) return 4;
    throw UsageError("declare the alphabet size with --sigma or pass --infer");
}

std::vector<CharCode> map_all(RunConfig const& cfg, std::uint64_t sigma, std::span<unsigned char const> bytes) {
    ByteMapper mapper(sigma, cfg.dna);
    std::vector<CharCode> text(bytes.size());
    std::transform(bytes.begin(), bytes.end(), text.begin(), [&](unsigned char b) { return mapper.map(b); });
    return text;
}

/// \brief Checks \p factors without building the reference parse.
///
/// The tiling and every witness are checked in full; maximality is checked by
/// direct search for the first and last factor and a seeded sample of others.
std::optional<std::string> spot_check(std::span<CharCode const> text, std::span<Factor const> factors,
                                      std::uint64_t seed) {
    if(!factors.empty() && factors.front().start != 1) return std::string("factor 1: does not start the text");
    for(std::size_t i = 0; i < factors.size(); ++i) {
        Factor const& f = factors[i];
        std::string const where = "factor " + std::to_string(i + 1) + ": ";
        // A factor is blamed when its end misses the start of its successor.
        std::uint64_t const next = i + 1 < factors.size() ? factors[i + 1].start : text.size() + 1;
        if(f.index != i + 1 || f.length == 0 || f.start + f.length != next) return where + "breaks the tiling";
        if(f.kind == FactorKind::copy) {
            if(!f.witness || *f.witness < 1 || *f.witness >= f.start)
                return where + "copy without an earlier witness";
            if(!std::equal(text.begin() + (f.start - 1), text.begin() + (f.start - 1 + f.length),
                           text.begin() + (*f.witness - 1)))
                return where + "witness does not match";
        } else if(f.length != 1 || f.witness) {
            return where + "malformed literal";
        }
    }
    if(factors.empty() && !text.empty()) return std::string("factor 1: missing");

    std::vector<std::size_t> sample;
    if(!factors.empty()) sample = {0, factors.size() - 1};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, factors.empty() ? 0 : factors.size() - 1);
    for(std::size_t k = 0; k < kSpotSamples && !factors.empty(); ++k) sample.push_back(pick(rng));
    std::sort(sample.begin(), sample.end());
    sample.erase(std::unique(sample.begin(), sample.end()), sample.end());

    for(auto i : sample) {
        Factor const& f = factors[i];
        // The factor is maximal iff W[s..s+l] (one character longer than the
        // copied part) has no occurrence starting before s.
        std::uint64_t const copied = f.kind == FactorKind::copy ? f.length : 0;
        std::uint64_t const s0 = f.start - 1;
        if(s0 + copied >= text.size()) continue;
        auto const pat_first = text.begin() + s0;
        auto const pat_last = pat_first + (copied + 1);
        auto const hay_last = text.begin() + (s0 + copied);
        auto const hit = std::search(text.begin(), hay_last, std::boyer_moore_horspool_searcher(pat_first, pat_last));
        if(hit != hay_last) return "factor " + std::to_string(i + 1) + ": a longer earlier occurrence exists";
    }
    return std::nullopt;
}

std::string describe(Factor const& f) {
    std::ostringstream s;
    s << '(' << f.start << ", " << f.length << ", " << to_string(f.kind) << ')';
    return s.str();
}

/// Corrupts one factor so that verification must point at it.
void inject_fault(std::vector<Factor>& factors, std::ostream& err) {
    if(factors.empty()) return;
    auto copy = std::find_if(factors.begin(), factors.end(), [](Factor const& f) { return f.length > 1; });
    Factor& victim = copy != factors.end() ? *copy : factors.back();
    if(copy != factors.end()) {
        --victim.length;
    } else {
        victim.kind = victim.kind == FactorKind::copy ? FactorKind::literal : FactorKind::copy;
        victim.witness = victim.kind == FactorKind::copy ? std::optional<std::uint64_t>(1) : std::nullopt;
    }
    err << "fault injected into factor " << victim.index << '\n';
}

int cmd_verify(RunConfig const& cfg, std::span<CharCode const> text, std::vector<Factor> factors,
               std::ostream& out, std::ostream& err) {
    if(cfg.inject_fault) inject_fault(factors, err);
    std::optional<std::string> failure;
    if(text.size() <= kFullOracleLimit) {
        auto const reference = oracle::lz_naive(text);
        if(auto const bad = oracle::first_mismatch(text, factors, reference)) {
            std::ostringstream s;
            s << "factor " << *bad << ": ";
            if(*bad <= factors.size()) s << "got " << describe(factors[*bad - 1]);
            else s << "missing";
            if(*bad <= reference.size()) s << ", expected " << describe(reference[*bad - 1]);
            failure = s.str();
        }
    } else {
        failure = spot_check(text, factors, cfg.seed);
    }
    if(failure) {
        out << "FAIL " << *failure << '\n';
        return verify_failed;
    }
    out << "PASS n=" << text.size() << " z=" << factors.size()
        << (text.size() <= kFullOracleLimit ? " mode=full" : " mode=spot-check") << '\n';
    return ok;
}

int cmd_factorize(RunConfig const& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
    Input input = open_input(cfg, in);

    std::optional<std::vector<CharCode>> loaded;
    std::uint64_t n = 0, sigma = 0;
    if(cfg.infer) {
        err << "warning: --infer reads the whole input before factorizing; factors are not produced online\n";
        auto const bytes = slurp(*input.stream);
        sigma = inferred_sigma(cfg, bytes);
        loaded = map_all(cfg, sigma, bytes);
        n = loaded->size();
    } else {
        sigma = declared_sigma(cfg);
        if(cfg.length) n = *cfg.length;
        else if(input.size) n = *input.size;
        else throw UsageError("standard input needs --length or --infer");
    }

    if(cfg.verify) {
        if(n > cfg.oracle_cap)
            throw UsageError("n = " + std::to_string(n) + " exceeds the oracle cap of " +
                             std::to_string(cfg.oracle_cap));
        if(n > kFullOracleLimit && !cfg.spot_check)
            throw UsageError("n = " + std::to_string(n) + " is above the full-oracle limit of " +
                             std::to_string(kFullOracleLimit) + "; pass --spot-check to accept sampled checks");
    }

    if(n == 0) {
        // Nothing to factorize; still reject trailing input.
        if(!loaded && input.stream->peek() != std::char_traits<char>::eof())
            throw InputLengthMismatch("input is longer than the declared length 0");
        if(cfg.verify) {
            out << "PASS n=0 z=0 mode=full\n";
            return ok;
        }
        StreamingWriter writer(out, cfg.format);
        writer.finish(cfg.stats ? std::optional<EngineStats>(EngineStats{}) : std::nullopt);
        return ok;
    }

    Params const params = choose_parameters(n, sigma, cfg.block_size);
    Factorizer engine(params);
    ByteMapper mapper(sigma, cfg.dna);
    std::vector<CharCode> recorded;
    SpanSource memory(loaded ? std::span<CharCode const>(*loaded) : std::span<CharCode const>{});
    StreamSource stream(*input.stream, mapper, cfg.verify ? &recorded : nullptr);
    BlockSource& source = loaded ? static_cast<BlockSource&>(memory) : stream;

    if(cfg.verify) {
        Collector collect;
        engine.run(source, collect);
        return cmd_verify(cfg, loaded ? std::span<CharCode const>(*loaded) : std::span<CharCode const>(recorded),
                          std::move(collect.factors), out, err);
    }
    StreamingWriter writer(out, cfg.format);
    engine.run(source, writer);
    writer.finish(cfg.stats ? std::optional<EngineStats>(engine.stats()) : std::nullopt);
    return ok;
}

int cmd_bench(RunConfig const& cfg, std::istream& in, std::ostream& out) {
    auto const& sizes = cfg.bench_sizes;
    if(!std::is_sorted(sizes.begin(), sizes.end())) throw UsageError("bench sizes must be sorted ascending");
    if(std::find(sizes.begin(), sizes.end(), 0) != sizes.end()) throw UsageError("bench sizes must be positive");

    std::vector<CharCode> corpus;
    std::uint64_t sigma = 4;
    std::optional<std::uint64_t> capacity = cfg.length;
    if(cfg.input || cfg.use_stdin) {
        Input input = open_input(cfg, in);
        auto const bytes = slurp(*input.stream);
        sigma = cfg.infer ? inferred_sigma(cfg, bytes) : declared_sigma(cfg);
        corpus = map_all(cfg, sigma, bytes);
        capacity = std::min<std::uint64_t>(capacity.value_or(corpus.size()), corpus.size());
    } else if(cfg.sigma) {
        sigma = *cfg.sigma;
    }
    if(!sizes.empty() && capacity && sizes.back() > *capacity)
        throw UsageError("bench size " + std::to_string(sizes.back()) + " exceeds the available length " +
                         std::to_string(*capacity));
    if(corpus.empty() && !sizes.empty()) {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<CharCode> draw(0, static_cast<CharCode>(sigma - 1));
        corpus.resize(sizes.back());
        for(auto& c : corpus) c = draw(rng);
    }

    out << "n,seconds,leaves,trie_nodes,wavelet_bits,ratio\n";
    std::optional<double> previous;
    for(auto n : sizes) {
        Params const params = choose_parameters(n, sigma, cfg.block_size);
        Factorizer engine(params);
        SpanSource source(std::span<CharCode const>(corpus).first(n));
        FactorObserver none;
        auto const t0 = std::chrono::steady_clock::now();
        engine.run(source, none);
        double const seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        auto const s = engine.stats();
        out << n << ',' << std::setprecision(6) << seconds << ',' << s.leaves << ',' << s.trie_nodes << ','
            << s.wavelet_bits << ',';
        if(previous && *previous > 0) out << std::setprecision(4) << seconds / *previous;
        out << '\n';
        out.flush();
        previous = seconds;
    }
    return ok;
}

std::vector<std::uint64_t> parse_sizes(std::string const& list) {
    std::vector<std::uint64_t> sizes;
    std::istringstream s(list);
    std::string item;
    while(std::getline(s, item, ',')) {
        if(item.empty()) continue;
        std::size_t used = 0;
        std::uint64_t value = 0;
        try {
            value = std::stoull(item, &used);
        } catch(std::exception const&) {
            used = 0;
        }
        if(used != item.size() || item.front() == '-') throw UsageError("bad bench size '" + item + "'");
        sizes.push_back(value);
    }
    return sizes;
}

} // namespace

int main(int argc, char const* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string format = "text";
    std::string bench_list;
    std::string input_path;

    CLI::App app{"Online LZ factorization with a sparse suffix tree"};
    auto* input_opt = app.add_option("--input", input_path, "Input file (raw bytes)");
    auto* stdin_opt = app.add_flag("--stdin", cfg.use_stdin, "Read the input from standard input");
    input_opt->excludes(stdin_opt);
    auto* sigma_opt = app.add_option("--sigma", cfg.sigma, "Alphabet size; codes are 0..sigma-1")
                          ->check(CLI::Range(std::uint64_t{1}, kMaxSigma));
    auto* infer_opt = app.add_flag("--infer", cfg.infer, "Pre-scan the input for n and sigma (not online)");
    sigma_opt->excludes(infer_opt);
    app.add_option("--length", cfg.length, "Declared input length n (required for streamed standard input)");
    app.add_option("--block-size", cfg.block_size, "Override the block size r (testing)")
        ->check(CLI::Range(1u, 63u));
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--verify", cfg.verify, "Check the factorization against a reference and print PASS/FAIL");
    app.add_flag("--spot-check", cfg.spot_check, "Allow sampled verification above the full-oracle limit");
    app.add_option("--oracle-cap", cfg.oracle_cap, "Largest n accepted by --verify");
    app.add_flag("--stats", cfg.stats, "Report engine statistics after the factors");
    auto* bench_opt = app.add_option("--bench", bench_list, "Benchmark sizes n1,n2,... (ascending)")
                          ->expected(0, 1);
    app.add_flag("--dna", cfg.dna, "Map ACGTacgt to 0..3");
    app.add_option("--seed", cfg.seed, "Seed for generated bench input and spot-check sampling");
    app.add_flag("--inject-fault", cfg.inject_fault, "Corrupt one factor before verification (negative control)");

    try {
        app.parse(argc, argv);
    } catch(CLI::CallForHelp const&) {
        out << app.help();
        return ok;
    } catch(CLI::ParseError const& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }

    if(!input_path.empty()) cfg.input = input_path;
    cfg.format = format == "json" ? OutputFormat::json : OutputFormat::text;
    cfg.bench = bench_opt->count() > 0;

    try {
        if(cfg.bench) {
            cfg.bench_sizes = parse_sizes(bench_list);
            return cmd_bench(cfg, in, out);
        }
        if(!cfg.input && !cfg.use_stdin) throw UsageError("pass --input PATH or --stdin");
        if(cfg.inject_fault && !cfg.verify) throw UsageError("--inject-fault only applies to --verify");
        return cmd_factorize(cfg, in, out, err);
    } catch(IoError const& e) {
        err << "error: " << e.what() << '\n';
        return io_error;
    } catch(AlphabetError const& e) {
        err << "error: alphabet violation: " << e.what() << '\n';
        return usage_error;
    } catch(UsageError const& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch(InputLengthMismatch const& e) {
        err << "error: " << e.what() << '\n';
        return length_mismatch;
    } catch(std::invalid_argument const& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }
}

} // namespace onlz::cli
