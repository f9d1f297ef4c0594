#include "hilberg/codes.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <unordered_map>

#include "hilberg/errors.hpp"
#include "hilberg/measures.hpp"
#include "internal_math.hpp"

namespace hilberg {
namespace {

// ceil(log2 j) for j >= 1; the width of a back reference into [0, j-1].
std::uint32_t ceil_log2(std::uint64_t j) {
    return j <= 1 ? 0 : static_cast<std::uint32_t>(std::bit_width(j - 1));
}

// Symbol field width: the alphabet plus one terminator slot.
std::uint32_t symbol_width(std::uint32_t alphabet) {
    return static_cast<std::uint32_t>(std::bit_width(alphabet));
}

void push_bits(std::vector<bool>& out, std::uint64_t value, std::uint32_t width) {
    for (std::uint32_t i = width; i-- > 0;) out.push_back((value >> i) & 1);
}

std::uint64_t read_bits(const std::vector<bool>& bits, std::size_t& pos, std::uint32_t width) {
    if (pos + width > bits.size()) throw parameter_error("lz78_decode: truncated stream");
    std::uint64_t value = 0;
    for (std::uint32_t i = 0; i < width; ++i) value = (value << 1) | (bits[pos++] ? 1 : 0);
    return value;
}

// Trie keyed on (node, symbol). Node 0 is the empty root; phrase j creates
// node j.
struct Lz78Parse {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> phrases; // (ref, symbol)
    bool open_tail = false; // last phrase is the incomplete terminator one
};

Lz78Parse lz78_parse(std::span<const std::uint32_t> symbols, std::uint32_t alphabet) {
    if (symbols.empty()) throw parameter_error("lz78: empty input");
    if (alphabet < 2) throw parameter_error("lz78: alphabet must have at least two symbols");
    Lz78Parse parse;
    std::unordered_map<std::uint64_t, std::uint32_t> children;
    children.reserve(symbols.size());
    std::uint32_t node = 0, next_id = 1;
    for (std::uint32_t sym : symbols) {
        if (sym >= alphabet) throw parameter_error("lz78: symbol outside the alphabet");
        std::uint64_t key = (static_cast<std::uint64_t>(node) << 32) | sym;
        auto it = children.find(key);
        if (it != children.end()) {
            node = it->second;
            continue;
        }
        children.emplace(key, next_id++);
        parse.phrases.emplace_back(node, sym);
        node = 0;
    }
    if (node != 0) {
        // Input ended inside the trie: reference the longest match, flag with
        // the terminator slot (symbol value = alphabet).
        parse.phrases.emplace_back(node, alphabet);
        parse.open_tail = true;
    }
    return parse;
}

} // namespace

std::uint32_t elias_gamma_length(std::uint64_t n) {
    if (n == 0) throw parameter_error("elias_gamma_length: n must be >= 1");
    return 2 * static_cast<std::uint32_t>(std::bit_width(n) - 1) + 1;
}

void elias_gamma_encode(std::uint64_t n, std::vector<bool>& out) {
    if (n == 0) throw parameter_error("elias_gamma_encode: n must be >= 1");
    std::uint32_t width = static_cast<std::uint32_t>(std::bit_width(n));
    for (std::uint32_t i = 1; i < width; ++i) out.push_back(false);
    push_bits(out, n, width);
}

std::uint64_t elias_gamma_decode(const std::vector<bool>& bits, std::size_t& pos) {
    std::uint32_t zeros = 0;
    while (pos < bits.size() && !bits[pos]) {
        ++pos;
        if (++zeros > 63) throw parameter_error("elias_gamma_decode: malformed prefix");
    }
    return read_bits(bits, pos, zeros + 1);
}

CodeLength lz78_length(std::span<const std::uint32_t> symbols, std::uint32_t alphabet) {
    Lz78Parse parse = lz78_parse(symbols, alphabet);
    const std::uint32_t w = symbol_width(alphabet);
    std::uint64_t bits = elias_gamma_length(symbols.size());
    for (std::size_t j = 1; j <= parse.phrases.size(); ++j) bits += ceil_log2(j) + w;
    return {bits, parse.phrases.size()};
}

std::vector<bool> lz78_encode(std::span<const std::uint32_t> symbols, std::uint32_t alphabet) {
    Lz78Parse parse = lz78_parse(symbols, alphabet);
    const std::uint32_t w = symbol_width(alphabet);
    std::vector<bool> out;
    elias_gamma_encode(symbols.size(), out);
    for (std::size_t j = 1; j <= parse.phrases.size(); ++j) {
        push_bits(out, parse.phrases[j - 1].first, ceil_log2(j));
        push_bits(out, parse.phrases[j - 1].second, w);
    }
    return out;
}

std::vector<std::uint32_t> lz78_decode(const std::vector<bool>& bits, std::uint32_t alphabet) {
    if (alphabet < 2) throw parameter_error("lz78_decode: alphabet must have at least two symbols");
    const std::uint32_t w = symbol_width(alphabet);
    std::size_t pos = 0;
    const std::uint64_t n = elias_gamma_decode(bits, pos);

    std::vector<std::pair<std::uint32_t, std::uint32_t>> dict; // (parent, symbol)
    std::vector<std::uint32_t> out;
    out.reserve(n);
    auto append_phrase = [&](std::uint32_t node) {
        std::vector<std::uint32_t> rev;
        while (node != 0) {
            rev.push_back(dict[node - 1].second);
            node = dict[node - 1].first;
        }
        out.insert(out.end(), rev.rbegin(), rev.rend());
    };

    for (std::uint64_t j = 1; out.size() < n; ++j) {
        std::uint32_t ref = static_cast<std::uint32_t>(read_bits(bits, pos, ceil_log2(j)));
        std::uint32_t sym = static_cast<std::uint32_t>(read_bits(bits, pos, w));
        if (ref >= j) throw parameter_error("lz78_decode: reference out of range");
        if (sym > alphabet) throw parameter_error("lz78_decode: symbol outside the alphabet");
        if (sym == alphabet) { // terminator: the reference is the final tail
            if (ref == 0) throw parameter_error("lz78_decode: empty terminator phrase");
            append_phrase(ref);
            if (out.size() != n) throw parameter_error("lz78_decode: tail length mismatch");
            return out;
        }
        append_phrase(ref);
        out.push_back(sym);
        dict.emplace_back(ref, sym);
    }
    if (out.size() != n) throw parameter_error("lz78_decode: length mismatch");
    return out;
}

CodeLength shannon_fano_length(const ProcessSpec& spec, std::span<const Symbol> symbols) {
    if (symbols.empty()) throw parameter_error("shannon_fano_length: empty input");
    double log2q;
    if (spec.is_santa_fe_kind()) {
        log2q = log2_prob_santa_fe(spec, symbols);
    } else {
        std::vector<std::uint8_t> bits;
        bits.reserve(symbols.size());
        for (const Symbol& sym : symbols) bits.push_back(sym.bit);
        log2q = log2_prob_mixture_bernoulli(bits);
    }
    if (is_impossible_log2(log2q))
        throw impossible_event_error("shannon_fano_length: impossible sequence");
    // The nudge keeps exact powers of two from rounding one bit up.
    std::uint64_t payload = static_cast<std::uint64_t>(std::ceil(-log2q - 1e-12));
    return {payload + elias_gamma_length(symbols.size()), 0};
}

double kraft_sum_lz78(std::uint32_t n, std::uint32_t alphabet) {
    if (n == 0) throw parameter_error("kraft_sum_lz78: n must be >= 1");
    if (alphabet < 2) throw parameter_error("kraft_sum_lz78: alphabet must have >= 2 symbols");
    double count = std::pow(static_cast<double>(alphabet), static_cast<double>(n));
    if (count > 2e6) throw resource_error("kraft_sum_lz78: enumeration above 2e6 strings");

    std::vector<std::uint32_t> str(n, 0);
    detail::Kahan sum;
    while (true) {
        sum.add(std::exp2(-static_cast<double>(lz78_length(str, alphabet).bits)));
        std::size_t i = 0;
        while (i < n && ++str[i] == alphabet) str[i++] = 0;
        if (i == n) break;
    }
    return sum.sum;
}

double kraft_sum_shannon_fano_mixture(std::uint32_t n) {
    if (n == 0) throw parameter_error("kraft_sum_shannon_fano_mixture: n must be >= 1");
    if (n > 21) throw resource_error("kraft_sum_shannon_fano_mixture: enumeration above 2e6 strings");

    ProcessSpec spec = ProcessSpec::mixture_bernoulli();
    std::vector<Symbol> str(n);
    detail::Kahan sum;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        for (std::uint32_t i = 0; i < n; ++i) str[i].bit = (mask >> i) & 1;
        sum.add(std::exp2(-static_cast<double>(shannon_fano_length(spec, str).bits)));
    }
    return sum.sum;
}

std::uint32_t lz78_alphabet(const ProcessSpec& spec) {
    return spec.is_santa_fe_kind() ? 256 : 2;
}

std::vector<std::uint32_t> lz78_symbolize(const ProcessSpec& spec, std::span<const Symbol> symbols) {
    std::vector<std::uint32_t> out;
    if (!spec.is_santa_fe_kind()) {
        out.reserve(symbols.size());
        for (const Symbol& sym : symbols) out.push_back(sym.bit);
        return out;
    }
    // Flatten (index, bit) pairs to LEB128 bytes so the alphabet stays fixed.
    out.reserve(symbols.size() * 2);
    for (const Symbol& sym : symbols) {
        if (sym.index > (std::uint64_t{1} << 62))
            throw parameter_error("lz78_symbolize: index too large to flatten");
        std::uint64_t v = (sym.index << 1) | sym.bit;
        while (v >= 0x80) {
            out.push_back(static_cast<std::uint32_t>(v & 0x7F) | 0x80);
            v >>= 7;
        }
        out.push_back(static_cast<std::uint32_t>(v));
    }
    return out;
}

PmiSample code_pmi(Codec codec, const Window& w, const ProcessSpec& spec) {
    if (w.left.empty() || w.left.size() != w.right.size())
        throw parameter_error("code_pmi: window halves must be nonempty and equal length");
    PmiSample out;
    out.n = w.half_len();
    out.source = PmiSource::Code;
    out.codec = codec_name(codec);

    std::uint64_t bl, br, bj;
    if (codec == Codec::Lz78) {
        std::uint32_t alphabet = lz78_alphabet(spec);
        std::vector<std::uint32_t> left = lz78_symbolize(spec, w.left);
        std::vector<std::uint32_t> right = lz78_symbolize(spec, w.right);
        std::vector<std::uint32_t> joined(left);
        joined.insert(joined.end(), right.begin(), right.end());
        bl = lz78_length(left, alphabet).bits;
        br = lz78_length(right, alphabet).bits;
        bj = lz78_length(joined, alphabet).bits;
    } else {
        std::vector<Symbol> joined(w.left);
        joined.insert(joined.end(), w.right.begin(), w.right.end());
        bl = shannon_fano_length(spec, w.left).bits;
        br = shannon_fano_length(spec, w.right).bits;
        bj = shannon_fano_length(spec, joined).bits;
    }
    out.value = static_cast<double>(bl) + static_cast<double>(br) - static_cast<double>(bj);
    return out;
}

const char* codec_name(Codec c) {
    return c == Codec::Lz78 ? "lz78" : "shannon-fano";
}

Codec codec_from_name(const std::string& name) {
    if (name == "lz78") return Codec::Lz78;
    if (name == "shannon-fano") return Codec::ShannonFano;
    throw parameter_error("unknown codec '" + name + "' (expected lz78 or shannon-fano)");
}

} // namespace hilberg
