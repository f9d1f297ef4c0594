#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hilberg/pmi.hpp"
#include "hilberg/process.hpp"

namespace hilberg {

enum class Codec { Lz78, ShannonFano };

struct CodeLength {
    std::uint64_t bits = 0;
    std::uint64_t phrase_count = 0; // LZ78 only; 0 for Shannon-Fano
};

// Length of the Elias gamma code for n >= 1: 2*floor(log2 n) + 1.
std::uint32_t elias_gamma_length(std::uint64_t n);
void elias_gamma_encode(std::uint64_t n, std::vector<bool>& out);
std::uint64_t elias_gamma_decode(const std::vector<bool>& bits, std::size_t& pos);

// LZ78 over an alphabet of `alphabet` symbols (values 0..alphabet-1), greedy
// incremental parse. Phrase j spends ceil(log2 j) bits on a back reference in
// [0, j-1] plus ceil(log2(alphabet+1)) bits on one symbol from the alphabet
// extended by a terminator slot; a final incomplete phrase references its
// longest dictionary match with the terminator in the symbol field. The
// stream is prefixed with the Elias gamma code of the input length, which
// makes the whole construction one prefix-free code across all lengths.
CodeLength lz78_length(std::span<const std::uint32_t> symbols, std::uint32_t alphabet);
std::vector<bool> lz78_encode(std::span<const std::uint32_t> symbols, std::uint32_t alphabet);
std::vector<std::uint32_t> lz78_decode(const std::vector<bool>& bits, std::uint32_t alphabet);

// Shannon-Fano surrogate for the process measure:
// ceil(-log2 Q(x_1^n)) + elias_gamma_length(n).
CodeLength shannon_fano_length(const ProcessSpec& spec, std::span<const Symbol> symbols);

// Sum of 2^-bits over every length-n string; at most 1 for a prefix-free
// code. Enumeration refused above 2e6 strings.
double kraft_sum_lz78(std::uint32_t n, std::uint32_t alphabet);
double kraft_sum_shannon_fano_mixture(std::uint32_t n);

// Code-based pointwise MI: bits(left) + bits(right) - bits(join). May be
// negative (header and quantization overhead).
PmiSample code_pmi(Codec codec, const Window& w, const ProcessSpec& spec);

// Symbol stream fed to LZ78 for a given process: mixture windows code their
// bits over a binary alphabet; Santa Fe windows are flattened to LEB128 bytes
// of (index << 1 | bit), alphabet 256.
std::vector<std::uint32_t> lz78_symbolize(const ProcessSpec& spec, std::span<const Symbol> symbols);
std::uint32_t lz78_alphabet(const ProcessSpec& spec);

const char* codec_name(Codec c);
Codec codec_from_name(const std::string& name);

} // namespace hilberg
