#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace proxima {

// Base-128 varint; signed values go through the zigzag mapping first.

inline void put_uvarint(std::vector<uint8_t>& out, uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<uint8_t>(v) | 0x80);
        v >>= 7;
    }
    out.push_back(static_cast<uint8_t>(v));
}

inline uint64_t zigzag_encode(int64_t v) {
    return (static_cast<uint64_t>(v) << 1) ^ static_cast<uint64_t>(v >> 63);
}

inline int64_t zigzag_decode(uint64_t v) {
    return static_cast<int64_t>(v >> 1) ^ -static_cast<int64_t>(v & 1);
}

inline void put_svarint(std::vector<uint8_t>& out, int64_t v) {
    put_uvarint(out, zigzag_encode(v));
}

class ByteReader {
public:
    explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}

    uint64_t uvarint() {
        uint64_t v = 0;
        int shift = 0;
        while (true) {
            if (pos_ >= data_.size()) throw std::out_of_range("varint: truncated input");
            if (shift > 63) throw std::out_of_range("varint: value overflows 64 bits");
            uint8_t b = data_[pos_++];
            v |= static_cast<uint64_t>(b & 0x7f) << shift;
            if (!(b & 0x80)) return v;
            shift += 7;
        }
    }

    int64_t svarint() { return zigzag_decode(uvarint()); }

    bool at_end() const { return pos_ == data_.size(); }
    size_t position() const { return pos_; }

private:
    std::span<const uint8_t> data_;
    size_t pos_ = 0;
};

}  // namespace proxima
