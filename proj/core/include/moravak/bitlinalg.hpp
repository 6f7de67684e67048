#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace moravak {

/// Dense vector over F2 packed into 64-bit words.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    static BitVector unit(std::size_t size, std::size_t i)
    {
        BitVector v(size);
        v.set(i);
        return v;
    }

    std::size_t size() const noexcept { return size_; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool value = true)
    {
        if (value)
            words_[i >> 6] |= std::uint64_t{1} << (i & 63);
        else
            words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

    bool any() const noexcept;
    bool none() const noexcept { return !any(); }
    std::size_t count() const noexcept;
    /// Index of the lowest/highest set bit; size() when zero.
    std::size_t lowest() const noexcept;
    std::size_t highest() const noexcept;
    /// Parity of the bitwise AND with other.
    bool dot(const BitVector& other) const;

    /// Concatenation this ++ tail.
    BitVector concat(const BitVector& tail) const;
    BitVector slice(std::size_t begin, std::size_t end) const;

    std::vector<std::size_t> support() const;

    friend bool operator==(const BitVector& a, const BitVector& b) = default;
    friend bool operator<(const BitVector& a, const BitVector& b);

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

enum class PivotRule { lowest, highest };

/// Incrementally built fully reduced echelon basis of a subspace of F2^n.
///
/// Every stored row has a distinct pivot and no other stored row has a bit
/// at that pivot, so reduce() yields a canonical representative of the coset
/// v + span.
class Echelon {
public:
    Echelon() = default;
    explicit Echelon(std::size_t dim, PivotRule rule = PivotRule::lowest)
        : dim_(dim), rule_(rule) {}

    std::size_t dim() const noexcept { return dim_; }
    std::size_t rank() const noexcept { return rows_.size(); }
    const std::vector<BitVector>& rows() const noexcept { return rows_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    bool is_pivot(std::size_t i) const;

    /// Reduces v in place modulo the span.
    void reduce(BitVector& v) const;
    bool contains(BitVector v) const;
    /// Inserts v; returns false when v was already in the span.
    bool insert(BitVector v);

private:
    std::size_t pivot_of(const BitVector& v) const;

    std::size_t dim_ = 0;
    PivotRule rule_ = PivotRule::lowest;
    std::vector<BitVector> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<int> pivot_row_;
};

/// Linear map F2^domain -> F2^codomain stored by the images of basis vectors.
class LinearMap {
public:
    LinearMap() = default;
    LinearMap(std::size_t domain, std::size_t codomain)
        : domain_(domain), codomain_(codomain), columns_(domain, BitVector(codomain)) {}

    static LinearMap identity(std::size_t n);
    static LinearMap zero(std::size_t domain, std::size_t codomain) { return {domain, codomain}; }

    std::size_t domain() const noexcept { return domain_; }
    std::size_t codomain() const noexcept { return codomain_; }

    const BitVector& column(std::size_t j) const { return columns_[j]; }
    BitVector& column(std::size_t j) { return columns_[j]; }
    bool entry(std::size_t i, std::size_t j) const { return columns_[j].test(i); }
    void set(std::size_t i, std::size_t j, bool value = true) { columns_[j].set(i, value); }

    BitVector apply(const BitVector& v) const;
    /// this ∘ inner
    LinearMap compose(const LinearMap& inner) const;
    LinearMap operator+(const LinearMap& other) const;
    bool is_zero() const;

    std::size_t rank() const;
    Echelon image(PivotRule rule = PivotRule::lowest) const;
    /// Basis of the kernel, fully reduced (lowest pivots).
    std::vector<BitVector> kernel() const;

    friend bool operator==(const LinearMap& a, const LinearMap& b) = default;

private:
    std::size_t domain_ = 0;
    std::size_t codomain_ = 0;
    std::vector<BitVector> columns_;
};

/// Horizontal concatenation [a | b | ...] of maps with a common codomain.
LinearMap hstack(std::span<const LinearMap> maps);

/// Homology of A --incoming--> B --outgoing--> C at B.
struct Homology {
    std::size_t kernel_dim = 0;
    std::size_t image_dim = 0;
    /// Deterministic representatives of a basis of ker/im, each reduced modulo im.
    std::vector<BitVector> representatives;

    std::size_t dim() const noexcept { return representatives.size(); }
};

Homology homology(const LinearMap& incoming, const LinearMap& outgoing);

}  // namespace moravak
