#include "moravak/bitlinalg.hpp"

#include <bit>
#include <cassert>

namespace moravak {

BitVector& BitVector::operator^=(const BitVector& other)
{
    assert(size_ == other.size_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] ^= other.words_[i];
    return *this;
}

bool BitVector::any() const noexcept
{
    for (auto w : words_)
        if (w)
            return true;
    return false;
}

std::size_t BitVector::count() const noexcept
{
    std::size_t c = 0;
    for (auto w : words_)
        c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::size_t BitVector::lowest() const noexcept
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i])
            return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
    return size_;
}

std::size_t BitVector::highest() const noexcept
{
    for (std::size_t i = words_.size(); i-- > 0;)
        if (words_[i])
            return i * 64 + 63 - static_cast<std::size_t>(std::countl_zero(words_[i]));
    return size_;
}

bool BitVector::dot(const BitVector& other) const
{
    assert(size_ == other.size_);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
        acc ^= words_[i] & other.words_[i];
    return std::popcount(acc) & 1;
}

BitVector BitVector::concat(const BitVector& tail) const
{
    BitVector r(size_ + tail.size_);
    for (std::size_t i : support())
        r.set(i);
    for (std::size_t i : tail.support())
        r.set(size_ + i);
    return r;
}

BitVector BitVector::slice(std::size_t begin, std::size_t end) const
{
    BitVector r(end - begin);
    for (std::size_t i = begin; i < end; ++i)
        if (test(i))
            r.set(i - begin);
    return r;
}

std::vector<std::size_t> BitVector::support() const
{
    std::vector<std::size_t> s;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t bits = words_[w];
        while (bits) {
            s.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return s;
}

bool operator<(const BitVector& a, const BitVector& b)
{
    if (a.size_ != b.size_)
        return a.size_ < b.size_;
    return a.support() < b.support();
}

bool Echelon::is_pivot(std::size_t i) const
{
    return i < pivot_row_.size() && pivot_row_[i] >= 0;
}

std::size_t Echelon::pivot_of(const BitVector& v) const
{
    return rule_ == PivotRule::lowest ? v.lowest() : v.highest();
}

void Echelon::reduce(BitVector& v) const
{
    for (std::size_t r = 0; r < rows_.size(); ++r)
        if (v.test(pivots_[r]))
            v ^= rows_[r];
}

bool Echelon::contains(BitVector v) const
{
    reduce(v);
    return v.none();
}

bool Echelon::insert(BitVector v)
{
    assert(v.size() == dim_);
    reduce(v);
    if (v.none())
        return false;
    std::size_t p = pivot_of(v);
    // keep the basis fully reduced
    for (auto& row : rows_)
        if (row.test(p))
            row ^= v;
    if (pivot_row_.size() < dim_)
        pivot_row_.assign(dim_, -1);
    pivot_row_[p] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
}

LinearMap LinearMap::identity(std::size_t n)
{
    LinearMap m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i);
    return m;
}

BitVector LinearMap::apply(const BitVector& v) const
{
    assert(v.size() == domain_);
    BitVector r(codomain_);
    for (std::size_t j : v.support())
        r ^= columns_[j];
    return r;
}

LinearMap LinearMap::compose(const LinearMap& inner) const
{
    assert(inner.codomain_ == domain_);
    LinearMap r(inner.domain_, codomain_);
    for (std::size_t j = 0; j < inner.domain_; ++j)
        r.columns_[j] = apply(inner.columns_[j]);
    return r;
}

LinearMap LinearMap::operator+(const LinearMap& other) const
{
    assert(domain_ == other.domain_ && codomain_ == other.codomain_);
    LinearMap r = *this;
    for (std::size_t j = 0; j < domain_; ++j)
        r.columns_[j] ^= other.columns_[j];
    return r;
}

bool LinearMap::is_zero() const
{
    for (const auto& c : columns_)
        if (c.any())
            return false;
    return true;
}

std::size_t LinearMap::rank() const
{
    return image().rank();
}

Echelon LinearMap::image(PivotRule rule) const
{
    Echelon e(codomain_, rule);
    for (const auto& c : columns_)
        e.insert(c);
    return e;
}

std::vector<BitVector> LinearMap::kernel() const
{
    // Row-reduce [image | identity]; rows whose image part vanishes span the kernel.
    std::vector<BitVector> work;
    std::vector<std::size_t> pivots;
    std::vector<BitVector> kernel_rows;
    for (std::size_t j = 0; j < domain_; ++j) {
        BitVector img = columns_[j];
        BitVector tag = BitVector::unit(domain_, j);
        for (std::size_t r = 0; r < work.size(); ++r) {
            if (img.test(pivots[r])) {
                img ^= work[r].slice(0, codomain_);
                tag ^= work[r].slice(codomain_, codomain_ + domain_);
            }
        }
        if (img.any()) {
            pivots.push_back(img.lowest());
            work.push_back(img.concat(tag));
        }
        else {
            kernel_rows.push_back(std::move(tag));
        }
    }
    Echelon k(domain_, PivotRule::lowest);
    for (auto& v : kernel_rows)
        k.insert(std::move(v));
    return k.rows();
}

LinearMap hstack(std::span<const LinearMap> maps)
{
    std::size_t codomain = maps.empty() ? 0 : maps.front().codomain();
    std::size_t domain = 0;
    for (const auto& m : maps) {
        assert(m.codomain() == codomain);
        domain += m.domain();
    }
    LinearMap r(domain, codomain);
    std::size_t col = 0;
    for (const auto& m : maps)
        for (std::size_t j = 0; j < m.domain(); ++j)
            r.column(col++) = m.column(j);
    return r;
}

Homology homology(const LinearMap& incoming, const LinearMap& outgoing)
{
    assert(incoming.codomain() == outgoing.domain());
    Homology h;
    Echelon image = incoming.image(PivotRule::lowest);
    auto kernel = outgoing.kernel();
    h.kernel_dim = kernel.size();
    h.image_dim = image.rank();
    // Vectors reduced modulo the image vanish at every image pivot, and a nonzero
    // image vector never does, so these rows are independent modulo the image.
    Echelon reps(incoming.codomain(), PivotRule::lowest);
    for (auto v : kernel) {
        image.reduce(v);
        reps.insert(std::move(v));
    }
    h.representatives = reps.rows();
    return h;
}

}  // namespace moravak
