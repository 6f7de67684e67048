#pragma once

#include "moravak/bitlinalg.hpp"
#include "moravak/twistgroup.hpp"

#include <string>
#include <vector>

namespace moravak {

/// Degree of v_n: 2^{n+1} - 2.
int vn_degree(int n);

/// Free graded K(n)_*-module of finite rank, recorded by generator degrees mod |v_n|.
struct GradedKnModule {
    int n = 1;
    std::vector<int> degrees;  // sorted residues in [0, |v_n|)

    std::size_t rank() const noexcept { return degrees.size(); }
    bool is_zero() const noexcept { return degrees.empty(); }
    std::size_t rank_in(int residue) const;
    std::string format() const;

    friend bool operator==(const GradedKnModule&, const GradedKnModule&) = default;
};

/// Free K(n)_*-module with an action of b_k, i.e. a module over
/// R(b_k) = K(n)_*[b_k]/(b_k^2 - v_n^{2^k} b_k).
///
/// B = v_n^{2^k} beta where beta is an F2 matrix in v-normalised coordinates;
/// the defining relation becomes beta^2 = beta. Entry (i, j) of B is the
/// coefficient of generator i in b_k applied to generator j.
class RbkModule {
public:
    /// Entries are "0", "1", "v", "v^e" (or "v<n>^e"); exponents must match the degrees.
    static RbkModule from_entries(int n, int k, std::vector<int> degrees,
                                  const std::vector<std::vector<std::string>>& entries);
    static RbkModule normalized(int n, int k, std::vector<int> degrees, LinearMap beta);

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    std::size_t rank() const noexcept { return degrees_.size(); }
    const std::vector<int>& degrees() const noexcept { return degrees_; }
    const LinearMap& beta() const noexcept { return beta_; }
    /// Entry (i, j) of B written as "0" or "v^e".
    std::string entry(std::size_t i, std::size_t j) const;

    friend bool operator==(const RbkModule&, const RbkModule&) = default;

private:
    RbkModule(int n, int k, std::vector<int> degrees, LinearMap beta);

    int n_;
    int k_;
    std::vector<int> degrees_;
    LinearMap beta_;
};

enum class StandardModule { M, N, R };

const char* to_string(StandardModule which);

/// M_k = R(b_k)/(b_k), N_k = R(b_k)/(b_k - v^{2^k}), R_k = R(b_k) on the basis (1, b_k).
RbkModule standard_module(StandardModule which, int n, int k);

/// Tor_i^{R(b_k)}(P, M_k or N_k) from the 2-periodic free resolution.
GradedKnModule tor(const RbkModule& p, StandardModule which, int i);

/// Free K(n)_*-module with commuting actions of b_0 .. b_{K-1}; b_k for k >= K acts as 0.
class TensorModule {
public:
    static constexpr int default_factors = 6;

    /// Throws invalid-module for a non-idempotent factor, invalid-tensor-module for non-commuting ones.
    static TensorModule create(int n, std::vector<int> degrees, std::vector<LinearMap> betas);
    static TensorModule from_entries(int n, std::vector<int> degrees,
                                     const std::vector<std::vector<std::vector<std::string>>>& entries);
    /// One factor placed at position k; every other b_j acts as 0.
    static TensorModule from_factor(const RbkModule& m, int factors = default_factors);

    int n() const noexcept { return n_; }
    int factors() const noexcept { return static_cast<int>(betas_.size()); }
    std::size_t rank() const noexcept { return degrees_.size(); }
    const std::vector<int>& degrees() const noexcept { return degrees_; }
    const std::vector<LinearMap>& betas() const noexcept { return betas_; }
    RbkModule factor(int k) const;

    friend bool operator==(const TensorModule&, const TensorModule&) = default;

private:
    TensorModule() = default;

    int n_ = 1;
    std::vector<int> degrees_;
    std::vector<LinearMap> betas_;
};

/// Tor over the truncated tensor product of the R(b_k) with coefficients in K(n)_*
/// made a module through hom, for homological degrees 0 .. max_degree.
/// Computed from the tensor product of the periodic resolutions (a total complex).
std::vector<GradedKnModule> bar_e2(const TensorModule& p, const AlgebraHom& hom, int max_degree = 4);

/// P / (b_0 - v_n, b_1, b_2, ...).
GradedKnModule khorami_quotient(const TensorModule& p);

}  // namespace moravak
