#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gma::kernel {

/// Binomial coefficient C(n, k) as an exact integer; zero outside 0 <= k <= n.
std::uint64_t binomial(int n, int k);

/// Elementary symmetric polynomial S_k(lambda): coefficient of t^k in prod(1 + t lambda_i).
/// Throws DomainError unless 0 <= k <= lambda.size().
double elem_sym(std::span<const double> lambda, int k);

/// All of S_0..S_n in one pass.
std::vector<double> elem_sym_all(std::span<const double> lambda);

/// S_{k;i} (lambda_i removed) or S_{k;i,j} (both removed).
///
/// Follows the convention S_{k;i,i} = 0. The arity after removal bounds k.
double elem_sym_deleted(std::span<const double> lambda, int k, std::size_t i,
                        std::optional<std::size_t> j = std::nullopt);

/// m_k = (S_k / C(n,k))^(1/k) for k = 1..n. Non-increasing for positive input.
std::vector<double> maclaurin_chain(std::span<const double> lambda);

/// Componentwise reciprocal.
std::vector<double> reciprocal(std::span<const double> lambda);

}  // namespace gma::kernel
