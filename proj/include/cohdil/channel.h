#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>

#include "cohdil/hermitian.h"

namespace cohdil {

/// Choi operator of a linear map E: B(C^{d_in}) -> B(C^{d_out}) in the block convention
///
///     J(E) = sum_ij |i><j|_in (x) E(|i><j|)_out,
///
/// so row/column index (i * d_out + k) addresses input basis index i and output index k.
class ChoiOperator {
public:
    ChoiOperator(std::size_t dim_in, std::size_t dim_out, HermitianMatrix matrix);

    std::size_t dim_in() const { return dim_in_; }
    std::size_t dim_out() const { return dim_out_; }
    const HermitianMatrix& matrix() const { return matrix_; }

    /// E(|i><j|), the (i, j) block.
    Matrix block(std::size_t i, std::size_t j) const;

private:
    std::size_t dim_in_;
    std::size_t dim_out_;
    HermitianMatrix matrix_;
};

struct ChannelVerdict {
    bool is_cp = false;
    bool is_tp = false;
    bool is_unital = false;
    bool is_mio = false;
    bool is_dio = false;
    /// Largest violation among the CP, TP, MIO and DIO conditions.
    double worst_violation = 0.0;
};

/// Assembles J from E(|i><j|) for all 0 <= i, j < dim_in. The map must be Hermiticity
/// preserving: map(j, i) = map(i, j)^dag.
ChoiOperator choi_of(std::size_t dim_in, std::size_t dim_out,
                     const std::function<Matrix(std::size_t, std::size_t)>& map_on_basis);

/// E(X) = tr_in[J (X^T (x) I_out)].
HermitianMatrix apply(const ChoiOperator& j, const HermitianMatrix& x);
Matrix apply(const ChoiOperator& j, const Matrix& x);

/// Choi operator of the adjoint map, <X, E(Y)> = <E^dag(X), Y>.
/// Entry-wise J(E^dag)[(k,i),(l,j)] = conj(J(E)[(i,k),(j,l)]).
ChoiOperator adjoint(const ChoiOperator& j);

/// Membership predicates. CP from the spectrum of J, TP/unital from the partial traces,
/// MIO from the images of |i><i|, DIO additionally from the dephased images of |i><j|.
ChannelVerdict verdict(const ChoiOperator& j, double tol = 1e-7);

/// Permutation twirl evaluated through its two-dimensional image:
/// T(X) = <Psi_m, X> Psi_m + <I - Psi_m, X> (I - Psi_m)/(m - 1). Identity for m = 1.
Matrix twirl(const Matrix& x);
HermitianMatrix twirl(const HermitianMatrix& x);

/// p tr(X) I/m + (1 - p) X. Throws std::invalid_argument unless 0 <= p <= 1.
Matrix depolarize(const Matrix& x, double p);
HermitianMatrix depolarize(const HermitianMatrix& x, double p);

/// Builds the m -> d channel L' = L o T from a solution (C, D) of the dilution constraints.
///
/// The adjoint T o L^dag has Choi operator C^T (x) Psi_m + D^T (x) (I_m - Psi_m)/(m - 1)
/// (output-space factor first); the forward channel is recovered with adjoint(). For m = 1
/// the second term is absent and D must vanish. Throws std::invalid_argument naming the
/// first violated constraint (C >= 0, D >= 0, tr C = 1, tr D = m - 1) beyond `tol`.
ChoiOperator reconstruct_dilution_channel(const HermitianMatrix& c, const HermitianMatrix& d, std::size_t m,
                                          std::size_t out_dim, double tol = 1e-7);

/// Plain-text Choi format: header "choi d_in d_out", then one line per row with
/// whitespace-separated "re im" pairs.
void write_choi(std::ostream& out, const ChoiOperator& j);
ChoiOperator read_choi(std::istream& in);

}  // namespace cohdil
