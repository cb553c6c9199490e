"""Walk through H^2 of the transpositions of S_4.

Builds the quandle, prints the group data, reconstructs the non-constant
cocycle from its datum and checks that it is the sign cocycle.
"""

from rackcoh import catalog
from rackcoh.coefficients import Cyclic
from rackcoh.cohomology import (
    CocycleDatum,
    analyze,
    are_cohomologous,
    decompose_cocycle,
    h2_description,
    reconstruct_cocycle,
    transversal_violations,
)
from rackcoh.homology import quandle_h2, rack_h2


def main():
    q = catalog.transpositions(4).quandle
    S = analyze(q)
    print(f"|X| = {q.n}, |F_X| = {S.group.order}, |N_X| = {len(S.nx)}, |N_0| = {len(S.n0)}")
    print("(N_0)_ab factors:", list(S.factors))
    print("good transversal:", S.transversal.good)
    for v in transversal_violations(S):
        print("  ", v)

    A = Cyclic(2)
    summary = h2_description(q, A, structure=S)
    print(f"H^2(X, Z2) = {summary.h2_type}, order {summary.h2_order}")

    chi = catalog.chi_cocycle(4)
    d = decompose_cocycle(S, chi)
    print("sign cocycle datum:", d)
    rebuilt = reconstruct_cocycle(S, A, CocycleDatum(1, (1,)))
    print("rebuilt is cohomologous to chi:", are_cohomologous(rebuilt, chi) is not None)

    print("oracle: H_2 =", rack_h2(q), " H_2^Q =", quandle_h2(q))


if __name__ == "__main__":
    main()
