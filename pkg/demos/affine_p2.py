"""Affine quandles of order p^2: S(L, gamma) against the homology oracle.

    python demos/affine_p2.py 3
"""

import sys

from rackcoh.affine import FAMILIES, affine_quandle, family_parameters, family_spec, p2_invariants, s_group
from rackcoh.cohomology import analyze
from rackcoh.homology import quandle_h2


def main(p=3):
    print(f"{'family':<8}{'params':<10}{'ord':>4}  {'S':<8}{'engine':<8}{'oracle':<8}predicted")
    for fam in FAMILIES:
        for params in family_parameters(fam, p):
            spec = family_spec(fam, p, params)
            q = affine_quandle(spec)
            S = s_group(spec)
            eng = analyze(q).factors
            orc = quandle_h2(q, cap=None).torsion
            pred = p2_invariants(p, fam, params).torsion
            print(f"{fam:<8}{str(params):<10}{spec.order():>4}  {str(list(S.factors)):<8}"
                  f"{str(list(eng)):<8}{str(list(orc)):<8}{list(pred)}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 3)
