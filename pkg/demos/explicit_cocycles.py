"""Which closed-form order-p^2 cocycles actually satisfy the cocycle identity.

For each instance the script checks the pairing cocycle and the cocycle the
engine builds from the same character, and prints the first failing triple.
"""

from fractions import Fraction

from rackcoh.affine import (
    affine_cocycle,
    explicit_family_spec,
    explicit_p2_cocycle,
    explicit_parameters,
)
from rackcoh.coefficients import QZ
from rackcoh.cohomology import verify_cocycle


def main():
    for p in (3, 5):
        for fam in ("A1", "A2", "A3"):
            for params in explicit_parameters(fam, p):
                spec = explicit_family_spec(fam, p, params)
                ok, wit = verify_cocycle(explicit_p2_cocycle(fam, p, params, 1))
                eng = affine_cocycle(spec, QZ, QZ.zero, (Fraction(1, p),), form="transversal")
                ok2, _ = verify_cocycle(eng)
                print(f"{fam}' p={p} {params}: closed form {'ok' if ok else f'fails at {wit}'}; engine {'ok' if ok2 else 'fails'}")


if __name__ == "__main__":
    main()
