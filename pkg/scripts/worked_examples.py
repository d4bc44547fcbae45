"""Run the two 2x2 degree-2 worked examples and print every intermediate object."""

import numpy as np

from psdfactor.factorizer import factor_normalized, factorize
from psdfactor.matpoly import MatPoly

EXAMPLES = {
    "real eigenvalues": [np.eye(2), [[2, -3], [-3, 4]], [[2, -4], [-4, 8]]],
    "complex eigenvalues": [np.eye(2), [[2, 2], [2, 4]], [[2, 1], [1, 13]]],
}


def show(name, a):
    print(f"{name} =")
    print(np.array2string(np.asarray(a), precision=6, suppress_small=True))


def main():
    np.set_printoptions(linewidth=120)
    for title, Q in EXAMPLES.items():
        q = MatPoly.from_list(Q, symmetric=True)
        core = factor_normalized(q)
        print(f"--- {title} ---")
        show("M_r", core.pencil.Mr)
        print("eigenvalues of M_r:", np.round(np.linalg.eigvals(core.pencil.Mr), 6))
        for b in core.jordan.blocks:
            print("block:", b.kind, "size", b.size, "eigenvalue", np.round(b.eigenvalue, 6))
        show("X", core.X)
        show("F_X", core.FX)
        show("H_0", core.H.coeffs[0])
        show("H_1", core.H.coeffs[1])
        rep = factorize(q)
        print(f"factorize: x0 = {rep.x0}, residual = {rep.residual:.2e}, ok = {rep.ok}\n")


if __name__ == "__main__":
    main()
